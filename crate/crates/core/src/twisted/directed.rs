//! Common upper bounds in `Br(ι(θ))` from powers of a twisted Coxeter element.

use super::{TwistedElement, TwistedSystem};
use crate::coxeter::GroupElement;
use crate::error::{Error, Result};

/// A splitting `S = S1 ⊔ S2 ⊔ S3` with `θ(S1) = S2`, `S3` fixed pointwise and
/// each part made of pairwise commuting generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterPartition {
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
    pub s3: Vec<usize>,
}

impl CoxeterPartition {
    pub fn validate(&self, ts: &TwistedSystem) -> Result<()> {
        let n = ts.rank();
        let mut seen = vec![false; n];
        for &s in self.s1.iter().chain(&self.s2).chain(&self.s3) {
            if s >= n || seen[s] {
                return Err(Error::NoPartition);
            }
            seen[s] = true;
        }
        if seen.iter().any(|&x| !x) {
            return Err(Error::NoPartition);
        }
        let mut image: Vec<usize> = self.s1.iter().map(|&s| ts.theta().image(s)).collect();
        let mut s2 = self.s2.clone();
        image.sort_unstable();
        s2.sort_unstable();
        if image != s2 || self.s3.iter().any(|&s| ts.theta().image(s) != s) {
            return Err(Error::NoPartition);
        }
        let m = ts.system().matrix();
        for part in [&self.s1, &self.s2, &self.s3] {
            for (a, &x) in part.iter().enumerate() {
                if part[a + 1..].iter().any(|&y| m.m(x, y) != Some(2)) {
                    return Err(Error::NoPartition);
                }
            }
        }
        Ok(())
    }

    /// `c = w_{S1} w_{S3} w_{S2}` as a word.
    pub fn coxeter_word(&self) -> Vec<usize> {
        self.s1
            .iter()
            .chain(&self.s3)
            .chain(&self.s2)
            .copied()
            .collect()
    }

    pub fn coxeter_element(&self, ts: &TwistedSystem) -> GroupElement {
        ts.system().evaluate(&self.coxeter_word())
    }
}

/// First valid partition: fixed generators form `S3`, and each θ-orbit of size
/// two is split with the smaller index in `S1` before trying the other way.
pub fn find_coxeter_partition(ts: &TwistedSystem) -> Result<CoxeterPartition> {
    let n = ts.rank();
    let fixed: Vec<usize> = (0..n).filter(|&s| ts.theta().image(s) == s).collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .filter_map(|s| {
            let t = ts.theta().image(s);
            (s < t).then_some((s, t))
        })
        .collect();
    if pairs.len() >= 20 {
        return Err(Error::NoPartition);
    }
    for mask in 0u32..1 << pairs.len() {
        let (mut s1, mut s2) = (Vec::new(), Vec::new());
        for (b, &(s, t)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 0 {
                s1.push(s);
                s2.push(t);
            } else {
                s1.push(t);
                s2.push(s);
            }
        }
        let p = CoxeterPartition {
            s1,
            s2,
            s3: fixed.clone(),
        };
        if p.validate(ts).is_ok() {
            return Ok(p);
        }
    }
    Err(Error::NoPartition)
}

/// Smallest `k ≤ k_max` with `c^{2k} ≥ u` and `c^{2k} ≥ v`; returns `k` and
/// `c^{2k}`, which lies in `ι(θ)` since `θ(c^{-1}) = c`.
pub fn coxeter_power_upper_bound(
    ts: &TwistedSystem,
    u: &TwistedElement,
    v: &TwistedElement,
    partition: &CoxeterPartition,
    k_max: usize,
) -> Result<(usize, TwistedElement)> {
    partition.validate(ts)?;
    let sys = ts.system();
    let c = partition.coxeter_element(ts);
    let c2 = sys.multiply(&c, &c)?;
    let mut power = sys.identity();
    for k in 1..=k_max {
        power = sys.multiply(&power, &c2)?;
        let bound = ts.twisted_element(&power)?;
        if ts.bruhat_leq_twisted(u, &bound)? && ts.bruhat_leq_twisted(v, &bound)? {
            return Ok((k, bound));
        }
    }
    Err(Error::KBudget(k_max))
}
