//! Length and rank generating functions, the factorisation
//! `Poin(W) = Poin(ι(θ)) · Poin(Fix(θ))`, and the series of fixed-point-free
//! involutions.

mod polynomial;

pub use polynomial::IntPolynomial;

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;

use crate::coxeter::CoxeterSystem;
use crate::error::{Error, Result};
use crate::presets::resolve_twisted;
use crate::twisted::{TwistedInvolutions, TwistedSystem};

/// A generating function that may be cut off at some degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincareSeries {
    pub polynomial: IntPolynomial,
    /// `Some(n)` when only the coefficients of degree `≤ n` are exact.
    pub valid_up_to: Option<usize>,
}

impl PoincareSeries {
    pub fn is_exact(&self) -> bool {
        self.valid_up_to.is_none()
    }

    /// The polynomial of an untruncated series.
    pub fn exact(self) -> Result<IntPolynomial> {
        match self.valid_up_to {
            None => Ok(self.polynomial),
            Some(_) => Err(Error::InfiniteGroup),
        }
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.polynomial)?;
        if let Some(n) = self.valid_up_to {
            write!(f, " (valid up to degree {n})")?;
        }
        Ok(())
    }
}

/// `Σ_{w ∈ W} t^ℓ(w)` by breadth-first enumeration, cut off at `max_length`
/// when given or when the group is infinite.
pub fn poincare_w(system: &CoxeterSystem, max_length: Option<usize>, budget: usize) -> Result<PoincareSeries> {
    if !system.is_finite() && max_length.is_none() {
        return Err(Error::InfiniteGroup);
    }
    let all = system.enumerate(max_length, budget)?;
    Ok(PoincareSeries {
        polynomial: IntPolynomial::from_counts(&all.length_profile()),
        valid_up_to: (!all.complete).then(|| all.max_length()),
    })
}

/// `∏ [d_i]_t` over the degrees of a recognized finite type.
pub fn poincare_w_closed_form(system: &CoxeterSystem) -> Option<IntPolynomial> {
    system
        .finite_type()
        .map(|ft| IntPolynomial::from_degrees(&ft.degrees()))
}

/// Rank generating function of the twisted identities in an enumeration.
pub fn poincare_iota_of(inv: &TwistedInvolutions) -> PoincareSeries {
    let mut counts = vec![0usize; inv.max_rho() + 1];
    for e in inv.elements().iter().filter(|e| e.is_twisted_identity()) {
        counts[e.rho] += 1;
    }
    PoincareSeries {
        polynomial: IntPolynomial::from_counts(&counts),
        valid_up_to: inv.truncation_rank(),
    }
}

/// `Σ_{w ∈ ι(θ)} t^ρ(w)`; an infinite group needs `max_rank`.
pub fn poincare_iota(ts: &TwistedSystem, max_rank: Option<usize>, budget: usize) -> Result<PoincareSeries> {
    if !ts.system().is_finite() && max_rank.is_none() {
        return Err(Error::InfiniteGroup);
    }
    let inv = TwistedInvolutions::enumerate(ts, max_rank, budget)?;
    Ok(poincare_iota_of(&inv))
}

/// `Σ_{f ∈ Fix(θ)} t^ℓ_θ(f)`, where `ℓ_θ` is the word length in the longest
/// elements of the parabolics `{s, θ(s)}`.
///
/// `Fix(θ)` is filtered out of a full enumeration of `W`; lengths come from a
/// breadth-first search over the fixed generators, which must reach every
/// fixed element.
pub fn poincare_fix(ts: &TwistedSystem, budget: usize) -> Result<IntPolynomial> {
    let sys = ts.system();
    let gens = ts.fixed_subgroup_generators().map_err(|e| match e {
        Error::InfiniteDihedralPair(_) => Error::UnsupportedInfinitePair,
        other => other,
    })?;
    if !sys.is_finite() {
        return Err(Error::InfiniteFix);
    }
    let all = sys.enumerate(None, budget)?;
    let fixed: Vec<bool> = all
        .elements
        .iter()
        .map(|w| ts.apply_theta(w) == *w)
        .collect();
    let total_fixed = fixed.iter().filter(|&&f| f).count();
    let mut dist: Vec<Option<usize>> = vec![None; all.len()];
    let start = all.index_of(&sys.identity()).expect("identity is enumerated");
    dist[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    let mut counts: Vec<usize> = Vec::new();
    while let Some(i) = queue.pop_front() {
        let d = dist[i].expect("queued elements have a distance");
        if counts.len() <= d {
            counts.resize(d + 1, 0);
        }
        counts[d] += 1;
        for g in &gens {
            let next = sys.multiply(&all.elements[i], g)?;
            let j = all.index_of(&next).expect("closed under multiplication");
            if dist[j].is_none() {
                dist[j] = Some(d + 1);
                queue.push_back(j);
            }
        }
    }
    let reached = counts.iter().sum::<usize>();
    let escaped = dist.iter().zip(&fixed).any(|(d, &f)| d.is_some() && !f);
    if reached != total_fixed || escaped {
        return Err(Error::HypothesisFailed(format!(
            "fixed generators reach {reached} of {total_fixed} fixed elements"
        )));
    }
    Ok(IntPolynomial::from_counts(&counts))
}

/// Outcome of comparing `Poin(W)` with `Poin(ι(θ)) · Poin(Fix(θ))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationReport {
    pub poin_w: IntPolynomial,
    pub poin_iota: IntPolynomial,
    pub poin_fix: IntPolynomial,
    pub factors: bool,
    /// Empty when the factorisation holds; otherwise what dividing
    /// `Poin(W)` by `Poin(ι(θ))` leaves.
    pub residual: String,
}

impl FactorizationReport {
    pub fn report(&self) -> String {
        let mut out = format!(
            "Poin(W) = {}\nPoin(iota) = {}\nPoin(Fix) = {}\nfactors: {}\n",
            self.poin_w, self.poin_iota, self.poin_fix, self.factors
        );
        if !self.residual.is_empty() {
            out.push_str(&format!("residual: {}\n", self.residual));
        }
        out
    }
}

/// Exact comparison of `Poin(W)` with `Poin(ι(θ)) · Poin(Fix(θ))` for a
/// finite group.
pub fn factors_through(ts: &TwistedSystem, budget: usize) -> Result<FactorizationReport> {
    if !ts.system().is_finite() {
        return Err(Error::InfiniteGroup);
    }
    let poin_w = poincare_w(ts.system(), None, budget)?.exact()?;
    let poin_iota = poincare_iota(ts, None, budget)?.exact()?;
    let poin_fix = poincare_fix(ts, budget)?;
    let product = &poin_iota * &poin_fix;
    let factors = product == poin_w;
    let residual = if factors {
        String::new()
    } else {
        match poin_w.div_rem(&poin_iota) {
            Ok((q, r)) if r.is_zero() => {
                format!("Poin(W) / Poin(iota) = {q}, which differs from Poin(Fix)")
            }
            Ok((q, r)) => format!("Poin(W) = ({q}) * Poin(iota) + ({r})"),
            Err(_) => "Poin(iota) does not divide Poin(W) over the integers".to_string(),
        }
    };
    Ok(FactorizationReport {
        poin_w,
        poin_iota,
        poin_fix,
        factors,
        residual,
    })
}

/// `m(s, θ(s)) ∈ {1, 2, ∞}` for all `s`, a necessary condition for the
/// factorisation.
pub fn prop51_condition(ts: &TwistedSystem) -> bool {
    ts.prop51_condition()
}

/// `I(n; t) = t^n ∏_{i=0}^{n-1} (1 + t^2 + ... + t^(4i))`.
pub fn fpf_involution_series(n: usize) -> IntPolynomial {
    (0..n).fold(IntPolynomial::monomial(n), |acc, i| {
        &acc * &IntPolynomial::geometric(2 * i + 1, 2)
    })
}

/// Fixed-point-free involutions of `{0, ..., 2n-1}` in one-line notation,
/// pairing the least unpaired point with each later one in turn.
pub fn fpf_involutions(n: usize) -> Vec<Vec<usize>> {
    fn extend(perm: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        let Some(a) = perm.iter().position(|x| x.is_none()) else {
            out.push(perm.iter().map(|x| x.expect("all paired")).collect());
            return;
        };
        for b in a + 1..perm.len() {
            if perm[b].is_none() {
                perm[a] = Some(b);
                perm[b] = Some(a);
                extend(perm, out);
                perm[a] = None;
                perm[b] = None;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut vec![None; 2 * n], &mut out);
    out
}

pub fn inversions(perm: &[usize]) -> usize {
    (0..perm.len())
        .map(|i| (i + 1..perm.len()).filter(|&j| perm[i] > perm[j]).count())
        .sum()
}

/// `Σ t^inv(σ)` over the fixed-point-free involutions of `S_{2n}`, by
/// enumeration.
pub fn fpf_involution_series_enumerated(n: usize) -> IntPolynomial {
    let mut counts = vec![0usize; n * (2 * n - 1) + 1];
    for sigma in fpf_involutions(n) {
        counts[inversions(&sigma)] += 1;
    }
    IntPolynomial::from_counts(&counts)
}

/// `Σ t^wt(σ)` with `wt(σ) = (inv(σ) - n) / 2`.
pub fn fpf_weight_series(n: usize) -> IntPolynomial {
    let mut counts = vec![0usize; n * (n - 1) + 1];
    for sigma in fpf_involutions(n) {
        counts[(inversions(&sigma) - n) / 2] += 1;
    }
    IntPolynomial::from_counts(&counts)
}

/// Whether `Σ_{σ ∈ F(2n)} t^wt(σ)` equals `Poin(ι(θ))` for `A_{2n-1}` with
/// the flip (the identity when `n = 1`), and that polynomial is palindromic.
pub fn remark53_check(n: usize, budget: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::Parse("n must be positive".into()));
    }
    let name = if n == 1 { "A1".to_string() } else { format!("A{}:flip", 2 * n - 1) };
    let ts = resolve_twisted(&name)?;
    let iota = poincare_iota(&ts, None, budget)?.exact()?;
    Ok(iota == fpf_weight_series(n) && iota.is_palindromic())
}

/// `|W|` as a big integer, for comparing evaluations at `t = 1`.
pub fn group_order(system: &CoxeterSystem, budget: usize) -> Result<BigInt> {
    Ok(poincare_w(system, None, budget)?.exact()?.eval_at_one())
}
