//! Diagram involutions, the twisted action, twisted involutions and twisted
//! identities.

mod directed;
mod enumerate;

pub use directed::{coxeter_power_upper_bound, find_coxeter_partition, CoxeterPartition};
pub use enumerate::{TwistedInvolutions, DualConjugacyModel};

use std::collections::HashSet;

use crate::coxeter::{format_indices, parse_indices, CoxeterSystem, GroupElement};
use crate::error::{Error, Result};

/// An involutive permutation of the generators preserving the Coxeter matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    perm: Vec<usize>,
}

impl Automorphism {
    pub fn new(perm: Vec<usize>) -> Self {
        Automorphism { perm }
    }

    pub fn identity(n: usize) -> Self {
        Automorphism {
            perm: (0..n).collect(),
        }
    }

    pub fn image(&self, s: usize) -> usize {
        self.perm[s]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// True iff the permutation is an involution preserving `m`.
    pub fn check(&self, system: &CoxeterSystem) -> bool {
        self.validate(system).is_ok()
    }

    pub fn validate(&self, system: &CoxeterSystem) -> Result<()> {
        let n = system.rank();
        if self.perm.len() != n {
            return Err(Error::InvalidAutomorphism(format!(
                "expected {n} images, got {}",
                self.perm.len()
            )));
        }
        if let Some(&p) = self.perm.iter().find(|&&p| p >= n) {
            return Err(Error::InvalidAutomorphism(format!("image {p} out of range")));
        }
        for s in 0..n {
            if self.perm[self.perm[s]] != s {
                return Err(Error::InvalidAutomorphism(format!(
                    "not an involution at generator {}",
                    s + 1
                )));
            }
        }
        let m = system.matrix();
        for i in 0..n {
            for j in 0..n {
                if m.m(self.perm[i], self.perm[j]) != m.m(i, j) {
                    return Err(Error::InvalidAutomorphism(format!(
                        "m({},{}) is not preserved",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A word in the twisted letters, applied left to right starting at `e`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SExpression(pub Vec<usize>);

impl SExpression {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn format(&self, rank: usize) -> String {
        format_indices(&self.0, rank)
    }

    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        Ok(SExpression(parse_indices(text, rank)?))
    }
}

/// A twisted involution together with its rank data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedElement {
    pub element: GroupElement,
    pub rho: usize,
    pub ell_theta: usize,
    pub sexpr: SExpression,
}

impl TwistedElement {
    pub fn length(&self) -> usize {
        2 * self.rho - self.ell_theta
    }

    pub fn is_twisted_identity(&self) -> bool {
        self.ell_theta == 0
    }
}

/// A Coxeter system paired with a diagram involution.
#[derive(Debug, Clone)]
pub struct TwistedSystem {
    system: CoxeterSystem,
    theta: Automorphism,
    // θ can act on matrices by permuting coordinates only when it also
    // preserves the Cartan companion.
    permutes_cartan: bool,
}

impl TwistedSystem {
    pub fn new(system: CoxeterSystem, theta: Automorphism) -> Result<Self> {
        theta.validate(&system)?;
        let n = system.rank();
        let c = system.cartan();
        let permutes_cartan = system.backend() == crate::coxeter::Backend::Matrix
            && (0..n).all(|i| (0..n).all(|j| c[theta.image(i)][theta.image(j)] == c[i][j]));
        Ok(TwistedSystem {
            system,
            theta,
            permutes_cartan,
        })
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn theta(&self) -> &Automorphism {
        &self.theta
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    /// The image `θ(w)`.
    pub fn apply_theta(&self, w: &GroupElement) -> GroupElement {
        if self.theta.is_identity() {
            return w.clone();
        }
        if self.permutes_cartan {
            let m = w.matrix().expect("matrix backend");
            return GroupElement::from_matrix(m.permute(self.theta.perm()), w.cached_length());
        }
        if let Some(d) = w.dihedral() {
            // only the swap is a nontrivial automorphism in rank two
            let m = self.system.matrix().m(0, 1).expect("finite label");
            return GroupElement::from_dihedral(d.swapped(m), w.cached_length());
        }
        let word = self.system.reduced_word(w);
        let image: Vec<usize> = word.0.iter().map(|&s| self.theta.image(s)).collect();
        let out = self.system.evaluate(&image);
        let _ = out.length.set(word.len());
        out
    }

    /// `w s̲`: `ws` if `θ(s) w s = w`, otherwise `θ(s) w s`.
    pub fn twisted_action(&self, w: &GroupElement, s: usize) -> GroupElement {
        let ws = self.system.mul_gen(w, s);
        let x = self.system.gen_mul(self.theta.image(s), &ws);
        if &x == w {
            ws
        } else {
            x
        }
    }

    pub fn eval_sexpr(&self, expr: &SExpression) -> GroupElement {
        expr.0
            .iter()
            .fold(self.system.identity(), |w, &s| self.twisted_action(&w, s))
    }

    pub fn is_twisted_involution(&self, w: &GroupElement) -> bool {
        let t = self.apply_theta(w);
        self.system.is_identity(&self.system.multiply(&t, w).expect("same system"))
    }

    /// Rank and canonical S̲-expression of a twisted involution, by stripping
    /// the smallest right descent until reaching `e`.
    pub fn canonical_sexpr(&self, w: &GroupElement) -> Result<SExpression> {
        if !self.is_twisted_involution(w) {
            return Err(Error::NotTwistedInvolution);
        }
        let mut expr = Vec::new();
        let mut cur = w.clone();
        while let Some(s) = self.system.first_right_descent(&cur) {
            expr.push(s);
            cur = self.twisted_action(&cur, s);
        }
        expr.reverse();
        Ok(SExpression(expr))
    }

    pub fn rho(&self, w: &GroupElement) -> Result<usize> {
        Ok(self.canonical_sexpr(w)?.len())
    }

    pub fn ell_theta(&self, w: &GroupElement) -> Result<usize> {
        let rho = self.rho(w)?;
        Ok(2 * rho - self.system.length(w))
    }

    pub fn is_twisted_identity(&self, w: &GroupElement) -> bool {
        matches!(self.ell_theta(w), Ok(0))
    }

    pub fn twisted_element(&self, w: &GroupElement) -> Result<TwistedElement> {
        let sexpr = self.canonical_sexpr(w)?;
        let rho = sexpr.len();
        let ell_theta = 2 * rho - self.system.length(w);
        Ok(TwistedElement {
            element: w.clone(),
            rho,
            ell_theta,
            sexpr,
        })
    }

    /// Evaluates an S̲-expression and wraps the result with its rank data.
    pub fn element_of_sexpr(&self, expr: &SExpression) -> TwistedElement {
        let w = self.eval_sexpr(expr);
        self.twisted_element(&w)
            .expect("S̲-expressions evaluate to twisted involutions")
    }

    /// Twisted lifting recursion on `ρ`, with the smallest right descent of
    /// `v` at each step.
    pub fn bruhat_leq_twisted(&self, u: &TwistedElement, v: &TwistedElement) -> Result<bool> {
        let mut u_rho = u.rho;
        let mut v_rho = v.rho;
        let mut u = u.element.clone();
        let mut v = v.element.clone();
        loop {
            if u_rho > v_rho {
                return Ok(false);
            }
            if u_rho == 0 {
                return Ok(true);
            }
            let Some(s) = self.system.first_right_descent(&v) else {
                return Ok(false);
            };
            if self.system.is_right_descent(&u, s) {
                u = self.twisted_action(&u, s);
                u_rho -= 1;
            }
            v = self.twisted_action(&v, s);
            v_rho -= 1;
        }
    }

    /// Whether some subsequence of `v_expr` evaluates to `u`.
    pub fn subword_check_bruteforce(&self, u: &GroupElement, v_expr: &SExpression) -> Result<bool> {
        const LIMIT: usize = 20;
        if v_expr.len() > LIMIT {
            return Err(Error::SubwordBudget(v_expr.len(), LIMIT));
        }
        let mut reached: HashSet<GroupElement> = HashSet::new();
        reached.insert(self.system.identity());
        for &s in &v_expr.0 {
            let next: Vec<GroupElement> = reached
                .iter()
                .map(|w| self.twisted_action(w, s))
                .collect();
            reached.extend(next);
        }
        Ok(reached.contains(u))
    }

    /// No odd-labelled edge is flipped: `m(s, θ(s))` is even or infinite
    /// whenever `s ≠ θ(s)`.
    pub fn has_nof(&self) -> bool {
        (0..self.rank()).all(|s| {
            let t = self.theta.image(s);
            s == t || !matches!(self.system.matrix().m(s, t), Some(m) if m % 2 == 1)
        })
    }

    /// `m(s, θ(s)) ∈ {1, 2, ∞}` for every generator.
    pub fn prop51_condition(&self) -> bool {
        (0..self.rank()).all(|s| {
            let t = self.theta.image(s);
            s == t || matches!(self.system.matrix().m(s, t), None | Some(2))
        })
    }

    /// Longest elements of the parabolics `{s, θ(s)}`, one per θ-orbit.
    pub fn fixed_subgroup_generators(&self) -> Result<Vec<GroupElement>> {
        let mut out = Vec::new();
        for s in 0..self.rank() {
            let t = self.theta.image(s);
            if t < s {
                continue;
            }
            if s != t && self.system.matrix().m(s, t).is_none() {
                return Err(Error::InfiniteDihedralPair(s));
            }
            let pair = if s == t { vec![s] } else { vec![s, t] };
            out.push(self.system.longest_element(&pair)?);
        }
        Ok(out)
    }

    /// `θ(w⁻¹) w`, a twisted identity.
    pub fn iota_from_group_element(&self, w: &GroupElement) -> TwistedElement {
        let inv = self.system.inverse(w);
        let x = self
            .system
            .multiply(&self.apply_theta(&inv), w)
            .expect("same system");
        self.twisted_element(&x)
            .expect("θ(w⁻¹)w is a twisted involution")
    }
}
