use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use super::{twisted_subposet, RankedPoset};
use crate::error::{Error, Result};
use crate::twisted::{SExpression, TwistedInvolutions, TwistedSystem};

/// `Br(𝔍(θ))` and its subposet `Br(ι(θ))` on one enumeration.
///
/// Indices into the enumeration are called involution indices; indices into
/// [`TwistedBruhat::iota`] are called identity indices.
#[derive(Debug)]
pub struct TwistedBruhat {
    ts: TwistedSystem,
    inv: TwistedInvolutions,
    table: Vec<FixedBitSet>,
    iota_source: Vec<usize>,
    iota_of: Vec<Option<usize>>,
    iota: RankedPoset,
    involutions: OnceLock<RankedPoset>,
}

impl TwistedBruhat {
    pub fn new(ts: TwistedSystem, max_rank: Option<usize>, budget: usize) -> Result<Self> {
        let inv = TwistedInvolutions::enumerate(&ts, max_rank, budget)?;
        let table = inv.leq_table();
        let iota_source = inv.identities();
        let mut iota_of = vec![None; inv.len()];
        for (k, &i) in iota_source.iter().enumerate() {
            iota_of[i] = Some(k);
        }
        let iota = twisted_subposet(&ts, &inv, &table, &iota_source);
        Ok(TwistedBruhat {
            ts,
            inv,
            table,
            iota_source,
            iota_of,
            iota,
            involutions: OnceLock::new(),
        })
    }

    pub fn twisted_system(&self) -> &TwistedSystem {
        &self.ts
    }

    pub fn involutions_enumeration(&self) -> &TwistedInvolutions {
        &self.inv
    }

    /// `table[v]` holds the involution indices below `v`.
    pub fn table(&self) -> &[FixedBitSet] {
        &self.table
    }

    pub fn iota(&self) -> &RankedPoset {
        &self.iota
    }

    /// `Br(𝔍(θ))` on the whole enumeration, built on first use.
    pub fn involutions(&self) -> &RankedPoset {
        self.involutions.get_or_init(|| {
            let all: Vec<usize> = (0..self.inv.len()).collect();
            twisted_subposet(&self.ts, &self.inv, &self.table, &all)
        })
    }

    pub fn involution_index(&self, iota_index: usize) -> usize {
        self.iota_source[iota_index]
    }

    pub fn identity_index(&self, involution_index: usize) -> Option<usize> {
        self.iota_of[involution_index]
    }

    pub fn leq(&self, u: usize, v: usize) -> bool {
        self.table[v].contains(u)
    }

    /// Involution index of `x s̲` for an involution index `x`.
    pub fn act(&self, x: usize, s: usize) -> Option<usize> {
        self.inv.act(x, s)
    }

    /// Identity index of `x s̲` for an identity index `x`, if it is again a
    /// twisted identity inside the enumeration.
    pub fn act_iota(&self, x: usize, s: usize) -> Option<usize> {
        self.act(self.involution_index(x), s)
            .and_then(|y| self.identity_index(y))
    }

    pub fn is_descent_iota(&self, x: usize, s: usize) -> bool {
        self.inv.is_descent(self.involution_index(x), s)
    }

    /// Looks up an S̲-expression, distinguishing "beyond the truncation" from
    /// absence.
    pub fn locate(&self, expr: &SExpression) -> Result<usize> {
        let w = self.ts.eval_sexpr(expr);
        if let Some(i) = self.inv.index_of(&w) {
            return Ok(i);
        }
        let rho = self.ts.rho(&w)?;
        Err(Error::TruncationTooSmall(rho))
    }

    /// Whether the Bruhat interval `[u, v]` of twisted involutions consists of
    /// twisted identities only (involution indices).
    pub fn is_full(&self, u: usize, v: usize) -> Result<bool> {
        if !self.leq(u, v) {
            return Err(Error::NotComparable(u, v));
        }
        Ok(self.table[v]
            .ones()
            .filter(|&w| self.leq(u, w))
            .all(|w| self.inv.get(w).ell_theta == 0))
    }

    /// [`TwistedBruhat::is_full`] on identity indices.
    pub fn is_full_iota(&self, u: usize, v: usize) -> Result<bool> {
        self.is_full(self.involution_index(u), self.involution_index(v))
    }
}
