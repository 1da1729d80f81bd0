//! Finite ranked posets given by a dense order table.

mod export;
mod twisted;

pub use export::{export_dot, export_json, import_json};
pub use twisted::TwistedBruhat;

use fixedbitset::FixedBitSet;

use crate::coxeter::{CoxeterSystem, Enumeration};
use crate::error::{Error, Result};
use crate::twisted::{TwistedInvolutions, TwistedSystem};

/// Labels of a poset element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetElement {
    /// Canonical S̲-expression in text form (or reduced word for `Br(W)`).
    pub sexpr: String,
    /// Canonical reduced word of the underlying group element.
    pub word: String,
    pub rank: usize,
    pub length: usize,
    /// Position in the enumeration the poset was built from.
    pub source: Option<usize>,
}

/// A finite poset whose elements are indexed by a linear extension.
#[derive(Debug, Clone)]
pub struct RankedPoset {
    elements: Vec<PosetElement>,
    down: Vec<FixedBitSet>,
    up: Vec<FixedBitSet>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    truncation_rank: Option<usize>,
}

/// Outcome of the gradedness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradednessReport {
    pub graded: bool,
    /// Two saturated chains with common endpoints and different lengths.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
    /// First cover `(u, v)` whose rank difference is not one.
    pub offending_cover: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairBound {
    Bounded,
    /// No bound inside the truncation; one may exist beyond it.
    Unknown,
    /// The poset is complete and the pair has no upper bound.
    NoBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectednessReport {
    pub bounded: usize,
    pub unknown: Vec<(usize, usize)>,
    pub no_bound: Vec<(usize, usize)>,
}

impl DirectednessReport {
    pub fn all_bounded(&self) -> bool {
        self.unknown.is_empty() && self.no_bound.is_empty()
    }
}

/// Which twisted involutions to put in a poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistedSet {
    Involutions,
    Identities,
}

impl RankedPoset {
    /// Builds the poset from an order oracle. Elements must be listed with
    /// nondecreasing rank, so that indices form a linear extension.
    pub fn build(
        elements: Vec<PosetElement>,
        leq: impl Fn(usize, usize) -> bool,
        truncation_rank: Option<usize>,
    ) -> Result<Self> {
        let n = elements.len();
        let down: Vec<FixedBitSet> = (0..n)
            .map(|v| {
                let mut row = FixedBitSet::with_capacity(n);
                for u in 0..n {
                    if u == v || leq(u, v) {
                        row.insert(u);
                    }
                }
                row
            })
            .collect();
        Self::from_table(elements, down, truncation_rank)
    }

    /// Builds the poset from `down[v] = {u : u ≤ v}`.
    pub fn from_table(
        elements: Vec<PosetElement>,
        down: Vec<FixedBitSet>,
        truncation_rank: Option<usize>,
    ) -> Result<Self> {
        let n = elements.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (v, row) in down.iter().enumerate() {
            for u in row.ones() {
                if u != v && (u > v || elements[u].rank >= elements[v].rank) {
                    return Err(Error::InconsistentRanks(u, v));
                }
                up[u].insert(v);
            }
        }
        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for v in 0..n {
            for u in down[v].ones() {
                if u != v && down[v].intersection_count(&up[u]) == 2 {
                    lower_covers[v].push(u);
                    upper_covers[u].push(v);
                }
            }
        }
        Ok(RankedPoset {
            elements,
            down,
            up,
            lower_covers,
            upper_covers,
            truncation_rank,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &PosetElement {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[PosetElement] {
        &self.elements
    }

    pub fn rank(&self, i: usize) -> usize {
        self.elements[i].rank
    }

    pub fn truncation_rank(&self) -> Option<usize> {
        self.truncation_rank
    }

    pub fn leq(&self, u: usize, v: usize) -> bool {
        self.down[v].contains(u)
    }

    pub fn down_set(&self, v: usize) -> &FixedBitSet {
        &self.down[v]
    }

    pub fn up_set(&self, u: usize) -> &FixedBitSet {
        &self.up[u]
    }

    pub fn lower_covers(&self, v: usize) -> &[usize] {
        &self.lower_covers[v]
    }

    pub fn upper_covers(&self, u: usize) -> &[usize] {
        &self.upper_covers[u]
    }

    /// All covers `(u, v)`, ordered by `v` and then `u`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|v| self.lower_covers[v].iter().map(move |&u| (u, v)))
            .collect()
    }

    pub fn find_by_sexpr(&self, sexpr: &str) -> Option<usize> {
        self.elements.iter().position(|e| e.sexpr == sexpr)
    }

    /// Elements strictly between `u` and `v`, in index order.
    pub fn open_interval(&self, u: usize, v: usize) -> Vec<usize> {
        let mut between = self.down[v].clone();
        between.intersect_with(&self.up[u]);
        between.ones().filter(|&x| x != u && x != v).collect()
    }

    /// Graded with the stored rank iff every cover raises the rank by one.
    /// A witness is searched from the least element: the first element (in
    /// index order) with saturated chains of two lengths yields a shortest and
    /// a longest such chain, built from smallest-index predecessors.
    pub fn check_graded(&self) -> GradednessReport {
        let offending_cover = self
            .covers()
            .into_iter()
            .find(|&(u, v)| self.rank(v) != self.rank(u) + 1);
        let witness = self.chain_length_witness();
        GradednessReport {
            graded: offending_cover.is_none(),
            witness,
            offending_cover,
        }
    }

    fn chain_length_witness(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.len();
        if n == 0 {
            return None;
        }
        let mut shortest: Vec<(usize, Option<usize>)> = vec![(0, None); n];
        let mut longest: Vec<(usize, Option<usize>)> = vec![(0, None); n];
        for v in 1..n {
            let lows = &self.lower_covers[v];
            if lows.is_empty() {
                continue;
            }
            let s = lows.iter().copied().min_by_key(|&u| (shortest[u].0, u)).unwrap();
            let l = lows.iter().copied().min_by_key(|&u| (usize::MAX - longest[u].0, u)).unwrap();
            shortest[v] = (shortest[s].0 + 1, Some(s));
            longest[v] = (longest[l].0 + 1, Some(l));
            if shortest[v].0 != longest[v].0 {
                let walk = |table: &[(usize, Option<usize>)]| {
                    let mut chain = vec![v];
                    let mut cur = v;
                    while let Some(p) = table[cur].1 {
                        chain.push(p);
                        cur = p;
                    }
                    chain.reverse();
                    chain
                };
                return Some((walk(&shortest), walk(&longest)));
            }
        }
        None
    }

    /// `μ(u, w)` for every `w ≥ u`, indexed by `w` (zero elsewhere).
    pub fn mobius_row(&self, u: usize) -> Vec<i64> {
        let mut mu = vec![0i64; self.len()];
        mu[u] = 1;
        for w in self.up[u].ones().filter(|&w| w != u) {
            let mut total = 0i64;
            for x in self.down[w].ones() {
                if x != w && self.up[u].contains(x) {
                    total += mu[x];
                }
            }
            mu[w] = -total;
        }
        mu
    }

    pub fn mobius(&self, u: usize, v: usize) -> Result<i64> {
        if !self.leq(u, v) {
            return Err(Error::NotComparable(u, v));
        }
        let row = self.mobius_row(u);
        Ok(row[v])
    }

    /// Elements without an upper cover.
    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.upper_covers[i].is_empty())
            .collect()
    }

    pub fn pair_bound(&self, a: usize, b: usize) -> PairBound {
        if self.up[a].intersection_count(&self.up[b]) > 0 {
            PairBound::Bounded
        } else if self.truncation_rank.is_some() {
            PairBound::Unknown
        } else {
            PairBound::NoBound
        }
    }

    /// Classifies every unordered pair; a missing bound is only reported as
    /// definite when the poset is not a truncation.
    pub fn directedness_within(&self) -> DirectednessReport {
        let mut report = DirectednessReport {
            bounded: 0,
            unknown: Vec::new(),
            no_bound: Vec::new(),
        };
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                match self.pair_bound(a, b) {
                    PairBound::Bounded => report.bounded += 1,
                    PairBound::Unknown => report.unknown.push((a, b)),
                    PairBound::NoBound => report.no_bound.push((a, b)),
                }
            }
        }
        report
    }
}

/// `Br(𝔍(θ))` or `Br(ι(θ))` on an enumeration of twisted involutions.
pub fn twisted_poset(ts: &TwistedSystem, inv: &TwistedInvolutions, set: TwistedSet) -> RankedPoset {
    let table = inv.leq_table();
    let keep: Vec<usize> = match set {
        TwistedSet::Involutions => (0..inv.len()).collect(),
        TwistedSet::Identities => inv.identities(),
    };
    twisted_subposet(ts, inv, &table, &keep)
}

/// Subposet on the enumeration indices `keep` (in increasing order), using a
/// table from [`TwistedInvolutions::leq_table`].
pub fn twisted_subposet(
    ts: &TwistedSystem,
    inv: &TwistedInvolutions,
    table: &[FixedBitSet],
    keep: &[usize],
) -> RankedPoset {
    let rank = ts.rank();
    let elements: Vec<PosetElement> = keep
        .iter()
        .map(|&i| {
            let t = inv.get(i);
            PosetElement {
                sexpr: t.sexpr.format(rank),
                word: ts.system().reduced_word(&t.element).format(rank),
                rank: t.rho,
                length: t.length(),
                source: Some(i),
            }
        })
        .collect();
    let down: Vec<FixedBitSet> = keep
        .iter()
        .map(|&v| {
            let mut row = FixedBitSet::with_capacity(keep.len());
            for (a, &u) in keep.iter().enumerate() {
                if table[v].contains(u) {
                    row.insert(a);
                }
            }
            row
        })
        .collect();
    RankedPoset::from_table(elements, down, inv.truncation_rank())
        .expect("ρ is strictly monotone on Bruhat order")
}

/// Ordinary Bruhat order on an enumeration of `W`, ranked by length.
pub fn bruhat_poset(sys: &CoxeterSystem, all: &Enumeration) -> RankedPoset {
    let rank = sys.rank();
    let elements: Vec<PosetElement> = (0..all.len())
        .map(|i| PosetElement {
            sexpr: all.words[i].format(rank),
            word: all.words[i].format(rank),
            rank: all.length_of(i),
            length: all.length_of(i),
            source: Some(i),
        })
        .collect();
    let truncation = (!all.complete).then(|| all.max_length());
    RankedPoset::build(
        elements,
        |u, v| sys.bruhat_leq(&all.elements[u], &all.elements[v]),
        truncation,
    )
    .expect("length is strictly monotone on Bruhat order")
}
