//! Discrete Morse matchings on face posets of order complexes of intervals in
//! `Br(ι(θ))`.

use std::collections::HashMap;

use petgraph::algo::is_cyclic_directed;
use petgraph::graph::DiGraph;

use super::complex::OrderComplex;
use crate::error::{Error, Result};
use crate::poset::TwistedBruhat;

/// A partial involution on the faces of a simplicial complex (the empty face
/// included) pairing faces that differ in exactly one vertex.
#[derive(Debug, Clone)]
pub struct MorseMatching {
    cells: Vec<Vec<usize>>,
    partner: Vec<Option<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl MorseMatching {
    /// Matching with the given pairs of cell indices; every face of every
    /// cell must itself be listed in `cells`.
    pub fn from_pairs(cells: Vec<Vec<usize>>, pairs: &[(usize, usize)]) -> Result<Self> {
        let index: HashMap<Vec<usize>, usize> =
            cells.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let mut partner = vec![None; cells.len()];
        for &(a, b) in pairs {
            let (small, big) = if cells[a].len() < cells[b].len() { (a, b) } else { (b, a) };
            let covered = cells[big].len() == cells[small].len() + 1
                && cells[small].iter().all(|x| cells[big].contains(x));
            if !covered {
                return Err(Error::HypothesisFailed(format!(
                    "cells {a} and {b} are not cover related"
                )));
            }
            if partner[a].is_some() || partner[b].is_some() {
                return Err(Error::HypothesisFailed(format!("cell {a} or {b} matched twice")));
            }
            partner[a] = Some(b);
            partner[b] = Some(a);
        }
        Ok(MorseMatching {
            cells,
            partner,
            index,
        })
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn partner(&self, i: usize) -> Option<usize> {
        self.partner[i]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.cells.len())
            .filter_map(|i| self.partner[i].filter(|&j| i < j).map(|j| (i, j)))
            .collect()
    }

    /// Unmatched cells.
    pub fn critical(&self) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.partner[i].is_none()).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.partner.iter().all(|p| p.is_some())
    }

    /// Number of critical cells in each dimension `-1, 0, 1, ...`.
    pub fn critical_counts(&self) -> Vec<usize> {
        let top = self.cells.iter().map(|c| c.len()).max().unwrap_or(0);
        let mut counts = vec![0; top + 1];
        for i in self.critical() {
            counts[self.cells[i].len()] += 1;
        }
        counts
    }

    /// Acyclic iff the Hasse diagram of the face poset, with matched edges
    /// pointing up and all others down, has no directed cycle.
    pub fn verify_acyclic(&self) -> bool {
        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(self.cells.len(), 0);
        let nodes: Vec<_> = (0..self.cells.len()).map(|_| g.add_node(())).collect();
        for (i, cell) in self.cells.iter().enumerate() {
            for skip in 0..cell.len() {
                let face: Vec<usize> = cell
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &x)| x)
                    .collect();
                let Some(&f) = self.index.get(&face) else { continue };
                if self.partner[f] == Some(i) {
                    g.add_edge(nodes[f], nodes[i], ());
                } else {
                    g.add_edge(nodes[i], nodes[f], ());
                }
            }
        }
        !is_cyclic_directed(&g)
    }
}

/// Which matching rule to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchingKind {
    Collapse,
    Suspension,
    CaseOne,
}

struct Setup<'a> {
    tb: &'a TwistedBruhat,
    u: usize,
    v: usize,
    s: usize,
}

impl Setup<'_> {
    fn descent(&self, x: usize) -> bool {
        self.tb.is_descent_iota(x, self.s)
    }

    /// `x s̲` as an identity index strictly inside `(u, v)`.
    fn act_inside(&self, x: usize) -> Result<usize> {
        let p = self.tb.iota();
        match self.tb.act_iota(x, self.s) {
            Some(y) if y != self.u && y != self.v && p.leq(self.u, y) && p.leq(y, self.v) => Ok(y),
            _ => Err(Error::HypothesisFailed(format!(
                "{} s̲ leaves the open interval",
                p.element(x).sexpr
            ))),
        }
    }

    /// `x s̲ = θ(s) x s > x`: an ascent staying among twisted identities.
    fn twisted_ascent(&self, x: usize) -> bool {
        !self.descent(x) && self.tb.act_iota(x, self.s).is_some()
    }
}

fn toggle(chain: &[usize], y: usize) -> Vec<usize> {
    let mut out: Vec<usize> = chain.iter().copied().filter(|&x| x != y).collect();
    if out.len() == chain.len() {
        out.push(y);
        out.sort_unstable();
    }
    out
}

fn build(
    tb: &TwistedBruhat,
    u: usize,
    v: usize,
    s: usize,
    kind: MatchingKind,
    chain_budget: usize,
) -> Result<MorseMatching> {
    let p = tb.iota();
    if s >= tb.twisted_system().rank() {
        return Err(Error::IndexOutOfRange(s));
    }
    let oc = OrderComplex::new(p, u, v, chain_budget)?;
    let setup = Setup { tb, u, v, s };
    let fail = |msg: &str| Err(Error::HypothesisFailed(msg.to_string()));
    if !setup.descent(v) {
        return fail("s is not a descent of v");
    }
    // the vertex whose open star stays critical
    let excluded = match kind {
        MatchingKind::Collapse => {
            let ok = !setup.descent(u)
                && tb.act_iota(u, s).is_none()
                && tb.act(tb.involution_index(u), s).is_some();
            if !ok {
                return fail("u s̲ is not us");
            }
            None
        }
        MatchingKind::Suspension => {
            if setup.descent(u) || !setup.twisted_ascent(u) {
                return fail("u s̲ is not θ(s)us with s an ascent of u");
            }
            let w = tb.act_iota(u, s).expect("checked above");
            if w == v {
                return fail("u s̲ = v, so (u s̲, v) is not an interval");
            }
            Some(w)
        }
        MatchingKind::CaseOne => {
            if setup.descent(u) || !setup.twisted_ascent(u) {
                return fail("u s̲ is not θ(s)us with s an ascent of u");
            }
            let Some(vs) = tb.act_iota(v, s) else {
                return fail("v s̲ is not a twisted identity");
            };
            if !p.leq(u, vs) || tb.is_full_iota(u, vs)? {
                return fail("[u, v s̲] is full");
            }
            Some(vs)
        }
    };
    let cells = oc.complex.all_faces();
    let index: HashMap<&[usize], usize> =
        cells.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    let mut pairs = Vec::new();
    for (i, chain) in cells.iter().enumerate() {
        if excluded.is_some_and(|z| chain.contains(&z)) {
            continue;
        }
        let y = match kind {
            MatchingKind::Collapse | MatchingKind::Suspension => {
                let x = chain
                    .iter()
                    .copied()
                    .find(|&x| setup.descent(x))
                    .unwrap_or(v);
                setup.act_inside(x)?
            }
            MatchingKind::CaseOne => {
                let x = chain
                    .iter()
                    .rev()
                    .copied()
                    .find(|&x| setup.twisted_ascent(x))
                    .unwrap_or(u);
                setup.act_inside(x)?
            }
        };
        let image = toggle(chain, y);
        let Some(&j) = index.get(image.as_slice()) else {
            return fail("matched set is not a chain");
        };
        if excluded.is_some_and(|z| image.contains(&z)) {
            return fail("matching enters the critical set");
        }
        if i < j {
            pairs.push((i, j));
        } else if !pairs.contains(&(j, i)) {
            return fail("matching is not an involution");
        }
    }
    let m = MorseMatching::from_pairs(cells, &pairs)?;
    let expected_critical = match excluded {
        None => 0,
        Some(z) => m.cells.iter().filter(|c| c.contains(&z)).count(),
    };
    if m.critical().len() != expected_critical {
        return fail("matching is not an involution");
    }
    Ok(m)
}

/// Complete matching for `u s̲ = us` and `s ∈ D_R(v)`: toggle `x_c s̲` where
/// `x_c` is the least element of `c ∪ {v}` with descent `s`.
pub fn morse_matching_collapse(tb: &TwistedBruhat, u: usize, v: usize, s: usize, chain_budget: usize) -> Result<MorseMatching> {
    build(tb, u, v, s, MatchingKind::Collapse, chain_budget)
}

/// Same rule on chains avoiding `u s̲`, for `u s̲ = θ(s)us` with
/// `s ∈ D_R(v) ∖ D_R(u)`; the chains through `u s̲` stay critical.
pub fn morse_matching_suspend(tb: &TwistedBruhat, u: usize, v: usize, s: usize, chain_budget: usize) -> Result<MorseMatching> {
    build(tb, u, v, s, MatchingKind::Suspension, chain_budget)
}

/// For `s ∈ D_R(v) ∖ D_R(u)`, `u s̲ = θ(s)us` and `[u, v s̲]` not full: toggle
/// `x_c s̲` where `x_c` is the largest element of `c ∪ {u}` with
/// `x s̲ = θ(s)xs > x`; the chains through `v s̲` stay critical.
pub fn morse_matching_case_one(tb: &TwistedBruhat, u: usize, v: usize, s: usize, chain_budget: usize) -> Result<MorseMatching> {
    build(tb, u, v, s, MatchingKind::CaseOne, chain_budget)
}
