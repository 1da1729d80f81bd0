use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use super::{SExpression, TwistedElement, TwistedSystem};
use crate::coxeter::GroupElement;
use crate::error::{Error, Result};

/// Twisted involutions listed by rank, with the twisted action tabulated.
///
/// Elements are sorted by `(ρ, canonical S̲-expression)`. When the
/// enumeration was cut at a rank bound, ascents out of the top layer are
/// recorded as `None`.
#[derive(Debug, Clone)]
pub struct TwistedInvolutions {
    elements: Vec<TwistedElement>,
    index: HashMap<GroupElement, usize>,
    act: Vec<Vec<Option<usize>>>,
    descents: Vec<u64>,
    layer_starts: Vec<usize>,
    generators: usize,
    complete: bool,
}

impl TwistedInvolutions {
    /// Orbit of `e` under the twisted action, by breadth-first search on `ρ`.
    /// `max_rank = None` asks for everything and needs a finite group.
    pub fn enumerate(ts: &TwistedSystem, max_rank: Option<usize>, budget: usize) -> Result<Self> {
        let sys = ts.system();
        let n = sys.rank();
        assert!(n <= 64, "at most 64 generators supported");
        if max_rank.is_none() && !sys.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        let e = sys.identity();
        let mut out = TwistedInvolutions {
            elements: vec![TwistedElement {
                element: e.clone(),
                rho: 0,
                ell_theta: 0,
                sexpr: SExpression::default(),
            }],
            index: HashMap::from([(e, 0)]),
            act: vec![vec![None; n]],
            descents: vec![0],
            layer_starts: vec![0, 1],
            generators: n,
            complete: false,
        };
        loop {
            let k = out.layer_starts.len() - 2;
            let (start, end) = (out.layer_starts[k], out.layer_starts[k + 1]);
            if Some(k) == max_rank {
                break;
            }
            let mut fresh: HashSet<GroupElement> = HashSet::new();
            let mut found: Vec<GroupElement> = Vec::new();
            let mut pending: Vec<(usize, usize, GroupElement)> = Vec::new();
            for i in start..end {
                for s in 0..n {
                    if out.descents[i] >> s & 1 == 1 {
                        continue;
                    }
                    let w = &out.elements[i].element;
                    let ws = sys.mul_gen(w, s);
                    let x = sys.gen_mul(ts.theta().image(s), &ws);
                    let (x, grow) = if &x == w { (ws, 1) } else { (x, 2) };
                    let _ = x.length.set(out.elements[i].length() + grow);
                    if fresh.insert(x.clone()) {
                        found.push(x.clone());
                        if out.elements.len() + found.len() > budget {
                            return Err(Error::Budget(budget));
                        }
                    }
                    pending.push((i, s, x));
                }
            }
            if found.is_empty() {
                out.complete = true;
                break;
            }
            let mut layer: Vec<TwistedElement> = found
                .into_iter()
                .map(|x| {
                    let s = sys.first_right_descent(&x).expect("nonidentity has a descent");
                    let parent = out.index[&ts.twisted_action(&x, s)];
                    let mut expr = out.elements[parent].sexpr.clone();
                    expr.0.push(s);
                    let length = sys.length(&x);
                    TwistedElement {
                        element: x,
                        rho: k + 1,
                        ell_theta: 2 * (k + 1) - length,
                        sexpr: expr,
                    }
                })
                .collect();
            layer.sort_by(|a, b| a.sexpr.cmp(&b.sexpr));
            for t in layer {
                let idx = out.elements.len();
                let mut mask = 0u64;
                let mut row = vec![None; n];
                for s in 0..n {
                    if sys.is_right_descent(&t.element, s) {
                        mask |= 1 << s;
                        let y = ts.twisted_action(&t.element, s);
                        row[s] = Some(out.index[&y]);
                    }
                }
                out.index.insert(t.element.clone(), idx);
                out.elements.push(t);
                out.descents.push(mask);
                out.act.push(row);
            }
            for (i, s, x) in pending {
                out.act[i][s] = Some(out.index[&x]);
            }
            out.layer_starts.push(out.elements.len());
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn elements(&self) -> &[TwistedElement] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &TwistedElement {
        &self.elements[i]
    }

    pub fn index_of(&self, w: &GroupElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// True when the whole orbit was reached.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Rank bound of a truncated enumeration, `None` when complete.
    pub fn truncation_rank(&self) -> Option<usize> {
        (!self.complete).then(|| self.max_rho())
    }

    pub fn max_rho(&self) -> usize {
        self.layer_starts.len() - 2
    }

    /// Index range of the elements of rank `k`.
    pub fn layer(&self, k: usize) -> std::ops::Range<usize> {
        self.layer_starts[k]..self.layer_starts[k + 1]
    }

    /// Index of `x s̲`, or `None` if it lies beyond the truncation.
    pub fn act(&self, i: usize, s: usize) -> Option<usize> {
        self.act[i][s]
    }

    pub fn is_descent(&self, i: usize, s: usize) -> bool {
        self.descents[i] >> s & 1 == 1
    }

    pub fn descents(&self, i: usize) -> Vec<usize> {
        (0..self.generators).filter(|&s| self.is_descent(i, s)).collect()
    }

    pub fn first_descent(&self, i: usize) -> Option<usize> {
        (self.descents[i] != 0).then(|| self.descents[i].trailing_zeros() as usize)
    }

    /// Indices of the twisted identities.
    pub fn identities(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.elements[i].ell_theta == 0)
            .collect()
    }

    /// Row `v` holds every `u ≤ v`. By the lifting property, with `s` the
    /// smallest descent of `v`, the lower set of `v` is that of `v s̲`
    /// together with its image under `s̲`.
    pub fn leq_table(&self) -> Vec<FixedBitSet> {
        let n = self.len();
        let mut rows: Vec<FixedBitSet> = Vec::with_capacity(n);
        let mut first = FixedBitSet::with_capacity(n);
        first.insert(0);
        rows.push(first);
        for v in 1..n {
            let s = self.first_descent(v).expect("nonidentity has a descent");
            let parent = self.act[v][s].expect("descents stay inside the enumeration");
            let mut row = rows[parent].clone();
            for y in rows[parent].ones() {
                row.insert(self.act[y][s].expect("ascents below v are enumerated"));
            }
            rows.push(row);
        }
        rows
    }
}

/// Result of comparing `{w0 u : u ∈ ι}` with the conjugacy class of `w0`.
#[derive(Debug, Clone)]
pub struct DualConjugacyModel {
    /// `(ρ(u), w0 u)` for every twisted identity `u`.
    pub products: Vec<(usize, GroupElement)>,
    pub class: Vec<GroupElement>,
    pub equal: bool,
}

impl TwistedSystem {
    /// For `θ` equal to conjugation by `w0`, the set `w0 ι(θ)` should be the
    /// conjugacy class of `w0`.
    pub fn dual_conjugacy_model(&self, budget: usize) -> Result<DualConjugacyModel> {
        let sys = self.system();
        let all: Vec<usize> = (0..sys.rank()).collect();
        let w0 = sys.longest_element(&all).map_err(|_| Error::InfiniteGroup)?;
        for s in 0..sys.rank() {
            let conj = sys.multiply(&sys.multiply(&w0, &sys.generator(s))?, &w0)?;
            if conj != sys.generator(self.theta().image(s)) {
                return Err(Error::ThetaNotConjugationByW0);
            }
        }
        let inv = TwistedInvolutions::enumerate(self, None, budget)?;
        let products: Vec<(usize, GroupElement)> = inv
            .identities()
            .into_iter()
            .map(|i| {
                let t = inv.get(i);
                (t.rho, sys.multiply(&w0, &t.element).expect("same system"))
            })
            .collect();
        let mut seen: HashSet<GroupElement> = HashSet::from([w0.clone()]);
        let mut class = vec![w0.clone()];
        let mut queue = VecDeque::from([w0]);
        while let Some(x) = queue.pop_front() {
            for s in 0..sys.rank() {
                let y = sys.gen_mul(s, &sys.mul_gen(&x, s));
                if seen.insert(y.clone()) {
                    if seen.len() > budget {
                        return Err(Error::Budget(budget));
                    }
                    class.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let product_set: HashSet<&GroupElement> = products.iter().map(|(_, w)| w).collect();
        let equal = product_set.len() == products.len()
            && product_set.len() == class.len()
            && class.iter().all(|c| product_set.contains(c));
        Ok(DualConjugacyModel {
            products,
            class,
            equal,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::DEFAULT_ELEMENT_BUDGET;
    use crate::presets::resolve_twisted;

    fn all(name: &str) -> (TwistedSystem, TwistedInvolutions) {
        let ts = resolve_twisted(name).unwrap();
        let inv = TwistedInvolutions::enumerate(&ts, None, DEFAULT_ELEMENT_BUDGET).unwrap();
        (ts, inv)
    }

    #[test]
    fn classical_involutions_of_a2() {
        let (ts, inv) = all("A2");
        let sys = ts.system();
        let mut got: Vec<GroupElement> = inv.elements().iter().map(|t| t.element.clone()).collect();
        let mut expected = vec![
            sys.identity(),
            sys.generator(0),
            sys.generator(1),
            sys.evaluate(&[0, 1, 0]),
        ];
        let key = |w: &GroupElement| sys.reduced_word(w);
        got.sort_by_key(key);
        expected.sort_by_key(key);
        assert_eq!(got, expected);
        assert_eq!(inv.identities(), vec![0]);
    }

    #[test]
    fn counts_in_type_a() {
        let (_, inv) = all("A5:flip");
        assert_eq!(inv.len(), 76);
        assert_eq!(inv.identities().len(), 15);
        let profile: Vec<usize> = (0..=inv.max_rho())
            .map(|k| inv.layer(k).filter(|&i| inv.get(i).ell_theta == 0).count())
            .filter(|&c| c > 0)
            .collect();
        assert_eq!(profile, vec![1, 2, 3, 3, 3, 2, 1]);
    }

    #[test]
    fn stored_rank_matches_greedy_walk() {
        let (ts, inv) = all("D4:swap");
        for t in inv.elements() {
            assert_eq!(ts.twisted_element(&t.element).unwrap(), *t);
        }
    }

    #[test]
    fn truncated_affine() {
        let ts = resolve_twisted("affineA2").unwrap();
        let inv = TwistedInvolutions::enumerate(&ts, Some(3), DEFAULT_ELEMENT_BUDGET).unwrap();
        assert_eq!(inv.truncation_rank(), Some(3));
        let v = ts.eval_sexpr(&SExpression(vec![1, 0, 2]));
        let i = inv.index_of(&v).unwrap();
        assert_eq!(inv.get(i).rho, 3);
        assert_eq!(inv.get(i).sexpr.format(3), "213");
        assert!(matches!(
            TwistedInvolutions::enumerate(&ts, None, 100),
            Err(Error::InfiniteGroup)
        ));
    }

    #[test]
    fn leq_table_matches_recursion() {
        let (ts, inv) = all("A3:flip");
        let table = inv.leq_table();
        for u in 0..inv.len() {
            for v in 0..inv.len() {
                assert_eq!(
                    table[v].contains(u),
                    ts.bruhat_leq_twisted(inv.get(u), inv.get(v)).unwrap()
                );
            }
        }
    }

    #[test]
    fn dual_model() {
        let (ts, _) = all("A5:flip");
        let model = ts.dual_conjugacy_model(DEFAULT_ELEMENT_BUDGET).unwrap();
        assert!(model.equal);
        assert_eq!(model.class.len(), 15);
        let a1 = resolve_twisted("A1").unwrap();
        let model = a1.dual_conjugacy_model(100).unwrap();
        assert_eq!(model.class, vec![a1.system().generator(0)]);
        assert!(matches!(
            resolve_twisted("A3").unwrap().dual_conjugacy_model(100),
            Err(Error::ThetaNotConjugationByW0)
        ));
    }
}
