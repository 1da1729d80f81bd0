use std::collections::{HashMap, VecDeque};

use indexmap::IndexSet;

use super::dihedral::DihedralWord;
use super::element::{GroupElement, ReducedWord, Repr};
use super::finite::{classify_subset, FiniteType};
use super::CoxeterMatrix;
use crate::error::{Error, Result};
use crate::intmatrix::IntMatrix;
use crate::twisted::Automorphism;

pub const DEFAULT_ELEMENT_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Matrix,
    Dihedral,
}

/// A Coxeter system with a fixed element representation.
///
/// The matrix backend acts on the root lattice through an integral Cartan
/// companion of the Coxeter matrix: labels 2, 3, 4, 6 and infinity get the
/// off-diagonal pairs (0,0), (-1,-1), (-1,-2), (-1,-3) and (-2,-2), the first
/// entry belonging to the smaller index. Right descents are read off as
/// negative columns. Rank-two groups with any other label use dihedral
/// normal forms instead.
#[derive(Debug, Clone)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    backend: Backend,
    cartan: Vec<Vec<i64>>,
    finite_type: Option<FiniteType>,
}

/// Elements of a group listed breadth-first by length, each with its
/// canonical reduced word.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub elements: Vec<GroupElement>,
    pub words: Vec<ReducedWord>,
    /// `layer_starts[k]` is the index of the first element of length `k`;
    /// the final entry is the total count.
    pub layer_starts: Vec<usize>,
    /// True when the group was exhausted rather than cut at a length bound.
    pub complete: bool,
    index: HashMap<GroupElement, usize>,
}

impl Enumeration {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, w: &GroupElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn max_length(&self) -> usize {
        self.layer_starts.len().saturating_sub(2)
    }

    pub fn layer(&self, k: usize) -> &[GroupElement] {
        &self.elements[self.layer_starts[k]..self.layer_starts[k + 1]]
    }

    /// Number of elements of each length.
    pub fn length_profile(&self) -> Vec<usize> {
        self.layer_starts.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn length_of(&self, i: usize) -> usize {
        self.words[i].len()
    }
}

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Result<Self> {
        let n = matrix.size();
        if n == 0 {
            return Err(Error::MalformedMatrix("rank must be at least one".into()));
        }
        let crystallographic = matrix.is_crystallographic();
        let backend = if crystallographic {
            Backend::Matrix
        } else if n == 2 {
            Backend::Dihedral
        } else {
            let (i, j, label) = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .find_map(|(i, j)| match matrix.m(i, j) {
                    Some(m) if i != j && !matches!(m, 2 | 3 | 4 | 6) => Some((i, j, m)),
                    _ => None,
                })
                .expect("non-crystallographic matrix has an unsupported label");
            return Err(Error::NonCrystallographic {
                i,
                j,
                label,
                rank: n,
            });
        };
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            cartan[i][i] = 2;
            for j in i + 1..n {
                let (a, b) = match matrix.m(i, j) {
                    Some(2) => (0, 0),
                    Some(3) => (-1, -1),
                    Some(4) => (-1, -2),
                    Some(6) => (-1, -3),
                    None => (-2, -2),
                    // dihedral backend does not use the Cartan matrix
                    Some(_) => (0, 0),
                };
                cartan[i][j] = a;
                cartan[j][i] = b;
            }
        }
        let all: Vec<usize> = (0..n).collect();
        let finite_type = classify_subset(&matrix, &all);
        Ok(CoxeterSystem {
            matrix,
            backend,
            cartan,
            finite_type,
        })
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.size()
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn finite_type(&self) -> Option<&FiniteType> {
        self.finite_type.as_ref()
    }

    pub fn is_finite(&self) -> bool {
        self.finite_type.is_some()
    }

    /// The Cartan companion used by the matrix backend.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    fn dihedral_m(&self) -> u32 {
        self.matrix.m(0, 1).expect("dihedral backend has finite label")
    }

    fn check_index(&self, s: usize) {
        assert!(s < self.rank(), "generator index {s} out of range");
    }

    /// Reflection matrices of the generators (matrix backend only).
    pub fn generator_matrices(&self) -> Vec<IntMatrix> {
        match self.backend {
            Backend::Matrix => (0..self.rank())
                .map(|i| IntMatrix::identity(self.rank()).mul_reflection_right(i, &self.cartan[i]))
                .collect(),
            Backend::Dihedral => Vec::new(),
        }
    }

    pub fn identity(&self) -> GroupElement {
        let repr = match self.backend {
            Backend::Matrix => Repr::Matrix(IntMatrix::identity(self.rank())),
            Backend::Dihedral => Repr::Dihedral(DihedralWord::IDENTITY),
        };
        GroupElement::with_length(repr, Some(0))
    }

    pub fn generator(&self, s: usize) -> GroupElement {
        self.mul_gen(&self.identity(), s)
    }

    pub fn multiply(&self, w: &GroupElement, v: &GroupElement) -> Result<GroupElement> {
        let repr = match (&w.repr, &v.repr) {
            (Repr::Matrix(a), Repr::Matrix(b)) if a.size() == self.rank() && b.size() == a.size() => {
                Repr::Matrix(a.mul(b))
            }
            (Repr::Dihedral(a), Repr::Dihedral(b)) if self.backend == Backend::Dihedral => {
                Repr::Dihedral(a.mul(*b, self.dihedral_m()))
            }
            _ => return Err(Error::BackendMismatch),
        };
        Ok(GroupElement::new(repr))
    }

    /// `w * s`, carrying over a cached length.
    pub fn mul_gen(&self, w: &GroupElement, s: usize) -> GroupElement {
        self.check_index(s);
        let length = w
            .cached_length()
            .map(|l| if self.is_right_descent(w, s) { l - 1 } else { l + 1 });
        let repr = match &w.repr {
            Repr::Matrix(m) => Repr::Matrix(m.mul_reflection_right(s, &self.cartan[s])),
            Repr::Dihedral(d) => {
                Repr::Dihedral(d.mul(DihedralWord::generator(s), self.dihedral_m()))
            }
        };
        GroupElement::with_length(repr, length)
    }

    /// `s * w`.
    pub fn gen_mul(&self, s: usize, w: &GroupElement) -> GroupElement {
        self.check_index(s);
        let repr = match &w.repr {
            Repr::Matrix(m) => Repr::Matrix(m.mul_reflection_left(s, &self.cartan[s])),
            Repr::Dihedral(d) => {
                Repr::Dihedral(DihedralWord::generator(s).mul(*d, self.dihedral_m()))
            }
        };
        GroupElement::new(repr)
    }

    /// Product of the generators in `word`, left to right.
    pub fn evaluate(&self, word: &[usize]) -> GroupElement {
        word.iter()
            .fold(self.identity(), |acc, &s| self.mul_gen(&acc, s))
    }

    pub fn is_identity(&self, w: &GroupElement) -> bool {
        match &w.repr {
            Repr::Matrix(m) => m.is_identity(),
            Repr::Dihedral(d) => d.len == 0,
        }
    }

    /// `s` is a right descent iff `w` sends the simple root of `s` to a
    /// negative root.
    pub fn is_right_descent(&self, w: &GroupElement, s: usize) -> bool {
        self.check_index(s);
        match &w.repr {
            Repr::Matrix(m) => m.column_sign(s) < 0,
            Repr::Dihedral(d) => d.is_right_descent(s, self.dihedral_m()),
        }
    }

    pub fn right_descents(&self, w: &GroupElement) -> Vec<usize> {
        (0..self.rank())
            .filter(|&s| self.is_right_descent(w, s))
            .collect()
    }

    pub fn first_right_descent(&self, w: &GroupElement) -> Option<usize> {
        (0..self.rank()).find(|&s| self.is_right_descent(w, s))
    }

    pub fn length(&self, w: &GroupElement) -> usize {
        *w.length.get_or_init(|| self.reduced_word_uncached(w).len())
    }

    fn reduced_word_uncached(&self, w: &GroupElement) -> ReducedWord {
        let mut word = Vec::new();
        let mut cur = w.clone();
        while let Some(s) = self.first_right_descent(&cur) {
            word.push(s);
            cur = self.mul_gen(&cur, s);
        }
        word.reverse();
        ReducedWord(word)
    }

    /// Canonical reduced word: repeatedly strip the smallest right descent and
    /// prepend it.
    pub fn reduced_word(&self, w: &GroupElement) -> ReducedWord {
        let word = self.reduced_word_uncached(w);
        let _ = w.length.set(word.len());
        word
    }

    pub fn inverse(&self, w: &GroupElement) -> GroupElement {
        let mut word = self.reduced_word(w).0;
        word.reverse();
        let inv = self.evaluate(&word);
        let _ = inv.length.set(word.len());
        inv
    }

    /// Bruhat order via the lifting property: with `s` the smallest right
    /// descent of `v`, `u <= v` iff `us <= vs` (when `s` is a descent of `u`)
    /// or `u <= vs` (otherwise).
    pub fn bruhat_leq(&self, u: &GroupElement, v: &GroupElement) -> bool {
        let mut u = u.clone();
        let mut v = v.clone();
        loop {
            if self.length(&u) > self.length(&v) {
                return false;
            }
            if self.is_identity(&u) {
                return true;
            }
            let Some(s) = self.first_right_descent(&v) else {
                return false;
            };
            if self.is_right_descent(&u, s) {
                u = self.mul_gen(&u, s);
            }
            v = self.mul_gen(&v, s);
        }
    }

    /// Longest element of the finite parabolic subgroup generated by `subset`.
    pub fn longest_element(&self, subset: &[usize]) -> Result<GroupElement> {
        for &s in subset {
            if s >= self.rank() {
                return Err(Error::IndexOutOfRange(s));
            }
        }
        if classify_subset(&self.matrix, subset).is_none() {
            return Err(Error::InfiniteParabolic(subset.to_vec()));
        }
        let mut w = self.identity();
        while let Some(&s) = subset.iter().find(|&&s| !self.is_right_descent(&w, s)) {
            w = self.mul_gen(&w, s);
        }
        Ok(w)
    }

    /// Breadth-first closure under right multiplication, up to `max_length`
    /// (`None` = the whole group, which must be finite).
    pub fn enumerate(&self, max_length: Option<usize>, budget: usize) -> Result<Enumeration> {
        if max_length.is_none() && !self.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        let mut index: HashMap<GroupElement, usize> = HashMap::new();
        let mut elements = vec![self.identity()];
        let mut words = vec![ReducedWord::default()];
        index.insert(self.identity(), 0);
        let mut layer_starts = vec![0, 1];
        let mut complete = false;
        loop {
            let k = layer_starts.len() - 2;
            if Some(k) == max_length {
                break;
            }
            let (start, end) = (layer_starts[k], layer_starts[k + 1]);
            let mut next: IndexSet<GroupElement> = IndexSet::new();
            for i in start..end {
                for s in 0..self.rank() {
                    if !self.is_right_descent(&elements[i], s) {
                        let ws = self.mul_gen(&elements[i], s);
                        if !index.contains_key(&ws) {
                            next.insert(ws);
                        }
                    }
                }
                if elements.len() + next.len() > budget {
                    return Err(Error::Budget(budget));
                }
            }
            if next.is_empty() {
                complete = true;
                break;
            }
            for w in next {
                let s = self.first_right_descent(&w).expect("nonidentity has a descent");
                let parent = index[&self.mul_gen(&w, s)];
                let mut word = words[parent].clone();
                word.0.push(s);
                let _ = w.length.set(k + 1);
                index.insert(w.clone(), elements.len());
                elements.push(w);
                words.push(word);
            }
            layer_starts.push(elements.len());
        }
        if !complete {
            if let Some(max) = max_length {
                // The group is exhausted exactly when nothing lies beyond `max`.
                let top = layer_starts[max.min(layer_starts.len() - 2)];
                complete = elements[top..]
                    .iter()
                    .all(|w| (0..self.rank()).all(|s| self.is_right_descent(w, s)));
            }
        }
        Ok(Enumeration {
            elements,
            words,
            layer_starts,
            complete,
            index,
        })
    }

    /// Classes of generators conjugate in `W`: connected components of the
    /// Coxeter graph restricted to odd labels.
    pub fn generator_conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        for i in 0..n {
            for j in i + 1..n {
                if matches!(self.matrix.m(i, j), Some(m) if m % 2 == 1) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            let k = *slot.entry(r).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[k].push(i);
        }
        classes
    }

    /// All reflections `w s w^-1` of a finite group.
    pub fn reflections(&self, budget: usize) -> Result<Vec<GroupElement>> {
        let all = self.enumerate(None, budget)?;
        let mut set: IndexSet<GroupElement> = IndexSet::new();
        for (w, word) in all.elements.iter().zip(&all.words) {
            for s in 0..self.rank() {
                let mut t = self.mul_gen(w, s);
                for &x in word.0.iter().rev() {
                    t = self.mul_gen(&t, x);
                }
                set.insert(t);
            }
        }
        Ok(set.into_iter().collect())
    }

    /// Minimal number of reflections whose product is `w` (finite groups).
    pub fn absolute_length(&self, w: &GroupElement) -> Result<usize> {
        if !self.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        let reflections = self.reflections(DEFAULT_ELEMENT_BUDGET)?;
        let mut dist: HashMap<GroupElement, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        dist.insert(self.identity(), 0);
        queue.push_back(self.identity());
        while let Some(x) = queue.pop_front() {
            let d = dist[&x];
            if &x == w {
                return Ok(d);
            }
            for t in &reflections {
                let y = self.multiply(&x, t)?;
                if !dist.contains_key(&y) {
                    dist.insert(y.clone(), d + 1);
                    queue.push_back(y);
                }
            }
        }
        unreachable!("finite group is generated by its reflections")
    }

    /// `W x W` with all cross labels 2, together with the automorphism
    /// exchanging the two factors.
    pub fn square_with_swap(&self) -> (CoxeterSystem, Automorphism) {
        let n = self.rank();
        let square = CoxeterSystem::new(self.matrix.direct_sum(&self.matrix))
            .expect("direct sum of a valid system is valid");
        let perm: Vec<usize> = (0..2 * n).map(|i| (i + n) % (2 * n)).collect();
        (square, Automorphism::new(perm))
    }

    /// Renders `w` by its canonical reduced word.
    pub fn format_element(&self, w: &GroupElement) -> String {
        self.reduced_word(w).format(self.rank())
    }
}
