use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::snf::sparse_invariant_factors;
use crate::error::{Error, Result};
use crate::poset::RankedPoset;

pub const DEFAULT_CHAIN_BUDGET: usize = 2_000_000;

/// A simplicial complex given by its faces, grouped by dimension; each face
/// is a strictly increasing vertex list. The empty face is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub faces: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Closes a list of facets under taking nonempty subsets.
    pub fn from_facets(facets: &[Vec<usize>]) -> Self {
        let mut by_dim: Vec<std::collections::BTreeSet<Vec<usize>>> = Vec::new();
        for facet in facets {
            let mut f = facet.clone();
            f.sort_unstable();
            f.dedup();
            let k = f.len();
            for mask in 1u64..1 << k {
                let face: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                let d = face.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize(d + 1, Default::default());
                }
                by_dim[d].insert(face);
            }
        }
        SimplicialComplex {
            faces: by_dim.into_iter().map(|s| s.into_iter().collect()).collect(),
        }
    }

    /// Number of faces of each dimension `0, 1, ...`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(|f| f.len()).collect()
    }

    pub fn dimension(&self) -> isize {
        self.faces.len() as isize - 1
    }

    /// `Σ_{d ≥ -1} (-1)^d f_d`, counting the empty face once.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        let mut chi = -1i64;
        for (d, f) in self.faces.iter().enumerate() {
            let f = f.len() as i64;
            chi += if d % 2 == 0 { f } else { -f };
        }
        chi
    }

    /// All faces including the empty one, in order of dimension.
    pub fn all_faces(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for layer in &self.faces {
            out.extend(layer.iter().cloned());
        }
        out
    }

    pub fn chain_complex(&self) -> ChainComplex {
        let mut boundaries = Vec::with_capacity(self.faces.len());
        let mut prev_index: HashMap<&[usize], usize> = HashMap::from([(&[][..], 0)]);
        for layer in &self.faces {
            let mut columns = Vec::with_capacity(layer.len());
            for face in layer {
                let mut col = Vec::with_capacity(face.len());
                for skip in 0..face.len() {
                    let facet: Vec<usize> = face
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &x)| x)
                        .collect();
                    let row = prev_index[facet.as_slice()];
                    col.push((row, if skip % 2 == 0 { 1 } else { -1 }));
                }
                columns.push(col);
            }
            boundaries.push(BoundaryMatrix {
                rows: prev_index.len(),
                columns,
            });
            prev_index = layer
                .iter()
                .enumerate()
                .map(|(i, f)| (f.as_slice(), i))
                .collect();
        }
        ChainComplex { boundaries }
    }
}

/// Boundary map by columns: column `j` lists `(row, coefficient)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub rows: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

/// Reduced simplicial chain complex; `boundaries[d]` maps `C_d → C_{d-1}`,
/// with `C_{-1} = Z` spanned by the empty face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    pub boundaries: Vec<BoundaryMatrix>,
}

impl ChainComplex {
    /// Rank of `C_d` for `d ≥ -1`.
    pub fn chain_rank(&self, d: isize) -> usize {
        if d == -1 {
            1
        } else {
            self.boundaries
                .get(d as usize)
                .map_or(0, |b| b.columns.len())
        }
    }

    /// Checks `∂_{d-1} ∘ ∂_d = 0`, reporting the first failing `d`.
    pub fn verify(&self) -> Result<()> {
        for d in 1..self.boundaries.len() {
            let lower = &self.boundaries[d - 1];
            for col in &self.boundaries[d].columns {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for &(mid, a) in col {
                    for &(low, b) in &lower.columns[mid] {
                        *acc.entry(low).or_insert(0) += a * b;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return Err(Error::NotAComplex(d as isize));
                }
            }
        }
        Ok(())
    }

    pub fn reduced_homology(&self) -> Result<HomologyResult> {
        self.verify()?;
        let factors: Vec<Vec<BigInt>> = self
            .boundaries
            .iter()
            .map(|b| sparse_invariant_factors(b.rows, &b.columns))
            .collect();
        let rank = |d: isize| -> usize {
            if d < 0 {
                0
            } else {
                factors.get(d as usize).map_or(0, |f| f.len())
            }
        };
        let top = self.boundaries.len() as isize - 1;
        let groups = (-1..=top.max(-1))
            .map(|d| {
                let betti = self.chain_rank(d) - rank(d) - rank(d + 1);
                let torsion = factors
                    .get((d + 1) as usize)
                    .map(|f| f.iter().filter(|x| !x.is_one()).cloned().collect())
                    .unwrap_or_default();
                HomologyGroup {
                    dim: d,
                    betti,
                    torsion,
                }
            })
            .collect();
        Ok(HomologyResult { groups })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub dim: isize,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.betti > 0 {
            parts.push(format!("Z^{}", self.betti));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            parts.push("0".to_string());
        }
        write!(f, "H~{} = {}", self.dim, parts.join(" + "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Sphere(isize),
    Acyclic,
    Other,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Sphere(d) => write!(f, "SPHERE({d})"),
            Classification::Acyclic => write!(f, "ACYCLIC"),
            Classification::Other => write!(f, "OTHER"),
        }
    }
}

/// Reduced integral homology in dimensions `-1, 0, ..., dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn group(&self, d: isize) -> Option<&HomologyGroup> {
        self.groups.iter().find(|g| g.dim == d)
    }

    pub fn betti(&self, d: isize) -> usize {
        self.group(d).map_or(0, |g| g.betti)
    }

    /// `Σ (-1)^d b_d`.
    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .map(|g| if g.dim.rem_euclid(2) == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum()
    }

    pub fn classify(&self) -> Classification {
        let nonzero: Vec<&HomologyGroup> = self.groups.iter().filter(|g| !g.is_zero()).collect();
        match nonzero.as_slice() {
            [] => Classification::Acyclic,
            [g] if g.betti == 1 && g.torsion.is_empty() => Classification::Sphere(g.dim),
            _ => Classification::Other,
        }
    }

    /// One line per dimension followed by the classification.
    pub fn report(&self) -> String {
        let mut out = String::new();
        for g in &self.groups {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out.push_str(&self.classify().to_string());
        out.push('\n');
        out
    }
}

/// Chains of the open interval `(u, v)` of a poset; vertices are poset
/// indices, and faces list them in index order.
#[derive(Debug, Clone)]
pub struct OrderComplex {
    pub vertices: Vec<usize>,
    pub complex: SimplicialComplex,
}

impl OrderComplex {
    pub fn new(p: &RankedPoset, u: usize, v: usize, chain_budget: usize) -> Result<Self> {
        if u == v || !p.leq(u, v) {
            return Err(Error::NotComparable(u, v));
        }
        let vertices = p.open_interval(u, v);
        let mut faces: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut count = 0usize;
        let mut stack: Vec<Vec<usize>> = vertices.iter().rev().map(|&x| vec![x]).collect();
        while let Some(chain) = stack.pop() {
            count += 1;
            if count > chain_budget {
                return Err(Error::ChainBudget(chain_budget));
            }
            let last = *chain.last().expect("chains are nonempty");
            for &w in vertices.iter().rev() {
                if w > last && p.leq(last, w) {
                    let mut next = chain.clone();
                    next.push(w);
                    stack.push(next);
                }
            }
            let d = chain.len() - 1;
            if faces.len() <= d {
                faces.resize(d + 1, Vec::new());
            }
            faces[d].push(chain);
        }
        for layer in &mut faces {
            layer.sort();
        }
        Ok(OrderComplex {
            vertices,
            complex: SimplicialComplex { faces },
        })
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Homology of `(u, v)` together with the chain counts it came from.
#[derive(Debug, Clone)]
pub struct IntervalHomology {
    pub f_vector: Vec<usize>,
    pub homology: HomologyResult,
    pub classification: Classification,
}

pub fn interval_homology(p: &RankedPoset, u: usize, v: usize, chain_budget: usize) -> Result<IntervalHomology> {
    let oc = OrderComplex::new(p, u, v, chain_budget)?;
    let homology = oc.complex.chain_complex().reduced_homology()?;
    Ok(IntervalHomology {
        f_vector: oc.complex.f_vector(),
        classification: homology.classify(),
        homology,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::PosetElement;

    fn poset(ranks: &[usize], rel: &[(usize, usize)]) -> RankedPoset {
        let elements = ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| PosetElement {
                sexpr: i.to_string(),
                word: String::new(),
                rank: r,
                length: r,
                source: None,
            })
            .collect();
        RankedPoset::build(elements, |u, v| rel.contains(&(u, v)), None).unwrap()
    }

    #[test]
    fn empty_and_point() {
        let empty = SimplicialComplex { faces: vec![] };
        let h = empty.chain_complex().reduced_homology().unwrap();
        assert_eq!(h.classify(), Classification::Sphere(-1));
        assert_eq!(h.report(), "H~-1 = Z^1\nSPHERE(-1)\n");
        let point = SimplicialComplex::from_facets(&[vec![0]]);
        let h = point.chain_complex().reduced_homology().unwrap();
        assert_eq!(h.classify(), Classification::Acyclic);
    }

    #[test]
    fn spheres() {
        let s0 = SimplicialComplex::from_facets(&[vec![0], vec![1]]);
        let h = s0.chain_complex().reduced_homology().unwrap();
        assert_eq!(h.classify(), Classification::Sphere(0));
        let s1 = SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]);
        let h = s1.chain_complex().reduced_homology().unwrap();
        assert_eq!(h.classify(), Classification::Sphere(1));
        assert_eq!(h.euler_characteristic(), s1.reduced_euler_characteristic());
        let s2 = SimplicialComplex::from_facets(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
        assert_eq!(
            s2.chain_complex().reduced_homology().unwrap().classify(),
            Classification::Sphere(2)
        );
    }

    #[test]
    fn projective_plane_has_torsion() {
        let facets = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let c = SimplicialComplex::from_facets(&facets.map(|f| f.to_vec()));
        let h = c.chain_complex().reduced_homology().unwrap();
        assert_eq!(h.group(1).unwrap().torsion, vec![BigInt::from(2)]);
        assert_eq!(h.betti(2), 0);
        assert_eq!(h.classify(), Classification::Other);
        assert_eq!(h.group(1).unwrap().to_string(), "H~1 = Z/2");
    }

    #[test]
    fn broken_complex_rejected() {
        let mut cc = SimplicialComplex::from_facets(&[vec![0, 1]]).chain_complex();
        cc.boundaries[1].columns[0][1].1 = 1;
        assert_eq!(cc.reduced_homology(), Err(Error::NotAComplex(1)));
    }

    #[test]
    fn order_complexes() {
        // bottom 0, three atoms, top 4
        let p = poset(
            &[0, 1, 1, 1, 2],
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 4), (2, 4), (3, 4)],
        );
        let oc = OrderComplex::new(&p, 0, 4, 100).unwrap();
        assert_eq!(oc.complex.f_vector(), vec![3]);
        assert!(OrderComplex::new(&p, 0, 1, 100).unwrap().is_empty());
        assert!(matches!(OrderComplex::new(&p, 1, 2, 100), Err(Error::NotComparable(1, 2))));
        let h = interval_homology(&p, 0, 4, 100).unwrap();
        assert_eq!(h.homology.betti(0), 2);
        assert_eq!(h.classification, Classification::Other);
        assert!(matches!(OrderComplex::new(&p, 0, 4, 2), Err(Error::ChainBudget(2))));
    }
}
