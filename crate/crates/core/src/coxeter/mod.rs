//! Coxeter systems and exact arithmetic on their elements.

mod dihedral;
mod element;
pub mod finite;
mod system;

pub use dihedral::DihedralWord;
pub use element::{format_indices, parse_indices, GroupElement, ReducedWord};
pub use finite::{FiniteType, IrreducibleType};
pub use system::{Backend, CoxeterSystem, Enumeration, DEFAULT_ELEMENT_BUDGET};

use crate::error::{Error, Result};

/// Symmetric table of the orders `m(s, s')`; `None` stands for infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    n: usize,
    entries: Vec<Option<u32>>,
}

impl CoxeterMatrix {
    /// Builds a matrix from rows in the file convention, where `0` encodes
    /// infinity.
    pub fn from_file_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedMatrix("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedMatrix(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                if rows[j][i] != x {
                    return Err(Error::MalformedMatrix(format!("not symmetric at ({i},{j})")));
                }
                if i == j && x != 1 {
                    return Err(Error::MalformedMatrix(format!("diagonal entry {i} is {x}")));
                }
                if i != j && x == 1 {
                    return Err(Error::MalformedMatrix(format!("off-diagonal 1 at ({i},{j})")));
                }
                entries.push(if x == 0 { None } else { Some(x) });
            }
        }
        Ok(CoxeterMatrix { n, entries })
    }

    /// Matrix of the given rank with every off-diagonal entry `2`, then
    /// overwritten by `edges` (`None` label = infinity).
    pub fn from_edges(n: usize, edges: &[(usize, usize, Option<u32>)]) -> Self {
        let mut entries = vec![Some(2); n * n];
        for i in 0..n {
            entries[i * n + i] = Some(1);
        }
        for &(i, j, m) in edges {
            entries[i * n + j] = m;
            entries[j * n + i] = m;
        }
        CoxeterMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn m(&self, i: usize, j: usize) -> Option<u32> {
        self.entries[i * self.n + j]
    }

    /// Rows in the file convention (`0` = infinity).
    pub fn to_file_rows(&self) -> Vec<Vec<u32>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.m(i, j).unwrap_or(0)).collect())
            .collect()
    }

    pub fn is_crystallographic(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| i == j || matches!(self.m(i, j), None | Some(2 | 3 | 4 | 6)))
        })
    }

    /// Block-diagonal sum with all cross labels `2`.
    pub fn direct_sum(&self, other: &CoxeterMatrix) -> CoxeterMatrix {
        let n = self.n + other.n;
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                edges.push((i, j, self.m(i, j)));
            }
        }
        for i in 0..other.n {
            for j in i + 1..other.n {
                edges.push((self.n + i, self.n + j, other.m(i, j)));
            }
        }
        CoxeterMatrix::from_edges(n, &edges)
    }
}
