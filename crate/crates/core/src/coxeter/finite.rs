//! Recognition of finite Coxeter groups from their Coxeter matrix.

use std::fmt;

use super::CoxeterMatrix;

/// A connected finite Coxeter graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IrreducibleType {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H(usize),
    I2(u32),
}

impl IrreducibleType {
    /// Degrees of the basic invariants; `|W| = prod d_i` and
    /// `Poin(W;t) = prod [d_i]_t`.
    pub fn degrees(self) -> Vec<u32> {
        match self {
            IrreducibleType::A(n) => (2..=n as u32 + 1).collect(),
            IrreducibleType::B(n) => (1..=n as u32).map(|i| 2 * i).collect(),
            IrreducibleType::D(n) => {
                let mut d: Vec<u32> = (1..n as u32).map(|i| 2 * i).collect();
                d.push(n as u32);
                d.sort_unstable();
                d
            }
            IrreducibleType::E(6) => vec![2, 5, 6, 8, 9, 12],
            IrreducibleType::E(7) => vec![2, 6, 8, 10, 12, 14, 18],
            IrreducibleType::E(_) => vec![2, 8, 12, 14, 18, 20, 24, 30],
            IrreducibleType::F4 => vec![2, 6, 8, 12],
            IrreducibleType::H(3) => vec![2, 6, 10],
            IrreducibleType::H(_) => vec![2, 12, 20, 30],
            IrreducibleType::I2(m) => vec![2, m],
        }
    }

    pub fn rank(self) -> usize {
        match self {
            IrreducibleType::A(n)
            | IrreducibleType::B(n)
            | IrreducibleType::D(n)
            | IrreducibleType::E(n)
            | IrreducibleType::H(n) => n,
            IrreducibleType::F4 => 4,
            IrreducibleType::I2(_) => 2,
        }
    }
}

impl fmt::Display for IrreducibleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrreducibleType::A(n) => write!(f, "A{n}"),
            IrreducibleType::B(n) => write!(f, "B{n}"),
            IrreducibleType::D(n) => write!(f, "D{n}"),
            IrreducibleType::E(n) => write!(f, "E{n}"),
            IrreducibleType::F4 => write!(f, "F4"),
            IrreducibleType::H(n) => write!(f, "H{n}"),
            IrreducibleType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// Product of irreducible finite types, one per connected component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteType {
    pub components: Vec<IrreducibleType>,
}

impl FiniteType {
    pub fn degrees(&self) -> Vec<u32> {
        self.components.iter().flat_map(|c| c.degrees()).collect()
    }

    /// Group order as the product of the degrees.
    pub fn order(&self) -> u128 {
        self.degrees().iter().map(|&d| d as u128).product()
    }

    /// Length of the longest element, the number of reflections.
    pub fn longest_length(&self) -> usize {
        self.degrees().iter().map(|&d| d as usize - 1).sum()
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Classifies the parabolic subsystem on `subset`; `None` if it is infinite.
pub fn classify_subset(matrix: &CoxeterMatrix, subset: &[usize]) -> Option<FiniteType> {
    let mut seen = vec![false; matrix.size()];
    let mut components = Vec::new();
    for &start in subset {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            for &y in subset {
                if !seen[y] && matrix.m(x, y) != Some(2) {
                    seen[y] = true;
                    comp.push(y);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        components.push(classify_connected(matrix, &comp)?);
    }
    Some(FiniteType { components })
}

fn classify_connected(matrix: &CoxeterMatrix, nodes: &[usize]) -> Option<IrreducibleType> {
    let k = nodes.len();
    if k == 1 {
        return Some(IrreducibleType::A(1));
    }
    let mut edges = Vec::new();
    for (a, &x) in nodes.iter().enumerate() {
        for (b, &y) in nodes.iter().enumerate().skip(a + 1) {
            match matrix.m(x, y) {
                Some(2) => {}
                Some(m) => edges.push((a, b, m)),
                None => return None,
            }
        }
    }
    if k == 2 {
        return Some(match edges[0].2 {
            3 => IrreducibleType::A(2),
            4 => IrreducibleType::B(2),
            m => IrreducibleType::I2(m),
        });
    }
    // Connected with k - 1 edges means a tree.
    if edges.len() != k - 1 {
        return None;
    }
    let mut degree = vec![0usize; k];
    for &(a, b, _) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    let heavy: Vec<(usize, usize, u32)> = edges.iter().copied().filter(|e| e.2 > 3).collect();
    let branch: Vec<usize> = (0..k).filter(|&v| degree[v] >= 3).collect();
    let is_path = branch.is_empty();

    match heavy.as_slice() {
        [] if is_path => Some(IrreducibleType::A(k)),
        [] => {
            if branch.len() != 1 || degree[branch[0]] != 3 {
                return None;
            }
            let mut arms = arm_lengths(&edges, k, branch[0]);
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, c] => Some(IrreducibleType::D(c + 3)),
                [1, 2, 2] => Some(IrreducibleType::E(6)),
                [1, 2, 3] => Some(IrreducibleType::E(7)),
                [1, 2, 4] => Some(IrreducibleType::E(8)),
                _ => None,
            }
        }
        [(a, b, label)] if is_path => {
            let at_end = degree[*a] == 1 || degree[*b] == 1;
            match (label, at_end, k) {
                (4, true, _) => Some(IrreducibleType::B(k)),
                (4, false, 4) => Some(IrreducibleType::F4),
                (5, true, 3) | (5, true, 4) => Some(IrreducibleType::H(k)),
                _ => None,
            }
        }
        _ => None,
    }
}

fn arm_lengths(edges: &[(usize, usize, u32)], k: usize, center: usize) -> Vec<usize> {
    let mut adj = vec![Vec::new(); k];
    for &(a, b, _) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj[center]
        .iter()
        .map(|&first| {
            let (mut prev, mut cur, mut len) = (center, first, 1);
            while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
                prev = cur;
                cur = next;
                len += 1;
            }
            len
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn ty(name: &str) -> Option<String> {
        let spec = presets::resolve_group(name).unwrap();
        spec.system.finite_type().map(|t| t.to_string())
    }

    #[test]
    fn recognizes_presets() {
        assert_eq!(ty("A5").as_deref(), Some("A5"));
        assert_eq!(ty("B3").as_deref(), Some("B3"));
        assert_eq!(ty("D4").as_deref(), Some("D4"));
        assert_eq!(ty("D5").as_deref(), Some("D5"));
        assert_eq!(ty("E6").as_deref(), Some("E6"));
        assert_eq!(ty("F4").as_deref(), Some("F4"));
        assert_eq!(ty("I2(5)").as_deref(), Some("I2(5)"));
        assert_eq!(ty("square(A2)").as_deref(), Some("A2xA2"));
        assert_eq!(ty("affineA2"), None);
    }

    #[test]
    fn orders_from_degrees() {
        let order = |t: IrreducibleType| FiniteType { components: vec![t] }.order();
        assert_eq!(order(IrreducibleType::A(5)), 720);
        assert_eq!(order(IrreducibleType::D(4)), 192);
        assert_eq!(order(IrreducibleType::E(6)), 51840);
        assert_eq!(order(IrreducibleType::F4), 1152);
        assert_eq!(order(IrreducibleType::B(3)), 48);
    }

    #[test]
    fn rejects_cycles_and_bad_trees() {
        // Affine D4: center with four arms.
        let mut rows = vec![vec![2u32; 5]; 5];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        for leaf in 1..5 {
            rows[0][leaf] = 3;
            rows[leaf][0] = 3;
        }
        let m = CoxeterMatrix::from_file_rows(&rows).unwrap();
        assert_eq!(classify_subset(&m, &[0, 1, 2, 3, 4]), None);
        assert!(classify_subset(&m, &[0, 1, 2, 3]).is_some());
    }
}
