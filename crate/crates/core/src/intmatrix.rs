//! Square integer matrices with exact arithmetic.
//!
//! Entries live in `i64` while they fit and are promoted to `BigInt` on the
//! first overflow. The representation is canonical: a matrix is stored in the
//! big form only if some entry does not fit in `i64`, so derived equality and
//! hashing agree with equality of the underlying integer matrices.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Entries {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Entries,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut v = vec![0i64; n * n];
        for i in 0..n {
            v[i * n + i] = 1;
        }
        IntMatrix {
            n,
            entries: Entries::Small(v),
        }
    }

    /// Builds a matrix from row-major entries.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix {
            n,
            entries: Entries::Small(rows.iter().flatten().copied().collect()),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Whether some entry has outgrown `i64`.
    pub fn is_big(&self) -> bool {
        matches!(self.entries, Entries::Big(_))
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        match &self.entries {
            Entries::Small(v) => BigInt::from(v[i * self.n + j]),
            Entries::Big(v) => v[i * self.n + j].clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }

    fn to_big(&self) -> Vec<BigInt> {
        match &self.entries {
            Entries::Small(v) => v.iter().map(|&x| BigInt::from(x)).collect(),
            Entries::Big(v) => v.clone(),
        }
    }

    fn from_big(n: usize, v: Vec<BigInt>) -> Self {
        let small: Option<Vec<i64>> = v.iter().map(|x| x.to_i64()).collect();
        let entries = match small {
            Some(s) => Entries::Small(s),
            None => Entries::Big(v),
        };
        IntMatrix { n, entries }
    }

    /// Sign of the first nonzero entry of column `j` (`0` for a zero column).
    pub fn column_sign(&self, j: usize) -> i8 {
        let n = self.n;
        match &self.entries {
            Entries::Small(v) => (0..n)
                .map(|i| v[i * n + j])
                .find(|&x| x != 0)
                .map_or(0, |x| x.signum() as i8),
            Entries::Big(v) => (0..n)
                .map(|i| &v[i * n + j])
                .find(|x| !x.is_zero())
                .map_or(0, |x| if x.is_negative() { -1 } else { 1 }),
        }
    }

    /// `self * g` where `g` is the simple reflection whose action on the
    /// basis is `e_j -> e_j - a[j] e_i` (`a` is row `i` of the Cartan matrix).
    pub fn mul_reflection_right(&self, i: usize, a: &[i64]) -> Self {
        let n = self.n;
        if let Entries::Small(v) = &self.entries {
            let mut out = v.clone();
            let ok = (|| {
                for j in 0..n {
                    if j == i || a[j] == 0 {
                        continue;
                    }
                    for r in 0..n {
                        let t = v[r * n + i].checked_mul(a[j])?;
                        out[r * n + j] = v[r * n + j].checked_sub(t)?;
                    }
                }
                for r in 0..n {
                    out[r * n + i] = v[r * n + i].checked_neg()?;
                }
                Some(())
            })();
            if ok.is_some() {
                return IntMatrix {
                    n,
                    entries: Entries::Small(out),
                };
            }
        }
        let v = self.to_big();
        let mut out = v.clone();
        for j in 0..n {
            if j == i || a[j] == 0 {
                continue;
            }
            for r in 0..n {
                out[r * n + j] = &v[r * n + j] - &v[r * n + i] * a[j];
            }
        }
        for r in 0..n {
            out[r * n + i] = -&v[r * n + i];
        }
        IntMatrix::from_big(n, out)
    }

    /// `g * self` for the simple reflection described in
    /// [`IntMatrix::mul_reflection_right`]. Only row `i` changes.
    pub fn mul_reflection_left(&self, i: usize, a: &[i64]) -> Self {
        let n = self.n;
        if let Entries::Small(v) = &self.entries {
            let mut out = v.clone();
            let ok = (|| {
                for c in 0..n {
                    let mut acc = v[i * n + c].checked_neg()?;
                    for k in 0..n {
                        if k != i && a[k] != 0 {
                            acc = acc.checked_sub(a[k].checked_mul(v[k * n + c])?)?;
                        }
                    }
                    out[i * n + c] = acc;
                }
                Some(())
            })();
            if ok.is_some() {
                return IntMatrix {
                    n,
                    entries: Entries::Small(out),
                };
            }
        }
        let v = self.to_big();
        let mut out = v.clone();
        for c in 0..n {
            let mut acc = -&v[i * n + c];
            for k in 0..n {
                if k != i && a[k] != 0 {
                    acc -= &v[k * n + c] * a[k];
                }
            }
            out[i * n + c] = acc;
        }
        IntMatrix::from_big(n, out)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        if let (Entries::Small(a), Entries::Small(b)) = (&self.entries, &other.entries) {
            let mut out = vec![0i64; n * n];
            let ok = (|| {
                for i in 0..n {
                    for k in 0..n {
                        let x = a[i * n + k];
                        if x == 0 {
                            continue;
                        }
                        for j in 0..n {
                            let t = x.checked_mul(b[k * n + j])?;
                            out[i * n + j] = out[i * n + j].checked_add(t)?;
                        }
                    }
                }
                Some(())
            })();
            if ok.is_some() {
                return IntMatrix {
                    n,
                    entries: Entries::Small(out),
                };
            }
        }
        let a = self.to_big();
        let b = other.to_big();
        let mut out = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let x = &a[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += x * &b[k * n + j];
                }
            }
        }
        IntMatrix::from_big(n, out)
    }

    /// The matrix `P M P^-1` for the permutation matrix sending `e_j` to
    /// `e_{perm[j]}`.
    pub fn permute(&self, perm: &[usize]) -> IntMatrix {
        let n = self.n;
        match &self.entries {
            Entries::Small(v) => {
                let mut out = vec![0i64; n * n];
                for i in 0..n {
                    for j in 0..n {
                        out[perm[i] * n + perm[j]] = v[i * n + j];
                    }
                }
                IntMatrix {
                    n,
                    entries: Entries::Small(out),
                }
            }
            Entries::Big(v) => {
                let mut out = vec![BigInt::zero(); n * n];
                for i in 0..n {
                    for j in 0..n {
                        out[perm[i] * n + perm[j]] = v[i * n + j].clone();
                    }
                }
                IntMatrix::from_big(n, out)
            }
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j)).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = t / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}
