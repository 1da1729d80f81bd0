use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial in `t` with arbitrary-precision integer coefficients, stored
/// by increasing degree without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    pub fn one() -> Self {
        IntPolynomial::monomial(0)
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPolynomial { coeffs }
    }

    /// `1 + t^step + t^(2 step) + ... ` with `terms` terms.
    pub fn geometric(terms: usize, step: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); (terms.max(1) - 1) * step + 1];
        for k in 0..terms {
            coeffs[k * step] = BigInt::one();
        }
        IntPolynomial::new(coeffs)
    }

    /// `[d]_t = 1 + t + ... + t^(d-1)`.
    pub fn q_integer(d: usize) -> Self {
        IntPolynomial::geometric(d, 1)
    }

    /// `∏ [d_i]_t`, the length generating function of a finite Coxeter group
    /// with degrees `d_i`.
    pub fn from_degrees(degrees: &[u32]) -> Self {
        degrees
            .iter()
            .fold(IntPolynomial::one(), |acc, &d| &acc * &IntPolynomial::q_integer(d as usize))
    }

    /// `Σ counts[k] t^k`.
    pub fn from_counts(counts: &[usize]) -> Self {
        IntPolynomial::new(counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Coefficients read the same from both ends, after dropping the
    /// lowest-degree zeros.
    pub fn is_palindromic(&self) -> bool {
        let start = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let body = &self.coeffs[start..];
        body.iter().eq(body.iter().rev())
    }

    /// Truncation to degrees `≤ n`.
    pub fn truncate(&self, n: usize) -> Self {
        IntPolynomial::new(self.coeffs.iter().take(n + 1).cloned().collect())
    }

    /// Quotient and remainder by a nonzero divisor, provided every step of
    /// long division stays integral (always the case for a unit leading
    /// coefficient).
    pub fn div_rem(&self, divisor: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
        let Some(d) = divisor.degree() else {
            return Err(Error::Parse("division by the zero polynomial".into()));
        };
        let lead = &divisor.coeffs[d];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(d)];
        for k in (d..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            if !(&rem[k] % lead).is_zero() {
                return Err(Error::Parse(format!(
                    "long division by {divisor} leaves the integers"
                )));
            }
            let q = &rem[k] / lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k - d + i] -= &q * c;
            }
            quot[k - d] = q;
        }
        Ok((IntPolynomial::new(quot), IntPolynomial::new(rem)))
    }

    /// JSON coefficient array, lowest degree first.
    pub fn to_json(&self) -> String {
        let items: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", items.join(","))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("not a coefficient array: {text:?}")))?;
        if inner.trim().is_empty() {
            return Ok(IntPolynomial::zero());
        }
        inner
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(IntPolynomial::new)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (k, magnitude.is_one()) {
                (0, _) => write!(f, "{magnitude}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{magnitude}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{magnitude}*t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Parses the [`fmt::Display`] format, e.g. `1 + 2*t - t^3`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad polynomial {text:?}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if i > 0 && (ch == '+' || ch == '-') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut coeffs: Vec<BigInt> = Vec::new();
        for term in terms {
            let (negative, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            let (coeff, power) = match body.split_once('t') {
                None => (body, 0),
                Some((c, rest)) => {
                    let c = c.strip_suffix('*').unwrap_or(c);
                    let power = match rest {
                        "" => 1,
                        r => r.strip_prefix('^').and_then(|p| p.parse().ok()).ok_or_else(bad)?,
                    };
                    (if c.is_empty() { "1" } else { c }, power)
                }
            };
            let mut value: BigInt = coeff.parse().map_err(|_| bad())?;
            if negative {
                value = -value;
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigInt::zero());
            }
            coeffs[power] += value;
        }
        Ok(IntPolynomial::new(coeffs))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn text_format() {
        assert_eq!(poly(&[1, 2, 3]).to_string(), "1 + 2*t + 3*t^2");
        assert_eq!(poly(&[0, 1, 0, -1]).to_string(), "t - t^3");
        assert_eq!(poly(&[-2]).to_string(), "-2");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!("1 + 2*t + 3*t^2".parse::<IntPolynomial>().unwrap(), poly(&[1, 2, 3]));
        assert_eq!("t^2+t".parse::<IntPolynomial>().unwrap(), poly(&[0, 1, 1]));
        assert!("1 + x".parse::<IntPolynomial>().is_err());
    }

    #[test]
    fn json_format() {
        assert_eq!(poly(&[1, 0, 2]).to_json(), "[1,0,2]");
        assert_eq!(IntPolynomial::from_json(" [1, 0, 2, 0] ").unwrap(), poly(&[1, 0, 2]));
        assert_eq!(IntPolynomial::from_json("[]").unwrap(), IntPolynomial::zero());
        assert!(IntPolynomial::from_json("{}").is_err());
    }

    #[test]
    fn products_of_q_integers() {
        // type A2: degrees 2, 3
        assert_eq!(IntPolynomial::from_degrees(&[2, 3]), poly(&[1, 2, 2, 1]));
        assert_eq!(IntPolynomial::geometric(3, 2), poly(&[1, 0, 1, 0, 1]));
        assert!(poly(&[0, 1, 2, 1]).is_palindromic());
        assert!(!poly(&[1, 2]).is_palindromic());
        assert_eq!(poly(&[1, 2, 2, 1]).eval_at_one(), BigInt::from(6));
    }

    #[test]
    fn division() {
        let (q, r) = poly(&[1, 2, 2, 1]).div_rem(&poly(&[1, 1])).unwrap();
        assert_eq!((q, r), (poly(&[1, 1, 1]), IntPolynomial::zero()));
        let (q, r) = poly(&[3, 2, 1, 2]).div_rem(&poly(&[1, 2])).unwrap();
        assert_eq!((q, r), (poly(&[1, 0, 1]), poly(&[2])));
        assert!(poly(&[1]).div_rem(&poly(&[1, 2])).is_ok());
        assert!(poly(&[1, 2, 2, 1]).div_rem(&poly(&[1, 2])).is_err());
        assert!(poly(&[1]).div_rem(&IntPolynomial::zero()).is_err());
    }

    proptest! {
        #[test]
        fn text_and_json_round_trip(c in prop::collection::vec(-50i64..50, 0..8)) {
            let p = poly(&c);
            prop_assert_eq!(p.to_string().parse::<IntPolynomial>().unwrap(), p.clone());
            prop_assert_eq!(IntPolynomial::from_json(&p.to_json()).unwrap(), p);
        }

        #[test]
        fn division_identity(a in prop::collection::vec(-20i64..20, 0..8), b in prop::collection::vec(-20i64..20, 0..4)) {
            let mut b = b;
            b.push(1);
            let (a, b) = (poly(&a), poly(&b));
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.is_zero() || r.degree() < b.degree());
        }

        #[test]
        fn evaluation_is_multiplicative(a in prop::collection::vec(-20i64..20, 0..6), b in prop::collection::vec(-20i64..20, 0..6)) {
            let (a, b) = (poly(&a), poly(&b));
            prop_assert_eq!((&a * &b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
        }
    }
}
