//! Dense univariate polynomials with arbitrary-precision integer
//! coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Polynomial in `t`, coefficients stored constant term first. The leading
/// coefficient is nonzero unless the polynomial is zero (empty storage).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().copied().map(BigInt::from).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// `(t - 1)^n`.
    pub fn unipotent(n: usize) -> Self {
        let mut out = Self::from_i64(&[1]);
        let linear = Self::from_i64(&[-1, 1]);
        for _ in 0..n {
            out = out.mul(&linear);
        }
        out
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `t^d p(1/t) = p(t)` with `d` the degree, i.e. the coefficient
    /// sequence is a palindrome.
    pub fn is_reciprocal(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }
}

impl fmt::Display for IntegerPolynomial {
    /// Descending degree, e.g. `t^2 - 3t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let show_coeff = k == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntegerPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_descending() {
        assert_eq!(IntegerPolynomial::from_i64(&[1, -1, 1]).to_string(), "t^2 - t + 1");
        assert_eq!(IntegerPolynomial::from_i64(&[1, -3, 1]).to_string(), "t^2 - 3t + 1");
        assert_eq!(IntegerPolynomial::from_i64(&[-2, 0, 0, -1]).to_string(), "-t^3 - 2");
        assert_eq!(IntegerPolynomial::from_i64(&[0, 5]).to_string(), "5t");
        assert_eq!(IntegerPolynomial::zero().to_string(), "0");
        assert_eq!(IntegerPolynomial::from_i64(&[1]).to_string(), "1");
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = IntegerPolynomial::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(IntegerPolynomial::from_i64(&[0, 0]).degree(), None);
    }

    #[test]
    fn unipotent_and_eval() {
        let p = IntegerPolynomial::unipotent(2);
        assert_eq!(p, IntegerPolynomial::from_i64(&[1, -2, 1]));
        assert_eq!(p.eval(&BigInt::from(1)), BigInt::zero());
        assert_eq!(p.eval(&BigInt::from(3)), BigInt::from(4));
        assert!(p.is_reciprocal());
        assert!(!IntegerPolynomial::from_i64(&[2, 1]).is_reciprocal());
    }
}
