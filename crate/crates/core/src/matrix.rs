//! Exact integer matrices for the homological action.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::poly::IntegerPolynomial;
use crate::surface::{standard_form, SurfaceSignature};

/// Square integer matrix acting on `H_1` of a fixed surface, column
/// convention: `M x` is the image of the coordinate vector `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomologyMatrix {
    surface: SurfaceSignature,
    rows: Vec<Vec<BigInt>>,
}

impl HomologyMatrix {
    pub fn identity(surface: SurfaceSignature) -> Self {
        let n = surface.b1();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        Self { surface, rows }
    }

    /// Callers guarantee the shape is `b1 x b1`.
    pub(crate) fn from_rows(surface: SurfaceSignature, rows: Vec<Vec<BigInt>>) -> Self {
        debug_assert_eq!(rows.len(), surface.b1());
        debug_assert!(rows.iter().all(|r| r.len() == surface.b1()));
        Self { surface, rows }
    }

    pub fn surface(&self) -> SurfaceSignature {
        self.surface
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.surface)
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim()).map(|i| &self.rows[i][i]).sum()
    }

    /// `self * other`, i.e. `other` acts first.
    pub fn mul(&self, other: &HomologyMatrix) -> HomologyMatrix {
        let n = self.dim();
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for k in 0..n {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for (j, out) in row.iter_mut().enumerate() {
                    *out += a * &other.rows[k][j];
                }
            }
        }
        Self::from_rows(self.surface, rows)
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn apply_i64(&self, x: &[i64]) -> Vec<BigInt> {
        let x: Vec<BigInt> = x.iter().copied().map(BigInt::from).collect();
        self.apply(&x)
    }

    pub fn transpose(&self) -> HomologyMatrix {
        let n = self.dim();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| self.rows[j][i].clone()).collect())
            .collect();
        Self::from_rows(self.surface, rows)
    }

    /// `M^T J M == J` for the (possibly degenerate) intersection form.
    pub fn preserves_form(&self) -> bool {
        let j = standard_form(self.surface);
        let n = self.dim();
        let jm: Vec<Vec<BigInt>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        (0..n)
                            .map(|k| BigInt::from(j.entry(r, k)) * &self.rows[k][c])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        (0..n).all(|r| {
            (0..n).all(|c| {
                let v: BigInt = (0..n).map(|k| &self.rows[k][r] * &jm[k][c]).sum();
                v == BigInt::from(j.entry(r, c))
            })
        })
    }

    pub fn determinant(&self) -> BigInt {
        bareiss_determinant(self.rows.clone())
    }

    /// `det(t id - M)` via the Berkowitz recurrence, which uses only ring
    /// operations.
    pub fn characteristic_polynomial(&self) -> IntegerPolynomial {
        berkowitz(&self.rows)
    }
}

impl fmt::Display for HomologyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for HomologyMatrix {
    /// Rows of decimal strings so that large entries survive JSON readers
    /// that parse numbers as doubles.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        rows.serialize(serializer)
    }
}

/// Fraction-free Gaussian elimination. Every division is exact.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let (q, r) = v.div_rem(&prev);
                debug_assert!(r.is_zero());
                a[i][j] = q;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn berkowitz(a: &[Vec<BigInt>]) -> IntegerPolynomial {
    let n = a.len();
    // Coefficients of the leading principal block's characteristic
    // polynomial, highest degree first.
    let mut p = vec![BigInt::one()];
    for r in 0..n {
        // Block layout of the leading (r+1)x(r+1) submatrix:
        //   [ A_r  C ]
        //   [ R    a ]
        let a_rr = &a[r][r];
        let mut q = Vec::with_capacity(r + 2);
        q.push(BigInt::one());
        q.push(-a_rr);
        // v = A_r^k C for k = 0, 1, ...
        let mut v: Vec<BigInt> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let rv: BigInt = (0..r).map(|j| &a[r][j] * &v[j]).sum();
            q.push(-rv);
            v = (0..r)
                .map(|i| (0..r).map(|j| &a[i][j] * &v[j]).sum())
                .collect();
        }
        // Lower-triangular Toeplitz matrix with first column q, size (r+2)x(r+1).
        let next: Vec<BigInt> = (0..r + 2)
            .map(|i| {
                (0..=r.min(i))
                    .filter(|&j| i - j < q.len() && j < p.len())
                    .map(|j| &q[i - j] * &p[j])
                    .sum()
            })
            .collect();
        p = next;
    }
    p.reverse();
    IntegerPolynomial::new(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().copied().map(BigInt::from).collect())
            .collect()
    }

    #[test]
    fn bareiss_small_cases() {
        assert_eq!(bareiss_determinant(big(&[&[2, 3], &[1, 4]])), BigInt::from(5));
        assert_eq!(bareiss_determinant(big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            bareiss_determinant(big(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])),
            BigInt::zero()
        );
        assert_eq!(
            bareiss_determinant(big(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 5]])),
            // Cofactor expansion along row 2: -3 * (2*5 - 1*1)
            BigInt::from(-27)
        );
        assert_eq!(bareiss_determinant(Vec::new()), BigInt::one());
    }

    #[test]
    fn berkowitz_against_known_polynomials() {
        // [[2,1],[1,3]]: t^2 - 5t + 5
        assert_eq!(
            berkowitz(&big(&[&[2, 1], &[1, 3]])),
            IntegerPolynomial::from_i64(&[5, -5, 1])
        );
        // Companion of t^3 - 2t^2 + 3t - 4.
        assert_eq!(
            berkowitz(&big(&[&[0, 0, 4], &[1, 0, -3], &[0, 1, 2]])),
            IntegerPolynomial::from_i64(&[-4, 3, -2, 1])
        );
        assert_eq!(berkowitz(&[]), IntegerPolynomial::from_i64(&[1]));
    }

    #[test]
    fn berkowitz_matches_bareiss_pointwise() {
        let m = big(&[&[1, -2, 0, 3], &[4, 1, -1, 0], &[2, 2, 5, -3], &[0, 1, 1, -2]]);
        let p = berkowitz(&m);
        assert_eq!(p.degree(), Some(4));
        for t in -3..=5 {
            let t = BigInt::from(t);
            let shifted: Vec<Vec<BigInt>> = m
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, x)| if i == j { &t - x } else { -x })
                        .collect()
                })
                .collect();
            assert_eq!(p.eval(&t), bareiss_determinant(shifted));
        }
    }
}
