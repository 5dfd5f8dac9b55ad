//! Dehn twists act on homology as transvections `x -> x + i(x, c) c`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::matrix::HomologyMatrix;
use crate::poly::IntegerPolynomial;
use crate::surface::{pair_coords, HomologyClass};
use crate::word::{TwistLetter, TwistWord};

/// Action of a single positive twist about `c`.
pub fn twist_action(c: &HomologyClass) -> HomologyMatrix {
    twist_power_action(c, 1)
}

/// Action of `T_c^e`. Since `i(c, c) = 0` the transvection is unipotent
/// and its powers are `x -> x + e i(x, c) c`.
pub fn twist_power_action(c: &HomologyClass, exponent: i64) -> HomologyMatrix {
    let surface = c.surface();
    let n = surface.b1();
    let genus = surface.genus as usize;
    // Row vector f with f . x = i(x, c).
    let f: Vec<i64> = (0..n)
        .map(|j| {
            let mut e_j = vec![0i64; n];
            e_j[j] = 1;
            pair_coords(genus, &e_j, c.coords())
        })
        .collect();
    let e = BigInt::from(exponent);
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let diag = if i == j { BigInt::one() } else { BigInt::zero() };
                    diag + &e * c.coords()[i] * f[j]
                })
                .collect()
        })
        .collect();
    HomologyMatrix::from_rows(surface, rows)
}

pub fn letter_action(letter: &TwistLetter) -> HomologyMatrix {
    twist_power_action(letter.curve(), letter.exponent())
}

/// `M_k ... M_1` for the word `l1 ... lk`.
pub fn word_action(w: &TwistWord) -> Result<HomologyMatrix> {
    for letter in w.letters() {
        w.surface().check_same(&letter.curve().surface())?;
    }
    Ok(w
        .letters()
        .iter()
        .fold(HomologyMatrix::identity(w.surface()), |acc, l| {
            letter_action(l).mul(&acc)
        }))
}

pub fn characteristic_polynomial(m: &HomologyMatrix) -> IntegerPolynomial {
    m.characteristic_polynomial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceSignature;

    fn rows(m: &HomologyMatrix) -> Vec<Vec<i64>> {
        m.rows()
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect()
    }

    #[test]
    fn twist_about_a1() {
        // a1 -> a1, b1 -> b1 + i(b1, a1) a1 = b1 - a1; columns are images.
        let s = SurfaceSignature::new(1, 1);
        let m = twist_action(&HomologyClass::a(s, 1).unwrap());
        assert_eq!(rows(&m), vec![vec![1, -1], vec![0, 1]]);
    }

    #[test]
    fn twist_about_b1() {
        // a1 -> a1 + i(a1, b1) b1 = a1 + b1, b1 -> b1.
        let s = SurfaceSignature::new(1, 1);
        let m = twist_action(&HomologyClass::b(s, 1).unwrap());
        assert_eq!(rows(&m), vec![vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn zero_and_boundary_classes_act_trivially() {
        let s = SurfaceSignature::new(2, 3);
        assert!(twist_action(&HomologyClass::zero(s)).is_identity());
        assert!(twist_action(&HomologyClass::d(s, 2).unwrap()).is_identity());
    }

    #[test]
    fn power_equals_repeated_product() {
        let s = SurfaceSignature::new(2, 1);
        let c = HomologyClass::new(s, vec![1, -2, 3, 1]).unwrap();
        let single = twist_action(&c);
        let mut acc = HomologyMatrix::identity(s);
        for _ in 0..5 {
            acc = single.mul(&acc);
        }
        assert_eq!(twist_power_action(&c, 5), acc);
        assert!(twist_power_action(&c, 5)
            .mul(&twist_power_action(&c, -5))
            .is_identity());
    }

    #[test]
    fn word_examples() {
        let s = SurfaceSignature::new(1, 1);
        let a1 = HomologyClass::a(s, 1).unwrap();
        let b1 = HomologyClass::b(s, 1).unwrap();
        assert!(word_action(&TwistWord::empty(s)).unwrap().is_identity());
        let w = TwistWord::from_pairs(s, [(a1.clone(), 1), (a1.clone(), -1)]).unwrap();
        assert!(word_action(&w).unwrap().is_identity());

        let trefoil = TwistWord::from_pairs(s, [(a1.clone(), 1), (b1.clone(), 1)]).unwrap();
        let m = word_action(&trefoil).unwrap();
        // M_b M_a = [[1,0],[1,1]] [[1,-1],[0,1]]
        assert_eq!(rows(&m), vec![vec![1, -1], vec![1, 0]]);
        assert_eq!(m.trace(), BigInt::from(1));
        assert_eq!(m.determinant(), BigInt::from(1));
    }

    #[test]
    fn first_letter_acts_first() {
        let s = SurfaceSignature::new(1, 1);
        let a1 = HomologyClass::a(s, 1).unwrap();
        let b1 = HomologyClass::b(s, 1).unwrap();
        let w = TwistWord::from_pairs(s, [(a1.clone(), 1), (b1.clone(), 1)]).unwrap();
        let expected = twist_action(&b1).mul(&twist_action(&a1));
        assert_eq!(word_action(&w).unwrap(), expected);
    }

    #[test]
    fn twist_fixes_its_curve() {
        let s = SurfaceSignature::new(3, 2);
        let c = HomologyClass::new(s, vec![2, -1, 0, 3, 1, 1, -4]).unwrap();
        let m = twist_power_action(&c, -3);
        let image = m.apply_i64(c.coords());
        let expected: Vec<BigInt> = c.coords().iter().copied().map(BigInt::from).collect();
        assert_eq!(image, expected);
    }
}
