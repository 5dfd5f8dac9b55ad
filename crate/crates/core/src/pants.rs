//! The pair of pants and the Stallings family `φ_n = T_a T_b^-1 T_c^n`.
//!
//! The boundary-fixing mapping class group of the pants is free abelian on
//! the three boundary twists, so everything here is exact arithmetic in
//! `Z^3`. Arc labels: `γ1` joins `a` and `b`, `γ2` joins `b` and `c`, `γ3`
//! joins `a` and `c`.

use std::ops::{Add, Neg};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::Result;
use crate::poly::IntegerPolynomial;
use crate::surface::{HomologyClass, SurfaceSignature};
use crate::word::TwistWord;

/// `T_a^p T_b^q T_c^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct PantsClass {
    pub p: i64,
    pub q: i64,
    pub r: i64,
}

impl PantsClass {
    pub const IDENTITY: PantsClass = PantsClass::new(0, 0, 0);

    pub const fn new(p: i64, q: i64, r: i64) -> Self {
        Self { p, q, r }
    }

    /// The twist words on the genus-0, 3-boundary surface realizing this
    /// class. `a` and `b` are the basis classes `d1`, `d2`; `c` is
    /// homologous to `-(d1 + d2)`.
    pub fn to_word(&self) -> TwistWord {
        let s = SurfaceSignature::pants();
        let a = HomologyClass::d(s, 1).expect("pants has d1");
        let b = HomologyClass::d(s, 2).expect("pants has d2");
        let c = HomologyClass::new(s, vec![-1, -1]).expect("rank 2");
        let pairs = [(a, self.p), (b, self.q), (c, self.r)]
            .into_iter()
            .filter(|(_, e)| *e != 0);
        TwistWord::from_pairs(s, pairs).expect("nonzero exponents on one surface")
    }
}

impl Add for PantsClass {
    type Output = PantsClass;

    fn add(self, rhs: Self) -> Self {
        PantsClass::new(self.p + rhs.p, self.q + rhs.q, self.r + rhs.r)
    }
}

impl Neg for PantsClass {
    type Output = PantsClass;

    fn neg(self) -> Self {
        PantsClass::new(-self.p, -self.q, -self.r)
    }
}

pub fn compose(u: PantsClass, v: PantsClass) -> PantsClass {
    u + v
}

/// Word length over `T_a^±, T_b^±, T_c^±`. Since the group is free abelian
/// on these generators this is the exact twist length.
pub fn pants_twist_length(w: PantsClass) -> u64 {
    w.p.unsigned_abs() + w.q.unsigned_abs() + w.r.unsigned_abs()
}

/// The monodromy `φ_n` of the fibre surface `Σ_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PantsFamilyMember {
    n: i64,
}

impl PantsFamilyMember {
    pub const fn new(n: i64) -> Self {
        Self { n }
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn class(&self) -> PantsClass {
        PantsClass::new(1, -1, self.n)
    }

    pub fn twist_length(&self) -> u64 {
        pants_twist_length(self.class())
    }
}

/// Composing with `T_c^delta`.
pub fn stallings_twist(m: PantsFamilyMember, delta: i64) -> PantsFamilyMember {
    PantsFamilyMember::new(m.n + delta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ArcCut {
    /// Signed full twists of the annulus left after cutting.
    pub twists: i64,
    pub is_hopf: bool,
}

impl ArcCut {
    fn new(twists: i64) -> Self {
        Self {
            twists,
            is_hopf: twists == 1 || twists == -1,
        }
    }
}

/// One entry per non-separating arc, in the order `γ1, γ2, γ3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CutReport {
    pub arcs: [ArcCut; 3],
}

impl CutReport {
    pub fn twists(&self) -> [i64; 3] {
        self.arcs.map(|a| a.twists)
    }

    pub fn any_hopf(&self) -> bool {
        self.arcs.iter().any(|a| a.is_hopf)
    }
}

/// Twists of the unknotted annuli obtained by cutting `Σ_n` along each arc.
pub fn cut_annulus_twists(n: i64) -> CutReport {
    CutReport {
        arcs: [ArcCut::new(0), ArcCut::new(n + 1), ArcCut::new(n - 1)],
    }
}

/// True when no arc deplumbs a Hopf band, so `Σ_n` is not a Hopf plumbing.
pub fn hopf_deplumbing_obstructed(n: i64) -> bool {
    !cut_annulus_twists(n).any_hopf()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PantsAlexander {
    pub poly: IntegerPolynomial,
    #[serde(serialize_with = "crate::rational::serialize_int")]
    pub delta_one: BigInt,
}

/// Boundary-parallel twists act trivially on the rank-2 homology, so the
/// answer is `(t - 1)^2` whatever the class.
pub fn pants_alexander(_w: PantsClass) -> PantsAlexander {
    PantsAlexander {
        poly: IntegerPolynomial::unipotent(2),
        delta_one: BigInt::from(0),
    }
}

/// Convenience: the homology-level report for a pants class through the
/// general machinery.
pub fn pants_alexander_via_homology(w: PantsClass) -> Result<PantsAlexander> {
    let report = crate::alexander::alexander_report(&w.to_word())?;
    Ok(PantsAlexander {
        poly: report.poly,
        delta_one: report.delta_one,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition() {
        let phi0 = PantsClass::new(1, -1, 0);
        assert_eq!(compose(phi0, PantsClass::new(0, 0, 5)), PantsClass::new(1, -1, 5));
        let u = PantsClass::new(3, -2, 7);
        assert_eq!(compose(u, -u), PantsClass::IDENTITY);
        for n in -5..=5 {
            assert_eq!(
                compose(phi0, PantsClass::new(0, 0, n)),
                PantsFamilyMember::new(n).class()
            );
        }
    }

    #[test]
    fn twist_lengths() {
        for n in 0..=20 {
            assert_eq!(PantsFamilyMember::new(n).twist_length(), n as u64 + 2);
        }
        assert_eq!(PantsFamilyMember::new(-4).twist_length(), 6);
        assert_eq!(pants_twist_length(PantsClass::IDENTITY), 0);
        assert_eq!(pants_twist_length(PantsClass::new(2, 3, -1)), 6);
    }

    #[test]
    fn stallings() {
        let m0 = PantsFamilyMember::new(0);
        assert_eq!(stallings_twist(m0, 5), PantsFamilyMember::new(5));
        assert_eq!(stallings_twist(PantsFamilyMember::new(5), -5), m0);
        assert_eq!(stallings_twist(m0, 9).class(), PantsClass::new(1, -1, 9));
    }

    #[test]
    fn cut_reports() {
        let r = cut_annulus_twists(0);
        assert_eq!(r.twists(), [0, 1, -1]);
        assert_eq!(r.arcs.map(|a| a.is_hopf), [false, true, true]);
        assert_eq!(cut_annulus_twists(3).twists(), [0, 4, 2]);
        assert!(!cut_annulus_twists(3).any_hopf());
        assert_eq!(cut_annulus_twists(-1).twists(), [0, 0, -2]);
        assert!(!cut_annulus_twists(-1).any_hopf());
    }

    #[test]
    fn obstruction_flags() {
        assert!(hopf_deplumbing_obstructed(5));
        assert!(!hopf_deplumbing_obstructed(0));
        assert!(!hopf_deplumbing_obstructed(2));
        assert!(!hopf_deplumbing_obstructed(-2));
        // The arc criterion alone also fires at |n| = 1.
        assert!(hopf_deplumbing_obstructed(1));
        assert!(hopf_deplumbing_obstructed(-1));
    }

    #[test]
    fn alexander_is_unipotent() {
        let w = PantsClass::new(4, -2, 11);
        let direct = pants_alexander(w);
        assert_eq!(direct.poly, IntegerPolynomial::from_i64(&[1, -2, 1]));
        assert_eq!(direct, pants_alexander_via_homology(w).unwrap());
        assert!(crate::action::word_action(&PantsClass::IDENTITY.to_word())
            .unwrap()
            .is_identity());
    }
}
