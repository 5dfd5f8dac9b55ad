//! Alexander polynomials of fibred links from the monodromy's action on
//! the fibre's homology.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::action::word_action;
use crate::error::Result;
use crate::matrix::HomologyMatrix;
use crate::poly::IntegerPolynomial;
use crate::word::TwistWord;

/// What the value at `t = 1` allows the closed-up link to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    /// `|Δ(1)| = 1`.
    KnotCompatible,
    /// `Δ(1) = 0`.
    MultiComponentCompatible,
    Neither,
}

impl Classification {
    pub fn from_delta_one(delta_one: &BigInt) -> Self {
        if delta_one.is_zero() {
            Classification::MultiComponentCompatible
        } else if delta_one.abs().is_one() {
            Classification::KnotCompatible
        } else {
            Classification::Neither
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlexanderReport {
    /// `det(t id - φ_*)` exactly as computed.
    pub poly: IntegerPolynomial,
    #[serde(serialize_with = "crate::rational::serialize_int")]
    pub delta_one: BigInt,
    pub classification: Classification,
    /// `poly` multiplied by `-1` when `Δ(1) = -1`, otherwise `poly`.
    pub normalized: IntegerPolynomial,
    #[serde(skip)]
    pub action: HomologyMatrix,
}

pub fn alexander_report(w: &TwistWord) -> Result<AlexanderReport> {
    let action = word_action(w)?;
    let poly = action.characteristic_polynomial();
    let delta_one = poly.eval(&BigInt::one());
    let normalized = if delta_one == BigInt::from(-1) {
        poly.neg()
    } else {
        poly.clone()
    };
    Ok(AlexanderReport {
        classification: Classification::from_delta_one(&delta_one),
        poly,
        delta_one,
        normalized,
        action,
    })
}
