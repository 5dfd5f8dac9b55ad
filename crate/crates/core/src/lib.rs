//! Exact computations with fibre-surface monodromies written as Dehn-twist
//! words.
//!
//! * [`surface`], [`word`], [`matrix`], [`action`], [`alexander`]: the
//!   homological action of a twist word and its characteristic (Alexander)
//!   polynomial.
//! * [`twist_length`]: certificates that fewer than `2g` twist curves cannot
//!   give a genus-`g` knot monodromy.
//! * [`pants`]: the pair of pants and the Stallings family `φ_n`.
//! * [`scl`]: stable-commutator-length bound derivations and lower bounds on
//!   stabilisation height.
//!
//! All arithmetic is exact (arbitrary-precision integers and rationals).

pub mod action;
pub mod alexander;
pub mod error;
pub mod matrix;
pub mod pants;
pub mod poly;
pub mod rational;
pub mod scl;
pub mod surface;
pub mod twist_length;
pub mod word;

pub use action::{characteristic_polynomial, twist_action, twist_power_action, word_action};
pub use alexander::{alexander_report, AlexanderReport, Classification};
pub use error::{Error, Result};
pub use matrix::HomologyMatrix;
pub use poly::IntegerPolynomial;
pub use surface::{pair, standard_form, BasisLabel, HomologyClass, IntersectionForm, SurfaceSignature};
pub use word::{TwistLetter, TwistWord};
