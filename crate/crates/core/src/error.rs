use thiserror::Error;

use crate::surface::SurfaceSignature;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("surface mismatch: expected {expected}, found {found}")]
    SurfaceMismatch {
        expected: SurfaceSignature,
        found: SurfaceSignature,
    },

    #[error("class has {found} coordinates but the surface has first Betti number {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("twist exponent must be nonzero")]
    ZeroExponent,

    #[error("operation requires exactly one boundary component, surface has {0}")]
    BoundaryNotOne(u32),

    #[error("surface genus {found} does not match the requested genus {expected}")]
    GenusMismatch { expected: u32, found: u32 },

    #[error("lower bound on scl of a twist requires closed genus at least 3, got {0}")]
    GenusTooSmall(i64),

    #[error("expected a {expected} bound, got a {found} bound")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("invalid C-bound model: {0}")]
    InvalidModel(String),

    #[error("twist letter class {0:?} is not listed in the certificate")]
    ClassNotInCertificate(Vec<i64>),

    #[error("derivation replay failed at {rule}: {reason}")]
    Replay { rule: &'static str, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
