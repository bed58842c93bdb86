//! Dense complex linear algebra for small (d ≤ 64) operators and pure states.
//!
//! Everything here is immutable after construction. Attestations (Hermitian,
//! unitary, unit norm) are checked once at the boundary with the absolute
//! tolerances below and then carried by the type.

mod operator;
mod random;
mod state;

pub use operator::{commutator, dagger, expectation, tensor, variance, Operator};
pub use random::{haar_random_state, random_hermitian, random_unitary, Rng};
pub use state::{
    complete_basis, inner, normalize, orthonormal_complement_basis, project_orthogonal, PureState,
    Vector,
};

use thiserror::Error;

pub use num_complex::Complex64;

/// Tolerance for Hermitian/unitary/orthogonality attestations.
pub const ATTEST_TOL: f64 = 1e-9;
/// Negative variances above `-VARIANCE_CLAMP` are treated as round-off and clamped to zero.
pub const VARIANCE_CLAMP: f64 = 1e-12;
/// Vectors at or below this norm cannot be normalized.
pub const ZERO_NORM: f64 = 1e-12;
/// Gram–Schmidt drops candidate vectors whose residual falls below this norm.
pub const GRAM_SCHMIDT_SKIP: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QalgError {
    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("expected {expected} entries for a square matrix, got {found}")]
    NotSquare { expected: usize, found: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("operator is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("operator is not unitary (max deviation of U†U from I {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("vector norm {norm:.3e} is too small to normalize")]
    ZeroVector { norm: f64 },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
}

pub type Result<T> = std::result::Result<T, QalgError>;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
