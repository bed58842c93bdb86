//! Error–disturbance relations evaluated on a Heisenberg frame.
//!
//! Every relation is written in "L-quantity" form where possible: a
//! left-hand side built from ε_A, η_B and spreads that is bounded below by
//! `C_AB`. The sum-of-squares relation is additionally exposed in its native
//! form `ε² + η² ≥ rhs`, where the right-hand side depends on a witness state
//! orthogonal to the joint state.

mod classic;
mod equality;
mod product;
mod report;
mod witness;

pub use classic::{branciard_lhs, branciard_tight_lhs, ozawa_lhs, robertson_rhs, TightBranciard};
pub use equality::{eq21_rhs, eq21_rhs_with_basis, variance_sum_equality_check};
pub use product::{l_new2, l_new2_sampled, maccone_pati_bound, LNew2, ProductTerms};
pub use report::{bound_report, BoundReport, InequalityCheck, Relation};
pub use witness::{
    commutator_part, commutator_terms, l_new1, optimal_witness, sampled_witness,
    sampled_witness_from, thm1_rhs, witness_term, Thm1Bound, WitnessStrategy,
};

use thiserror::Error;

use crate::model::{HeisenbergFrame, ModelError};
use crate::qalg::{Complex64, QalgError};

/// Absolute slack tolerance for every inequality comparison.
pub const SLACK_TOL: f64 = 1e-9;
/// Denominators at or below this are treated as vanishing.
pub const DENOMINATOR_GUARD: f64 = 1e-12;
/// Explicit witnesses must be orthogonal to `|Ψ⟩` within this overlap.
pub const ORTHOGONALITY_TOL: f64 = 1e-8;
/// Sampled witnesses per bound unless configured otherwise.
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error(transparent)]
    Qalg(#[from] QalgError),

    #[error(transparent)]
    Model(#[from] ModelError),

    #[error("witness candidate collapsed onto the joint state")]
    ZeroVector,

    #[error("every sampled witness candidate was degenerate")]
    AllSamplesDegenerate,

    #[error("invalid witness strategy: {0}")]
    InvalidStrategy(String),

    #[error("witness is not orthogonal to the joint state (|overlap| = {overlap:.3e})")]
    NotOrthogonal { overlap: f64 },

    #[error("Heisenberg and Schrödinger witness projections disagree by {deviation:.3e}")]
    WitnessFormMismatch { deviation: f64 },

    #[error("zero variance: {0}")]
    DegenerateVariance(&'static str),

    #[error("denominator vanishes ({denominator:.3e}); the witness saturates the bound")]
    DenominatorVanishes { denominator: f64 },

    #[error("degenerate denominator: {0} is zero")]
    DegenerateDenominator(&'static str),
}

pub type Result<T> = std::result::Result<T, BoundsError>;

/// The `±` branch of a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// The sign `s` making `s·i·⟨[X,Y]⟩` nonnegative, given `⟨[X,Y]⟩`.
    /// A vanishing commutator resolves to `Plus`.
    pub fn for_commutator(expectation: Complex64) -> Sign {
        let value = (Complex64::i() * expectation).re;
        if value.abs() <= DENOMINATOR_GUARD || value >= 0.0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Sign chosen on `⟨ψ|[A,B]|ψ⟩`, as used by the sum-of-squares relation.
    pub fn theorem1(f: &HeisenbergFrame) -> Sign {
        Sign::for_commutator(f.system_commutator())
    }

    /// `s·i` as a complex factor.
    pub(crate) fn i_factor(self) -> Complex64 {
        Complex64::new(0.0, self.factor())
    }
}

/// A labelled scalar contribution to a bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub label: &'static str,
    pub value: Complex64,
}

impl Term {
    /// Real part; commutator terms are real up to round-off after the sign is applied.
    pub fn real(&self) -> f64 {
        debug_assert!(
            self.value.im.abs() <= 1e-9 * (1.0 + self.value.re.abs()),
            "{} has imaginary part {}",
            self.label,
            self.value.im
        );
        self.value.re
    }
}
