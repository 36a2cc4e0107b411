//! Exact noncommutative algebra over the reduced position and momentum
//! generators.
//!
//! Polynomials are kept in normal order (all 𝔵 left of all 𝔭) with
//! coefficients in `ℚ(i)(√2)`, so every commutator identity is decided by an
//! exact equality test. The module also builds the dispersion generators,
//! checks the printed commutator tables identity by identity, computes
//! structure constants, and re-derives the transformation law of the
//! generators under a linear canonical map.

pub mod closure;
pub mod field;
pub mod generators;
pub mod poly;
pub mod reduction;
pub mod span;
pub mod tables;
pub mod transform;

pub use closure::{closure_and_constants, BasisLabel, StructureConstants};
pub use field::{GaussianRational, Scalar};
pub use generators::{build_generator, build_ladder, GeneratorKind, LadderSign};
pub use poly::{
    anticommutator, commutator, normal_order, Algebra, Convention, Generator, Monomial,
    WeylPolynomial, WordPolynomial,
};
pub use reduction::{validate_reduction, ReductionReport};
pub use span::{Expansion, SpanBasis};
pub use tables::{verify_table, TableId, TableReport};
pub use transform::{transform_generators, AlgebraElement, RationalSymplectic};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeylError {
    #[error("operands use different metrics or commutator conventions")]
    ConventionMismatch,
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket [{lhs}, {rhs}] leaves the span: residual {residual}")]
    ClosureFailure {
        lhs: String,
        rhs: String,
        residual: String,
    },
    #[error("matrix is not symplectic: {0}")]
    NotSymplectic(String),
    #[error("target is not in the span: residual {residual}")]
    SpanFailure { residual: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Verdict of an exact identity check.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub holds: bool,
    /// `normal_order(lhs − rhs)`
    pub residual: WeylPolynomial,
}

pub fn verify_identity(
    lhs: &WeylPolynomial,
    rhs: &WeylPolynomial,
) -> Result<IdentityCheck, WeylError> {
    let residual = lhs.checked_sub(rhs)?;
    Ok(IdentityCheck {
        holds: residual.is_zero(),
        residual,
    })
}
