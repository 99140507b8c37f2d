//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by space, scheme, and diagnostic operations.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("NonFiniteCoefficient: coefficient at index {index} is NaN or infinite")]
    NonFiniteCoefficient { index: usize },

    #[error("DegreeExceedsHorizon: polynomial degree {degree} exceeds the space horizon {horizon}")]
    DegreeExceedsHorizon { degree: usize, horizon: usize },

    #[error("NotAHilbertSpace: {context} requires an inner product (Gram, H(b), or weighted p=2 space)")]
    NotAHilbertSpace { context: &'static str },

    #[error("NonpositiveWeight: weight at index {index} is {value} (all weights must be > 0)")]
    NonpositiveWeight { index: usize, value: f64 },

    #[error("NotHermitian: Gram entry ({row},{col}) differs from the conjugate of ({col},{row}) by {deviation}")]
    NotHermitian { row: usize, col: usize, deviation: f64 },

    #[error("NotPositiveDefinite: factorization pivot {pivot} at index {index} is not positive")]
    NotPositiveDefinite { index: usize, pivot: f64 },

    #[error("SingularGram: cached Gram factorization unusable at block size {size} (corrupted space data)")]
    SingularGram { size: usize },

    #[error("NotContractive: sampled |b| reaches {max_modulus} > 1 on the circle")]
    NotContractive { max_modulus: f64 },

    #[error("DegenerateSymbol: 1 - |b|^2 vanishes identically on the circle (b is inner-like)")]
    DegenerateSymbol,

    #[error("MateIdentityViolated: |a|^2 + |b|^2 deviates from 1 by {deviation} on the circle")]
    MateIdentityViolated { deviation: f64 },

    #[error("IllConditionedMate: Toeplitz condition estimate {estimate:.3e} exceeds 1e12 at working horizon {working_horizon}")]
    IllConditionedMate { estimate: f64, working_horizon: usize },

    #[error("MissingRow: triangular array has no row {row} (rows available: {rows})")]
    MissingRow { row: usize, rows: usize },

    #[error("HorizonExhausted: no degree <= {horizon} meets the residual target 1/{step} for the given sample")]
    HorizonExhausted { horizon: usize, step: usize },

    #[error("InvalidBound: norm bound M = {m} must be >= 1")]
    InvalidBound { m: f64 },

    #[error("EmptySample: dense sample must contain at least one function")]
    EmptySample,

    #[error("TailNotControlled: tail estimate {tail:.3e} exceeds 10% of the partial sum {partial:.3e} (horizon too short for r = {r})")]
    TailNotControlled { tail: f64, partial: f64, r: f64 },

    #[error("DivergentEvidence: membership partial sums keep growing (last increment {increment:.3e}); claimed radius looks inconsistent")]
    DivergentEvidence { increment: f64 },

    #[error("InsufficientQuadrature: {points} quadrature points provided, need at least {required} for n = {n}")]
    InsufficientQuadrature { points: usize, required: usize, n: usize },

    #[error("HorizonExceeded: construction needs degree {degree} but the maximum degree is {max_degree}")]
    HorizonExceeded { degree: usize, max_degree: usize },

    #[error("InvalidParameter: {message}")]
    InvalidParameter { message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
