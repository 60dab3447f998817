//! Exact realization of the linear systems attached to a unicuspidal
//! rational plane curve: truncated series, order echelon, contact orders,
//! semigroup windows, dimension formulas, and the pencil/net bases.

pub mod curve;
pub mod echelon;
pub mod form;
pub mod probe;
pub mod series;

use thiserror::Error;

pub use curve::{multiplicity_sequence_from_param, LocalCurve, ParamMultiplicities, SemigroupWindow};
pub use form::{parse_rational, HomogeneousForm};
pub use probe::{map_degree_probe, ProbeConfig, ProbeReport};
pub use series::{Order, TruncatedSeries};

#[derive(Debug, Error)]
pub enum LinsysError {
    #[error("cannot parse `{0}` as an exact rational")]
    BadRational(String),
    #[error("exponent {exp:?} does not sum to the form degree {degree}")]
    ExponentDegreeMismatch {
        exp: (u32, u32, u32),
        degree: u32,
    },
    #[error("form degrees differ: {left} vs {right}")]
    FormDegreeMismatch { left: u32, right: u32 },
    #[error("series is not divisible by t^{power}")]
    NotDivisible { power: usize },
    #[error("series has no constant term to invert")]
    NotAUnit,
    #[error("truncation exhausted before the computation finished")]
    TruncationExhausted,
    #[error("truncation {have} too small; need more than {need}")]
    TruncationTooSmall { need: usize, have: usize },
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error(
        "kernel dimension check failed in form degree {form_degree}: expected {expected}, observed {got} (the input is not an irreducible curve of the stated degree with this parametrization)"
    )]
    KernelDimension {
        form_degree: u32,
        expected: usize,
        got: usize,
    },
    #[error("semigroup window size check failed: expected {expected}, observed {got}")]
    WindowSize { expected: usize, got: usize },
    #[error("a finite contact order {order} exceeds the degree bound {bound}")]
    ContactBeyondBound { order: usize, bound: usize },
    #[error("contact threshold {j} exceeds the maximum {max} for this form degree")]
    ContactThresholdTooLarge { j: usize, max: usize },
    #[error("form degree must be positive and at most {max} here (got {got})")]
    FormDegreeOutOfRange { got: u32, max: u32 },
    #[error("parametrization must have positive t-order in both coordinates")]
    NotAParametrization,
    #[error("no stable resultant after {0} resamples")]
    DegenerateTargets(usize),
}
