use thiserror::Error;

use crate::hilbert::{Layout, Mode};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mode {mode} does not exist in the {layout} layout")]
    InvalidMode { mode: Mode, layout: Layout },

    #[error("mode pair must name two distinct modes, got ({0}, {0})")]
    DuplicateMode(Mode),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not unitary: max |U^dagger U - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("state is not normalized: sum |a|^2 = {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("cannot compose an empty gate sequence")]
    EmptySequence,

    #[error("{field} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        field: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("{field} must be finite, got {value}")]
    NotFinite { field: &'static str, value: f64 },

    #[error("closed-form probability {value} left [0, 1]")]
    ProbabilityOutOfRange { value: f64 },

    #[error("error extremum not at the basis states: E({delta}) = {value} outside [{min}, {max}]")]
    ExtremalityViolated {
        delta: f64,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("adaptive quadrature did not reach tolerance {tolerance:e} (estimate {estimate:e}) after {intervals} intervals")]
    QuadratureNotConverged {
        tolerance: f64,
        estimate: f64,
        intervals: usize,
    },

    #[error("unknown sweep axis `{0}`")]
    UnknownAxis(String),

    #[error("sweep axes `{0}` and `{1}` control the same gate parameter")]
    OverlappingAxes(String, String),

    #[error("grid resolution must be at least 2, got {0}")]
    InvalidResolution(usize),

    #[error("shot count must be at least 1")]
    NoShots,

    #[error("pulse must have at least one segment")]
    EmptyPulse,
}
