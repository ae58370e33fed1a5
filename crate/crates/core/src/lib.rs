//! Spin-to-charge readout of a single electron spin in coupled quantum dots.
//!
//! The crate models one particle with a two-level internal degree of freedom
//! ("spin") distributed over two or three spatial modes ("dots"). Gate
//! sequences entangle spin with position so that a charge measurement on a
//! single dot reveals the spin. On top of the state-vector core it provides
//! closed-form readout probabilities under imperfect gates, averaged error
//! surfaces, single-shot Monte Carlo and device-parameter calculators.

pub mod analysis;
pub mod cli;
pub mod device;
pub mod error;
pub mod hilbert;
pub mod montecarlo;
pub mod protocol;

pub use analysis::{AveragingMethod, ErrorGrid, GateParams};
pub use error::{Error, Result};
pub use hilbert::{compose, Layout, Mode, Spin, SpinInput, StateVector, Unitary};
pub use protocol::{ReadoutAmplitudes, ReadoutProbabilities};

/// Tolerance for exact-algebra checks (unitarity, normalization, identities).
pub const EXACT_TOL: f64 = 1e-12;
