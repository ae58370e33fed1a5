//! Spin ⊗ mode Hilbert space: basis conventions, states, gates.

mod basis;
mod gates;
mod state;
mod unitary;

pub use basis::{Layout, Mode, Spin};
pub use gates::{rx_mode, rz_spin, u2_general, u2_ideal};
pub use state::{SpinInput, StateVector};
pub use unitary::{compose, Unitary};
