//! Readout gate sequences.
//!
//! Two-dot sequence: quarter Rabi oscillation, conditional sign flip on dot 0,
//! quarter Rabi oscillation. It realizes `diag(iσx, −σz)`, sending spin up to
//! dot 1 and leaving spin down in dot 0.
//!
//! Three-dot sequence: the sign flip is replaced by full tunneling from dot 0
//! to dot 0' through a region that rotates the spin by `Rz(−π/2)`. Spin up
//! ends in dot 1, spin down in dot 0'.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64;

use crate::analysis::GateParams;
use crate::error::Result;
use crate::hilbert::{
    compose, rx_mode, rz_spin, u2_general, u2_ideal, Layout, Mode, Spin, SpinInput, StateVector,
    Unitary,
};

/// Output amplitudes `(f1|↑⟩ + f2|↓⟩)|0⟩ + (g1|↑⟩ + g2|↓⟩)|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadoutAmplitudes {
    pub f1: Complex64,
    pub f2: Complex64,
    pub g1: Complex64,
    pub g2: Complex64,
}

impl ReadoutAmplitudes {
    pub fn from_state(state: &StateVector) -> Result<Self> {
        Ok(Self {
            f1: state.amplitude(Spin::Up, Mode::Dot0)?,
            f2: state.amplitude(Spin::Down, Mode::Dot0)?,
            g1: state.amplitude(Spin::Up, Mode::Dot1)?,
            g2: state.amplitude(Spin::Down, Mode::Dot1)?,
        })
    }

    pub fn probabilities(&self) -> ReadoutProbabilities {
        ReadoutProbabilities {
            p_up: self.g1.norm_sqr() + self.g2.norm_sqr(),
            p_down: self.f1.norm_sqr() + self.f2.norm_sqr(),
        }
    }
}

/// Spin probabilities assigned by the charge readout: an electron in dot 1
/// counts as spin up, anywhere else as spin down.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadoutProbabilities {
    pub p_up: f64,
    pub p_down: f64,
}

/// Three-dot classification: dot 1 → up, dot 0' → down. Weight left in dot 0
/// is not assigned and flags a faulty sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeDotClassification {
    pub p_up: f64,
    pub p_down: f64,
    pub p_unassigned: f64,
}

impl ThreeDotClassification {
    pub fn from_state(state: &StateVector) -> Result<Self> {
        Ok(Self {
            p_up: state.occupancy(Mode::Dot1)?,
            p_down: state.occupancy(Mode::Dot0Prime)?,
            p_unassigned: state.occupancy(Mode::Dot0)?,
        })
    }
}

fn tunnel_01(theta: f64) -> Unitary {
    rx_mode(theta, (Mode::Dot0, Mode::Dot1), Layout::TwoDot).expect("two-dot modes are valid")
}

/// `U1 U2 U1` with ideal gates.
pub fn ideal_sequence() -> Unitary {
    let u1 = tunnel_01(FRAC_PI_4);
    compose(&[u1.clone(), u2_ideal(), u1]).expect("same layout")
}

/// `U3' U2' U1'`: tunneling by θ1, imperfect sign flip (ψ, φ), tunneling by θ2.
pub fn noisy_sequence(params: &GateParams) -> Unitary {
    compose(&[
        tunnel_01(params.theta1),
        u2_general(params.psi, params.phi),
        tunnel_01(params.theta2),
    ])
    .expect("same layout")
}

/// Runs the two-dot sequence on a spin prepared in dot 0.
pub fn run_readout(
    input: &SpinInput,
    params: &GateParams,
) -> (ReadoutAmplitudes, ReadoutProbabilities) {
    let out = output_state(input, params);
    let amps = ReadoutAmplitudes::from_state(&out).expect("two-dot state");
    (amps, amps.probabilities())
}

/// Two-dot output state `U'|Ψ_in⟩`.
pub fn output_state(input: &SpinInput, params: &GateParams) -> StateVector {
    let psi_in = StateVector::spin_in_dot0(Layout::TwoDot, input);
    noisy_sequence(params)
        .apply(&psi_in)
        .expect("two-dot state and gate")
}

/// The transit gate of the three-dot layout: full tunneling 0 ↔ 0' combined
/// with `Rz(−π/2)` on the spin while it crosses. The two factors commute.
pub fn three_dot_transit() -> Unitary {
    let layout = Layout::ThreeDot;
    compose(&[
        rx_mode(FRAC_PI_2, (Mode::Dot0, Mode::Dot0Prime), layout).expect("valid modes"),
        rz_spin(-FRAC_PI_2, Mode::Dot0, layout).expect("valid mode"),
        rz_spin(-FRAC_PI_2, Mode::Dot0Prime, layout).expect("valid mode"),
    ])
    .expect("same layout")
}

/// `Ũ3 Ũ2 U1` on the three-dot space.
pub fn three_dot_sequence() -> Unitary {
    let layout = Layout::ThreeDot;
    compose(&[
        rx_mode(FRAC_PI_4, (Mode::Dot0, Mode::Dot1), layout).expect("valid modes"),
        three_dot_transit(),
        rx_mode(FRAC_PI_4, (Mode::Dot0Prime, Mode::Dot1), layout).expect("valid modes"),
    ])
    .expect("same layout")
}

pub fn run_three_dot(input: &SpinInput) -> (StateVector, ThreeDotClassification) {
    let psi_in = StateVector::spin_in_dot0(Layout::ThreeDot, input);
    let out = three_dot_sequence().apply(&psi_in).expect("three-dot state");
    let class = ThreeDotClassification::from_state(&out).expect("three-dot state");
    (out, class)
}

/// Probability that a charge detector on `mode` finds the particle.
pub fn dot_occupancy(state: &StateVector, mode: Mode) -> Result<f64> {
    state.occupancy(mode)
}
