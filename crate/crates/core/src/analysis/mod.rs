//! Readout error under imperfect gates.
//!
//! With gate parameters Θ = (θ1, θ2, ψ, φ) the charge readout assigns
//!
//! ```text
//! p_up   = sin²(θ1 − θ2) + A
//! p_down = cos²(θ1 − θ2) − A
//! A      = ½ sin2θ1 sin2θ2 (1 + cosψ cos(φ/2) + sinψ sin(φ/2) cosδ)
//! ```
//!
//! The measurement error `E = p_up − cos²(δ/2)` is affine in `cos δ`, which
//! gives a closed form for its absolute average over δ ∈ [0, π].

pub mod quadrature;
mod sweep;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

pub use sweep::{sweep_grid, AxisRange, AxisSpec, ErrorGrid, Panel, SweepAxis, DEFAULT_RESOLUTION};

use crate::error::{Error, Result};
use crate::protocol::ReadoutProbabilities;
use crate::EXACT_TOL;

/// Absolute tolerance handed to the adaptive quadrature for `∫|E| dδ`.
pub const QUADRATURE_TOL: f64 = 1e-10;

/// Grid used by the quadrature path to bracket sign changes of E.
const KINK_SCAN_POINTS: usize = 65;

/// Imperfection parameters of the two-dot sequence, radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateParams {
    /// Rotation angle of the first tunneling pulse.
    pub theta1: f64,
    /// Rotation angle of the second tunneling pulse.
    pub theta2: f64,
    /// Conditional phase picked up on dot 0.
    pub psi: f64,
    /// Spin rotation angle on dot 0.
    pub phi: f64,
}

impl GateParams {
    pub fn new(theta1: f64, theta2: f64, psi: f64, phi: f64) -> Self {
        Self {
            theta1,
            theta2,
            psi,
            phi,
        }
    }

    /// (π/4, π/4, π/2, π)
    pub fn ideal() -> Self {
        Self::new(FRAC_PI_4, FRAC_PI_4, FRAC_PI_2, PI)
    }

    pub fn validate(&self) -> Result<()> {
        for (field, value) in [
            ("theta1", self.theta1),
            ("theta2", self.theta2),
            ("psi", self.psi),
            ("phi", self.phi),
        ] {
            if !value.is_finite() {
                return Err(Error::NotFinite { field, value });
            }
        }
        Ok(())
    }
}

impl Default for GateParams {
    fn default() -> Self {
        Self::ideal()
    }
}

/// `E(δ) = offset + slope · cos δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorCoefficients {
    pub offset: f64,
    pub slope: f64,
}

impl ErrorCoefficients {
    pub fn new(params: &GateParams) -> Self {
        let coupling = (2.0 * params.theta1).sin() * (2.0 * params.theta2).sin();
        let (sin_psi, cos_psi) = params.psi.sin_cos();
        let (sin_half_phi, cos_half_phi) = (0.5 * params.phi).sin_cos();
        let leak = (params.theta1 - params.theta2).sin().powi(2);
        Self {
            offset: leak + 0.5 * coupling * (1.0 + cos_psi * cos_half_phi) - 0.5,
            slope: 0.5 * coupling * sin_psi * sin_half_phi - 0.5,
        }
    }

    pub fn at(&self, delta: f64) -> f64 {
        self.offset + self.slope * delta.cos()
    }

    /// `(1/π) ∫₀^π |offset + slope·cos δ| dδ`, exact.
    pub fn mean_abs(&self) -> f64 {
        let (c0, c1) = (self.offset, self.slope);
        if c0.abs() >= c1.abs() {
            // No sign change inside (0, π); ∫cos vanishes.
            return c0.abs();
        }
        let kink = (-c0 / c1).acos();
        let head = c0 * kink + c1 * kink.sin();
        let tail = c0 * PI - head;
        (head.abs() + tail.abs()) / PI
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !delta.is_finite() {
        return Err(Error::NotFinite {
            field: "delta",
            value: delta,
        });
    }
    if !(0.0..=PI).contains(&delta) {
        return Err(Error::OutOfRange {
            field: "delta",
            value: delta,
            min: 0.0,
            max: PI,
        });
    }
    Ok(())
}

fn closed_form_unchecked(params: &GateParams, delta: f64) -> (f64, f64) {
    let diff = params.theta1 - params.theta2;
    let coupling = (2.0 * params.theta1).sin() * (2.0 * params.theta2).sin();
    let a = 0.5
        * coupling
        * (1.0
            + params.psi.cos() * (0.5 * params.phi).cos()
            + params.psi.sin() * (0.5 * params.phi).sin() * delta.cos());
    (diff.sin().powi(2) + a, diff.cos().powi(2) - a)
}

/// Readout probabilities from the closed-form expressions.
///
/// Values outside `[−1e-12, 1 + 1e-12]` are reported as errors, never clamped.
pub fn probabilities_closed_form(params: &GateParams, delta: f64) -> Result<ReadoutProbabilities> {
    check_delta(delta)?;
    let (p_up, p_down) = closed_form_unchecked(params, delta);
    for value in [p_up, p_down] {
        if !(-EXACT_TOL..=1.0 + EXACT_TOL).contains(&value) {
            return Err(Error::ProbabilityOutOfRange { value });
        }
    }
    Ok(ReadoutProbabilities { p_up, p_down })
}

fn ideal_up(delta: f64) -> f64 {
    (0.5 * delta).cos().powi(2)
}

/// Signed error `p_up − p_up^ideal`.
pub fn measurement_error(params: &GateParams, delta: f64) -> Result<f64> {
    let p = probabilities_closed_form(params, delta)?;
    Ok(p.p_up - ideal_up(delta))
}

/// The same error written through the spin-down channel,
/// `p_down^ideal − p_down`.
pub fn measurement_error_down(params: &GateParams, delta: f64) -> Result<f64> {
    let p = probabilities_closed_form(params, delta)?;
    Ok((0.5 * delta).sin().powi(2) - p.p_down)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AveragingMethod {
    #[default]
    Analytic,
    Quadrature,
}

/// Mean of `|E|` over δ uniform on `[0, π]`.
pub fn avg_abs_error(params: &GateParams, method: AveragingMethod) -> Result<f64> {
    match method {
        AveragingMethod::Analytic => Ok(ErrorCoefficients::new(params).mean_abs()),
        AveragingMethod::Quadrature => {
            let signed = |delta: f64| {
                let (p_up, _) = closed_form_unchecked(params, delta);
                p_up - ideal_up(delta)
            };
            // |E| is kinked wherever E changes sign.
            let kinks = quadrature::sign_changes(signed, 0.0, PI, KINK_SCAN_POINTS);
            let r = quadrature::integrate_with_breakpoints(
                |delta| signed(delta).abs(),
                0.0,
                PI,
                &kinks,
                QUADRATURE_TOL,
                quadrature::DEFAULT_MAX_INTERVALS,
            )?;
            Ok(r.value / PI)
        }
    }
}

/// Extremes of E over input states, attained at the basis states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalError {
    pub min: f64,
    pub max: f64,
    pub argmin: f64,
    pub argmax: f64,
}

/// Number of δ samples used to confirm that E is bracketed by E(0) and E(π).
pub const EXTREMAL_CHECK_POINTS: usize = 101;

/// Returns E at δ = 0 (minimum) and δ = π (maximum), after checking on a
/// 101-point δ grid that no interior value escapes that bracket.
pub fn extremal_error(params: &GateParams) -> Result<ExtremalError> {
    let min = measurement_error(params, 0.0)?;
    let max = measurement_error(params, PI)?;
    let last = (EXTREMAL_CHECK_POINTS - 1) as f64;
    for k in 0..EXTREMAL_CHECK_POINTS {
        let delta = PI * k as f64 / last;
        let value = measurement_error(params, delta)?;
        if value < min - EXACT_TOL || value > max + EXACT_TOL {
            return Err(Error::ExtremalityViolated {
                delta,
                value,
                min,
                max,
            });
        }
    }
    Ok(ExtremalError {
        min,
        max,
        argmin: 0.0,
        argmax: PI,
    })
}
