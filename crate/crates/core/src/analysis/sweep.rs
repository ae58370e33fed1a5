//! Two-parameter sweeps of the averaged error Ē.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{avg_abs_error, AveragingMethod, GateParams};
use crate::error::{Error, Result};

pub const DEFAULT_RESOLUTION: usize = 101;

/// A swept quantity. `Theta` drives θ1 = θ2 together; `PsiLocked` drives ψ
/// with φ = 2ψ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum SweepAxis {
    Theta1,
    Theta2,
    Psi,
    Phi,
    Theta,
    PsiLocked,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Param {
    Theta1,
    Theta2,
    Psi,
    Phi,
}

impl SweepAxis {
    pub const ALL: [SweepAxis; 6] = [
        SweepAxis::Theta1,
        SweepAxis::Theta2,
        SweepAxis::Psi,
        SweepAxis::Phi,
        SweepAxis::Theta,
        SweepAxis::PsiLocked,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Theta1 => "theta1",
            SweepAxis::Theta2 => "theta2",
            SweepAxis::Psi => "psi",
            SweepAxis::Phi => "phi",
            SweepAxis::Theta => "theta",
            SweepAxis::PsiLocked => "psi-locked",
        }
    }

    fn params(self) -> &'static [Param] {
        match self {
            SweepAxis::Theta1 => &[Param::Theta1],
            SweepAxis::Theta2 => &[Param::Theta2],
            SweepAxis::Psi => &[Param::Psi],
            SweepAxis::Phi => &[Param::Phi],
            SweepAxis::Theta => &[Param::Theta1, Param::Theta2],
            SweepAxis::PsiLocked => &[Param::Psi, Param::Phi],
        }
    }

    pub fn overlaps(self, other: SweepAxis) -> bool {
        self.params().iter().any(|p| other.params().contains(p))
    }

    /// Range used when the caller does not give one.
    pub fn default_range(self) -> (f64, f64) {
        match self {
            SweepAxis::Theta1 | SweepAxis::Theta2 | SweepAxis::Theta => (0.0, FRAC_PI_2),
            SweepAxis::Psi | SweepAxis::Phi | SweepAxis::PsiLocked => (0.0, TAU),
        }
    }

    pub fn set(self, params: &mut GateParams, value: f64) {
        match self {
            SweepAxis::Theta1 => params.theta1 = value,
            SweepAxis::Theta2 => params.theta2 = value,
            SweepAxis::Psi => params.psi = value,
            SweepAxis::Phi => params.phi = value,
            SweepAxis::Theta => {
                params.theta1 = value;
                params.theta2 = value;
            }
            SweepAxis::PsiLocked => {
                params.psi = value;
                params.phi = 2.0 * value;
            }
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SweepAxis::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::UnknownAxis(s.to_string()))
    }
}

impl From<SweepAxis> for String {
    fn from(a: SweepAxis) -> String {
        a.name().to_string()
    }
}

impl TryFrom<String> for SweepAxis {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Requested extent of one axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisRange {
    pub axis: SweepAxis,
    pub min: f64,
    pub max: f64,
}

impl AxisRange {
    pub fn new(axis: SweepAxis, min: f64, max: f64) -> Self {
        Self { axis, min, max }
    }

    pub fn with_default_range(axis: SweepAxis) -> Self {
        let (min, max) = axis.default_range();
        Self { axis, min, max }
    }
}

/// Axis as realized in a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisSpec {
    pub name: SweepAxis,
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl AxisSpec {
    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            return self.max;
        }
        self.min + (self.max - self.min) * i as f64 / (self.points - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.value(i)).collect()
    }
}

/// Ē sampled on a rectangular grid, row-major with axis1 slowest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorGrid {
    pub axis1: AxisSpec,
    pub axis2: AxisSpec,
    pub fixed: GateParams,
    pub values: Vec<f64>,
}

impl ErrorGrid {
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.axis2.points + j]
    }

    /// `(axis1 value, axis2 value, Ē)` in storage order.
    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let n2 = self.axis2.points;
        self.values
            .iter()
            .enumerate()
            .map(move |(k, &e)| (self.axis1.value(k / n2), self.axis2.value(k % n2), e))
    }

    /// Gate parameters at grid node `(i, j)`.
    pub fn params_at(&self, i: usize, j: usize) -> GateParams {
        node_params(&self.fixed, &self.axis1, &self.axis2, i, j)
    }
}

fn node_params(fixed: &GateParams, a1: &AxisSpec, a2: &AxisSpec, i: usize, j: usize) -> GateParams {
    let mut p = *fixed;
    a1.name.set(&mut p, a1.value(i));
    a2.name.set(&mut p, a2.value(j));
    p
}

/// Evaluates Ē at every node. Nodes are computed in parallel; the output
/// order is fixed.
pub fn sweep_grid(
    axis1: AxisRange,
    axis2: AxisRange,
    fixed: &GateParams,
    resolution: usize,
) -> Result<ErrorGrid> {
    if resolution < 2 {
        return Err(Error::InvalidResolution(resolution));
    }
    if axis1.axis.overlaps(axis2.axis) {
        return Err(Error::OverlappingAxes(
            axis1.axis.name().into(),
            axis2.axis.name().into(),
        ));
    }
    for (field, value) in [
        ("range1 min", axis1.min),
        ("range1 max", axis1.max),
        ("range2 min", axis2.min),
        ("range2 max", axis2.max),
    ] {
        if !value.is_finite() {
            return Err(Error::NotFinite { field, value });
        }
    }
    fixed.validate()?;

    let spec = |r: AxisRange| AxisSpec {
        name: r.axis,
        min: r.min,
        max: r.max,
        points: resolution,
    };
    let (a1, a2) = (spec(axis1), spec(axis2));
    let values = (0..resolution * resolution)
        .into_par_iter()
        .map(|k| {
            let p = node_params(fixed, &a1, &a2, k / resolution, k % resolution);
            avg_abs_error(&p, AveragingMethod::Analytic)
        })
        .collect::<Result<Vec<f64>>>()?;
    debug_assert!(values.iter().all(|v| (0.0..=1.0).contains(v)));
    Ok(ErrorGrid {
        axis1: a1,
        axis2: a2,
        fixed: *fixed,
        values,
    })
}

/// The three standard slices of Ē.
///
/// * `A`: Ē(θ1, θ2) at ψ = π/2, φ = π
/// * `B`: Ē(ψ, φ) at θ1 = θ2 = π/4
/// * `C`: Ē(θ, ψ) with θ1 = θ2 = θ and φ = 2ψ
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Panel {
    A,
    B,
    C,
}

impl Panel {
    pub fn axes(self) -> (SweepAxis, SweepAxis) {
        match self {
            Panel::A => (SweepAxis::Theta1, SweepAxis::Theta2),
            Panel::B => (SweepAxis::Psi, SweepAxis::Phi),
            Panel::C => (SweepAxis::Theta, SweepAxis::PsiLocked),
        }
    }

    /// Every panel holds its unswept parameters at their ideal values.
    pub fn fixed(self) -> GateParams {
        GateParams::ideal()
    }

    pub fn sweep(self, resolution: usize) -> Result<ErrorGrid> {
        let (a1, a2) = self.axes();
        sweep_grid(
            AxisRange::with_default_range(a1),
            AxisRange::with_default_range(a2),
            &self.fixed(),
            resolution,
        )
    }
}
