use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::basis::{Layout, Mode, Spin};
use crate::error::{Error, Result};
use crate::EXACT_TOL;

/// Bloch angles of the unknown spin that starts in dot 0.
///
/// The spin state is `cos(δ/2)|↑⟩ + e^{iγ} sin(δ/2)|↓⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinInput {
    delta: f64,
    gamma: f64,
}

impl SpinInput {
    /// `delta` must lie in `[0, π]`; `gamma` is reduced modulo 2π.
    pub fn new(delta: f64, gamma: f64) -> Result<Self> {
        if !delta.is_finite() {
            return Err(Error::NotFinite {
                field: "delta",
                value: delta,
            });
        }
        if !gamma.is_finite() {
            return Err(Error::NotFinite {
                field: "gamma",
                value: gamma,
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
        let mut gamma = gamma.rem_euclid(TAU);
        if gamma >= TAU {
            gamma = 0.0;
        }
        Ok(Self { delta, gamma })
    }

    pub fn up() -> Self {
        Self {
            delta: 0.0,
            gamma: 0.0,
        }
    }

    pub fn down() -> Self {
        Self {
            delta: PI,
            gamma: 0.0,
        }
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Spin amplitudes `(up, down)`.
    pub fn spinor(&self) -> (Complex64, Complex64) {
        let half = 0.5 * self.delta;
        (
            Complex64::new(half.cos(), 0.0),
            Complex64::from_polar(half.sin(), self.gamma),
        )
    }
}

/// Normalized amplitude vector over the spin ⊗ mode basis of a [`Layout`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    layout: Layout,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Rejects vectors whose squared norm deviates from 1 by more than 1e-12.
    pub fn from_amplitudes(layout: Layout, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                found: amplitudes.len(),
            });
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs().is_nan() || (norm_sqr - 1.0).abs() > EXACT_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { layout, amplitudes })
    }

    /// Rescales an arbitrary nonzero vector to unit norm.
    pub fn normalized(layout: Layout, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                found: amplitudes.len(),
            });
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::NotNormalized {
                norm_sqr: norm * norm,
            });
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(Self { layout, amplitudes })
    }

    pub fn basis(layout: Layout, spin: Spin, mode: Mode) -> Result<Self> {
        let idx = layout.index(spin, mode)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); layout.dim()];
        amplitudes[idx] = Complex64::new(1.0, 0.0);
        Ok(Self { layout, amplitudes })
    }

    /// The readout input state: the given spin, localized in dot 0.
    pub fn spin_in_dot0(layout: Layout, input: &SpinInput) -> Self {
        let (up, down) = input.spinor();
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); layout.dim()];
        amplitudes[layout.index(Spin::Up, Mode::Dot0).unwrap()] = up;
        amplitudes[layout.index(Spin::Down, Mode::Dot0).unwrap()] = down;
        Self { layout, amplitudes }
    }

    /// Built from already-validated parts; used by gate application.
    pub(crate) fn from_raw(layout: Layout, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), layout.dim());
        Self { layout, amplitudes }
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, spin: Spin, mode: Mode) -> Result<Complex64> {
        Ok(self.amplitudes[self.layout.index(spin, mode)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Probability of finding the particle in `mode`, summed over spin.
    pub fn occupancy(&self, mode: Mode) -> Result<f64> {
        Spin::ALL
            .iter()
            .map(|&s| self.amplitude(s, mode).map(|a| a.norm_sqr()))
            .sum()
    }

    /// Largest componentwise distance to another state of the same layout.
    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64> {
        if self.layout != other.layout {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}
