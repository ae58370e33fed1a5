use std::fmt;

use crate::error::{Error, Result};

/// Internal two-level degree of freedom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub const ALL: [Spin; 2] = [Spin::Up, Spin::Down];
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Spin::Up => f.write_str("up"),
            Spin::Down => f.write_str("down"),
        }
    }
}

/// Spatial mode (quantum dot) the particle can occupy.
///
/// `Dot0` holds the spin qubit initially, `Dot1` is the ancilla monitored by
/// the charge detector, and `Dot0Prime` only exists in the three-dot layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Dot0,
    Dot0Prime,
    Dot1,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Dot0 => f.write_str("0"),
            Mode::Dot0Prime => f.write_str("0'"),
            Mode::Dot1 => f.write_str("1"),
        }
    }
}

/// Which set of dots is active. Fixes the dimension and the basis ordering.
///
/// Ordering is spin-major, mode-minor:
///
/// * two dots: `|↑;0⟩, |↑;1⟩, |↓;0⟩, |↓;1⟩`
/// * three dots: `|↑;0⟩, |↑;0'⟩, |↑;1⟩, |↓;0⟩, |↓;0'⟩, |↓;1⟩`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Layout {
    TwoDot,
    ThreeDot,
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Layout::TwoDot => f.write_str("two-dot"),
            Layout::ThreeDot => f.write_str("three-dot"),
        }
    }
}

impl Layout {
    pub fn modes(self) -> &'static [Mode] {
        match self {
            Layout::TwoDot => &[Mode::Dot0, Mode::Dot1],
            Layout::ThreeDot => &[Mode::Dot0, Mode::Dot0Prime, Mode::Dot1],
        }
    }

    pub fn mode_count(self) -> usize {
        self.modes().len()
    }

    pub fn dim(self) -> usize {
        2 * self.mode_count()
    }

    pub fn from_dim(dim: usize) -> Result<Self> {
        match dim {
            4 => Ok(Layout::TwoDot),
            6 => Ok(Layout::ThreeDot),
            _ => Err(Error::DimensionMismatch {
                expected: 4,
                found: dim,
            }),
        }
    }

    pub fn mode_slot(self, mode: Mode) -> Result<usize> {
        self.modes()
            .iter()
            .position(|&m| m == mode)
            .ok_or(Error::InvalidMode { mode, layout: self })
    }

    pub fn index(self, spin: Spin, mode: Mode) -> Result<usize> {
        let slot = self.mode_slot(mode)?;
        let spin_block = match spin {
            Spin::Up => 0,
            Spin::Down => 1,
        };
        Ok(spin_block * self.mode_count() + slot)
    }

    /// Inverse of [`Layout::index`].
    pub fn label(self, index: usize) -> Option<(Spin, Mode)> {
        let n = self.mode_count();
        if index >= 2 * n {
            return None;
        }
        let spin = if index < n { Spin::Up } else { Spin::Down };
        Some((spin, self.modes()[index % n]))
    }
}
