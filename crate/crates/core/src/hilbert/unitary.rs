use std::fmt;

use num_complex::Complex64;

use super::basis::Layout;
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::EXACT_TOL;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense unitary on the spin ⊗ mode space of a [`Layout`], row-major.
#[derive(Clone, PartialEq)]
pub struct Unitary {
    layout: Layout,
    entries: Vec<Complex64>,
}

impl fmt::Debug for Unitary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Unitary({}) [", self.layout)?;
        let n = self.dim();
        for row in self.entries.chunks(n) {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Unitary {
    /// Validates `‖U†U − I‖_max ≤ 1e-12`.
    pub fn from_entries(layout: Layout, entries: Vec<Complex64>) -> Result<Self> {
        let n = layout.dim();
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        let u = Self { layout, entries };
        let deviation = u.unitarity_deviation();
        if deviation.is_nan() || deviation > EXACT_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(u)
    }

    pub fn from_rows(layout: Layout, rows: &[&[Complex64]]) -> Result<Self> {
        Self::from_entries(layout, rows.iter().flat_map(|r| r.iter().copied()).collect())
    }

    pub fn identity(layout: Layout) -> Self {
        Self::from_diagonal_unchecked(layout, &vec![ONE; layout.dim()])
    }

    /// Diagonal matrix; each entry must have unit modulus.
    pub fn diagonal(layout: Layout, diag: &[Complex64]) -> Result<Self> {
        if diag.len() != layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                found: diag.len(),
            });
        }
        Self::from_entries(layout, Self::from_diagonal_unchecked(layout, diag).entries)
    }

    pub(crate) fn from_diagonal_unchecked(layout: Layout, diag: &[Complex64]) -> Self {
        let n = layout.dim();
        let mut entries = vec![ZERO; n * n];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * n + i] = d;
        }
        Self { layout, entries }
    }

    pub(crate) fn from_entries_unchecked(layout: Layout, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), layout.dim() * layout.dim());
        Self { layout, entries }
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn dim(&self) -> usize {
        self.layout.dim()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn dagger(&self) -> Unitary {
        let n = self.dim();
        let mut entries = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        Self {
            layout: self.layout,
            entries,
        }
    }

    /// Matrix product `self · rhs` (so `rhs` acts first on a state).
    pub fn matmul(&self, rhs: &Unitary) -> Result<Unitary> {
        self.check_layout(rhs.layout)?;
        Ok(Self {
            layout: self.layout,
            entries: mul_raw(self.dim(), &self.entries, &rhs.entries),
        })
    }

    /// `‖U†U − I‖_max`.
    pub fn unitarity_deviation(&self) -> f64 {
        let n = self.dim();
        let product = mul_raw(n, &self.dagger().entries, &self.entries);
        product
            .iter()
            .enumerate()
            .map(|(k, z)| {
                let target = if k / n == k % n { ONE } else { ZERO };
                (z - target).norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Unitary) -> Result<f64> {
        self.check_layout(other.layout)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &Unitary, tol: f64) -> bool {
        self.max_abs_diff(other).is_ok_and(|d| d <= tol)
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        self.check_layout(state.layout())?;
        let n = self.dim();
        let input = state.amplitudes();
        let out = self
            .entries
            .chunks(n)
            .map(|row| row.iter().zip(input).map(|(u, a)| u * a).sum())
            .collect();
        Ok(StateVector::from_raw(self.layout, out))
    }

    fn check_layout(&self, other: Layout) -> Result<()> {
        if self.layout != other {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

fn mul_raw(n: usize, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![ZERO; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == ZERO {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// Product of a gate sequence in time order: the first gate listed acts first,
/// so `compose(&[a, b, c])` is the matrix `c · b · a`.
pub fn compose(gates: &[Unitary]) -> Result<Unitary> {
    let (first, rest) = gates.split_first().ok_or(Error::EmptySequence)?;
    rest.iter().try_fold(first.clone(), |acc, g| g.matmul(&acc))
}
