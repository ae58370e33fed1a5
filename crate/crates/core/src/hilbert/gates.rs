//! Gate constructors. Rotations use the `e^{iθσ}` sign convention.

use num_complex::Complex64;

use super::basis::{Layout, Mode, Spin};
use super::unitary::Unitary;
use crate::error::{Error, Result};

/// Tunneling between two dots, spin untouched: on the span of `pair` acts as
/// `cos θ · I + i sin θ · σx`, identity on every other mode.
///
/// `|σ; a⟩ → cos θ |σ; a⟩ + i sin θ |σ; b⟩`. A quarter Rabi oscillation is
/// θ = π/4, full transfer θ = π/2.
pub fn rx_mode(theta: f64, pair: (Mode, Mode), layout: Layout) -> Result<Unitary> {
    let (a, b) = pair;
    let slot_a = layout.mode_slot(a)?;
    let slot_b = layout.mode_slot(b)?;
    if slot_a == slot_b {
        return Err(Error::DuplicateMode(a));
    }
    let n = layout.dim();
    let mut entries = Unitary::identity(layout).entries().to_vec();
    let (cos, sin) = (theta.cos(), theta.sin());
    let diag = Complex64::new(cos, 0.0);
    let off = Complex64::new(0.0, sin);
    for spin in Spin::ALL {
        let i = layout.index(spin, a)?;
        let j = layout.index(spin, b)?;
        entries[i * n + i] = diag;
        entries[j * n + j] = diag;
        entries[i * n + j] = off;
        entries[j * n + i] = off;
    }
    Ok(Unitary::from_entries_unchecked(layout, entries))
}

/// Ideal conditional sign flip on dot 0: `diag(1, 1, −1, 1)`.
pub fn u2_ideal() -> Unitary {
    let one = Complex64::new(1.0, 0.0);
    Unitary::from_diagonal_unchecked(Layout::TwoDot, &[one, one, -one, one])
}

/// Imperfect dot-0 spin gate with rotation angle `phi` and conditional phase
/// `psi`: `diag(e^{i(ψ−φ/2)}, 1, e^{i(ψ+φ/2)}, 1)`. Ideal at ψ = π/2, φ = π.
pub fn u2_general(psi: f64, phi: f64) -> Unitary {
    let one = Complex64::new(1.0, 0.0);
    Unitary::from_diagonal_unchecked(
        Layout::TwoDot,
        &[
            Complex64::cis(psi - 0.5 * phi),
            one,
            Complex64::cis(psi + 0.5 * phi),
            one,
        ],
    )
}

/// Spin rotation `e^{iφσz}` applied only while the particle is in `mode`.
pub fn rz_spin(phi: f64, mode: Mode, layout: Layout) -> Result<Unitary> {
    let mut diag = vec![Complex64::new(1.0, 0.0); layout.dim()];
    diag[layout.index(Spin::Up, mode)?] = Complex64::cis(phi);
    diag[layout.index(Spin::Down, mode)?] = Complex64::cis(-phi);
    Ok(Unitary::from_diagonal_unchecked(layout, &diag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{compose, StateVector};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

    const TOL: f64 = 1e-12;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn basis(layout: Layout, s: Spin, m: Mode) -> StateVector {
        StateVector::basis(layout, s, m).unwrap()
    }

    fn state(layout: Layout, amps: &[(Spin, Mode, Complex64)]) -> StateVector {
        let mut v = vec![c(0.0, 0.0); layout.dim()];
        for &(s, m, a) in amps {
            v[layout.index(s, m).unwrap()] = a;
        }
        StateVector::from_amplitudes(layout, v).unwrap()
    }

    #[test]
    fn rx_quarter_rotation_splits_equally() {
        let u = rx_mode(FRAC_PI_4, (Mode::Dot0, Mode::Dot1), Layout::TwoDot).unwrap();
        let out = u.apply(&basis(Layout::TwoDot, Spin::Up, Mode::Dot0)).unwrap();
        let expected = state(
            Layout::TwoDot,
            &[
                (Spin::Up, Mode::Dot0, c(FRAC_1_SQRT_2, 0.0)),
                (Spin::Up, Mode::Dot1, c(0.0, FRAC_1_SQRT_2)),
            ],
        );
        assert!(out.max_abs_diff(&expected).unwrap() < TOL);
    }

    #[test]
    fn rx_zero_is_identity() {
        let u = rx_mode(0.0, (Mode::Dot0, Mode::Dot1), Layout::TwoDot).unwrap();
        assert!(u.approx_eq(&Unitary::identity(Layout::TwoDot), 0.0));
    }

    #[test]
    fn rx_half_rotation_transfers() {
        let u = rx_mode(FRAC_PI_2, (Mode::Dot0, Mode::Dot1), Layout::TwoDot).unwrap();
        for spin in Spin::ALL {
            let out = u.apply(&basis(Layout::TwoDot, spin, Mode::Dot0)).unwrap();
            let expected = state(Layout::TwoDot, &[(spin, Mode::Dot1, c(0.0, 1.0))]);
            assert!(out.max_abs_diff(&expected).unwrap() < TOL);
        }
    }

    #[test]
    fn rx_leaves_third_mode_alone() {
        let u = rx_mode(0.7, (Mode::Dot0, Mode::Dot0Prime), Layout::ThreeDot).unwrap();
        let s = basis(Layout::ThreeDot, Spin::Down, Mode::Dot1);
        assert_eq!(u.apply(&s).unwrap(), s);
    }

    #[test]
    fn rx_invalid_pairs() {
        assert_eq!(
            rx_mode(0.1, (Mode::Dot0, Mode::Dot0Prime), Layout::TwoDot),
            Err(Error::InvalidMode {
                mode: Mode::Dot0Prime,
                layout: Layout::TwoDot
            })
        );
        assert_eq!(
            rx_mode(0.1, (Mode::Dot1, Mode::Dot1), Layout::TwoDot),
            Err(Error::DuplicateMode(Mode::Dot1))
        );
    }

    #[test]
    fn u2_ideal_action() {
        let u = u2_ideal();
        let down0 = basis(Layout::TwoDot, Spin::Down, Mode::Dot0);
        let out = u.apply(&down0).unwrap();
        assert_eq!(out.amplitudes()[2], c(-1.0, 0.0));
        for (s, m) in [
            (Spin::Up, Mode::Dot0),
            (Spin::Up, Mode::Dot1),
            (Spin::Down, Mode::Dot1),
        ] {
            let b = basis(Layout::TwoDot, s, m);
            assert_eq!(u.apply(&b).unwrap(), b);
        }
    }

    #[test]
    fn u2_general_special_values() {
        assert!(u2_general(FRAC_PI_2, PI).approx_eq(&u2_ideal(), TOL));
        assert!(u2_general(0.0, 0.0).approx_eq(&Unitary::identity(Layout::TwoDot), 0.0));
        let expected = Unitary::diagonal(
            Layout::TwoDot,
            &[c(0.0, 1.0), c(1.0, 0.0), c(0.0, 1.0), c(1.0, 0.0)],
        )
        .unwrap();
        assert!(u2_general(FRAC_PI_2, 0.0).approx_eq(&expected, TOL));
    }

    #[test]
    fn rz_spin_actions() {
        let u = rz_spin(-FRAC_PI_2, Mode::Dot0, Layout::TwoDot).unwrap();
        let out = u.apply(&basis(Layout::TwoDot, Spin::Up, Mode::Dot0)).unwrap();
        assert!((out.amplitudes()[0] - c(0.0, -1.0)).norm() < TOL);
        let down1 = basis(Layout::TwoDot, Spin::Down, Mode::Dot1);
        assert_eq!(u.apply(&down1).unwrap(), down1);
        assert!(rz_spin(0.0, Mode::Dot0, Layout::TwoDot)
            .unwrap()
            .approx_eq(&Unitary::identity(Layout::TwoDot), 0.0));
        assert!(rz_spin(0.0, Mode::Dot0Prime, Layout::TwoDot).is_err());
    }

    #[test]
    fn constructors_are_unitary() {
        let gates = [
            rx_mode(0.3, (Mode::Dot0, Mode::Dot1), Layout::TwoDot).unwrap(),
            rx_mode(-2.1, (Mode::Dot0Prime, Mode::Dot1), Layout::ThreeDot).unwrap(),
            u2_ideal(),
            u2_general(0.4, 5.0),
            rz_spin(1.3, Mode::Dot1, Layout::TwoDot).unwrap(),
            rz_spin(-0.2, Mode::Dot0Prime, Layout::ThreeDot).unwrap(),
        ];
        for g in &gates {
            assert!(g.unitarity_deviation() <= TOL, "{g:?}");
        }
    }

    #[test]
    fn palindrome_gives_protocol_unitary() {
        let u1 = rx_mode(FRAC_PI_4, (Mode::Dot0, Mode::Dot1), Layout::TwoDot).unwrap();
        let u = compose(&[u1.clone(), u2_ideal(), u1]).unwrap();
        let z = c(0.0, 0.0);
        let expected = Unitary::from_rows(
            Layout::TwoDot,
            &[
                &[z, c(0.0, 1.0), z, z],
                &[c(0.0, 1.0), z, z, z],
                &[z, z, c(-1.0, 0.0), z],
                &[z, z, z, c(1.0, 0.0)],
            ],
        )
        .unwrap();
        assert!(u.approx_eq(&expected, TOL), "{u:?}");
    }
}
