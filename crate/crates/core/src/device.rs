//! Device-level calculators: tunneling pulse area ↔ Rabi angle, and the
//! length of a Rashba region needed for a given spin precession.
//!
//! Pulse energies are in µeV and durations in ns, where ħ ≈ 0.658 µeV·ns.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduced Planck constant, J·s.
pub const HBAR_J_S: f64 = 1.054_571_817e-34;
/// Elementary charge, i.e. one eV in joules.
pub const ELECTRON_VOLT_J: f64 = 1.602_176_634e-19;
/// Free-electron mass, kg.
pub const ELECTRON_MASS_KG: f64 = 9.109_383_701_5e-31;
/// ħ in µeV·ns.
pub const HBAR_UEV_NS: f64 = 0.658_211_956_9;

/// Effective mass (units of mₑ) under which both quoted Rashba lengths come out.
pub const DEFAULT_EFFECTIVE_MASS: f64 = 0.026;
/// Spin rotation produced by the Rashba region of the three-dot layout.
pub const DEFAULT_RASHBA_ANGLE: f64 = FRAC_PI_2;

pub fn ev_to_uev(ev: f64) -> f64 {
    ev * 1e6
}

pub fn uev_to_ev(uev: f64) -> f64 {
    uev * 1e-6
}

pub fn m_to_nm(m: f64) -> f64 {
    m * 1e9
}

pub fn nm_to_m(nm: f64) -> f64 {
    nm * 1e-9
}

pub fn s_to_ns(s: f64) -> f64 {
    s * 1e9
}

pub fn ns_to_s(ns: f64) -> f64 {
    ns * 1e-9
}

pub fn s_to_ps(s: f64) -> f64 {
    s * 1e12
}

pub fn ps_to_s(ps: f64) -> f64 {
    ps * 1e-12
}

/// One rectangular piece of the tunneling amplitude τ(t).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseSegment {
    pub amplitude_uev: f64,
    pub duration_ns: f64,
}

/// Piecewise-constant tunneling pulse.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseSpec {
    segments: Vec<PulseSegment>,
}

impl PulseSpec {
    pub fn new(segments: Vec<PulseSegment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::EmptyPulse);
        }
        for s in &segments {
            if !s.amplitude_uev.is_finite() {
                return Err(Error::NotFinite {
                    field: "amplitude",
                    value: s.amplitude_uev,
                });
            }
            if !(s.duration_ns > 0.0 && s.duration_ns.is_finite()) {
                return Err(Error::OutOfRange {
                    field: "duration",
                    value: s.duration_ns,
                    min: 0.0,
                    max: f64::INFINITY,
                });
            }
        }
        Ok(Self { segments })
    }

    pub fn constant(amplitude_uev: f64, duration_ns: f64) -> Result<Self> {
        Self::new(vec![PulseSegment {
            amplitude_uev,
            duration_ns,
        }])
    }

    pub fn segments(&self) -> &[PulseSegment] {
        &self.segments
    }

    /// ∫τ dt in µeV·ns.
    pub fn area(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| s.amplitude_uev * s.duration_ns)
            .sum()
    }
}

/// Rabi angle θ = −∫τ dt / ħ.
pub fn pulse_angle(pulse: &PulseSpec) -> f64 {
    -pulse.area() / HBAR_UEV_NS
}

/// Constant amplitude (µeV) that reaches `target` radians in `duration_ns`.
pub fn pulse_for_angle(target: f64, duration_ns: f64) -> Result<f64> {
    if !(duration_ns > 0.0 && duration_ns.is_finite()) {
        return Err(Error::OutOfRange {
            field: "duration",
            value: duration_ns,
            min: 0.0,
            max: f64::INFINITY,
        });
    }
    if !target.is_finite() {
        return Err(Error::NotFinite {
            field: "angle",
            value: target,
        });
    }
    Ok(-target * HBAR_UEV_NS / duration_ns)
}

/// Rashba region producing a spin rotation about z.
///
/// A spin crossing length `L` precesses by `θ = 2 m* α L / ħ²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RashbaSpec {
    alpha_ev_m: f64,
    effective_mass: f64,
    target_angle: f64,
}

fn check_positive(field: &'static str, value: f64) -> Result<()> {
    if !(value > 0.0 && value.is_finite()) {
        return Err(Error::OutOfRange {
            field,
            value,
            min: 0.0,
            max: f64::INFINITY,
        });
    }
    Ok(())
}

impl RashbaSpec {
    /// `alpha_ev_m` in eV·m, `effective_mass` in units of mₑ.
    pub fn new(alpha_ev_m: f64, effective_mass: f64, target_angle: f64) -> Result<Self> {
        check_positive("alpha", alpha_ev_m)?;
        check_positive("mass", effective_mass)?;
        if !target_angle.is_finite() {
            return Err(Error::NotFinite {
                field: "angle",
                value: target_angle,
            });
        }
        Ok(Self {
            alpha_ev_m,
            effective_mass,
            target_angle,
        })
    }

    pub fn alpha_ev_m(&self) -> f64 {
        self.alpha_ev_m
    }

    pub fn effective_mass(&self) -> f64 {
        self.effective_mass
    }

    pub fn target_angle(&self) -> f64 {
        self.target_angle
    }
}

// ħ² / (2 m* α) in metres.
fn precession_length_scale(alpha_ev_m: f64, effective_mass: f64) -> f64 {
    let mass = effective_mass * ELECTRON_MASS_KG;
    let alpha = alpha_ev_m * ELECTRON_VOLT_J;
    HBAR_J_S * HBAR_J_S / (2.0 * mass * alpha)
}

/// Region length in nm.
pub fn rashba_length(spec: &RashbaSpec) -> f64 {
    m_to_nm(spec.target_angle * precession_length_scale(spec.alpha_ev_m, spec.effective_mass))
}

/// Precession angle (rad) accumulated over `length_nm`.
pub fn rashba_angle(alpha_ev_m: f64, effective_mass: f64, length_nm: f64) -> Result<f64> {
    check_positive("alpha", alpha_ev_m)?;
    check_positive("mass", effective_mass)?;
    if !length_nm.is_finite() {
        return Err(Error::NotFinite {
            field: "length",
            value: length_nm,
        });
    }
    Ok(nm_to_m(length_nm) / precession_length_scale(alpha_ev_m, effective_mass))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn hbar_units_are_consistent() {
        let derived = HBAR_J_S / ELECTRON_VOLT_J * 1e6 * 1e9;
        assert!(rel(derived, HBAR_UEV_NS) < 1e-9, "{derived}");
    }

    #[test]
    fn pulse_angle_examples() {
        let p = PulseSpec::constant(-FRAC_PI_4 * HBAR_UEV_NS, 1.0).unwrap();
        assert!(rel(pulse_angle(&p), FRAC_PI_4) < 1e-12);

        let eighth = -std::f64::consts::PI / 8.0 * HBAR_UEV_NS;
        let p = PulseSpec::new(vec![
            PulseSegment {
                amplitude_uev: eighth,
                duration_ns: 1.0,
            },
            PulseSegment {
                amplitude_uev: eighth / 2.0,
                duration_ns: 2.0,
            },
        ])
        .unwrap();
        assert!(rel(pulse_angle(&p), FRAC_PI_4) < 1e-12);

        let p = PulseSpec::constant(-1.0, 1.0).unwrap();
        assert!((pulse_angle(&p) - 1.5193).abs() < 1e-4);
    }

    #[test]
    fn pulse_for_angle_examples() {
        let tau = pulse_for_angle(FRAC_PI_4, 0.37).unwrap();
        let back = pulse_angle(&PulseSpec::constant(tau, 0.37).unwrap());
        assert!(rel(back, FRAC_PI_4) < 1e-12);
        assert_eq!(pulse_for_angle(0.0, 2.0).unwrap(), 0.0);
        assert!((pulse_for_angle(FRAC_PI_4, 0.1).unwrap() + 5.17).abs() < 0.01);
        assert!(pulse_for_angle(1.0, 0.0).is_err());
        assert!(pulse_for_angle(1.0, -1.0).is_err());
    }

    #[test]
    fn pulse_validation() {
        assert_eq!(PulseSpec::new(vec![]), Err(Error::EmptyPulse));
        assert!(PulseSpec::constant(1.0, 0.0).is_err());
        assert!(PulseSpec::constant(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn rashba_lengths() {
        let inas = RashbaSpec::new(4e-11, DEFAULT_EFFECTIVE_MASS, FRAC_PI_2).unwrap();
        let l = rashba_length(&inas);
        assert!(rel(l, 58.0) < 0.02, "{l}");
        let ingaas = RashbaSpec::new(0.93e-11, DEFAULT_EFFECTIVE_MASS, FRAC_PI_2).unwrap();
        let l = rashba_length(&ingaas);
        assert!(rel(l, 250.0) < 0.02, "{l}");

        let doubled = RashbaSpec::new(8e-11, DEFAULT_EFFECTIVE_MASS, FRAC_PI_2).unwrap();
        assert!(rel(rashba_length(&doubled), rashba_length(&inas) / 2.0) < 1e-12);
    }

    #[test]
    fn rashba_round_trip() {
        let spec = RashbaSpec::new(2.5e-11, 0.04, 1.2).unwrap();
        let l = rashba_length(&spec);
        let angle = rashba_angle(2.5e-11, 0.04, l).unwrap();
        assert!(rel(angle, 1.2) < 1e-12);
    }

    #[test]
    fn rashba_validation() {
        assert!(RashbaSpec::new(0.0, 0.026, 1.0).is_err());
        assert!(RashbaSpec::new(1e-11, -1.0, 1.0).is_err());
        assert!(rashba_angle(1e-11, 0.0, 10.0).is_err());
    }

    #[test]
    fn unit_round_trips() {
        for x in [1e-3, 0.658, 42.0, 7.5e5] {
            assert!(rel(uev_to_ev(ev_to_uev(x)), x) < 1e-12);
            assert!(rel(nm_to_m(m_to_nm(x)), x) < 1e-12);
            assert!(rel(ns_to_s(s_to_ns(x)), x) < 1e-12);
            assert!(rel(ps_to_s(s_to_ps(x)), x) < 1e-12);
        }
    }
}
