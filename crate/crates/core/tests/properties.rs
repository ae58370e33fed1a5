use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use proptest::prelude::*;

use spinreadout::analysis::{
    avg_abs_error, extremal_error, measurement_error, probabilities_closed_form, AveragingMethod,
    GateParams,
};
use spinreadout::device::{self, PulseSegment, PulseSpec, RashbaSpec};
use spinreadout::hilbert::{
    compose, rx_mode, rz_spin, u2_general, Layout, Mode, SpinInput, StateVector, Unitary,
};
use spinreadout::montecarlo::{effective_outcome_probability, sample_readout, DetectorModel};
use spinreadout::protocol::{noisy_sequence, run_readout, run_three_dot};

const TOL: f64 = 1e-12;

fn angle() -> impl Strategy<Value = f64> {
    -TAU..TAU
}

fn params() -> impl Strategy<Value = GateParams> {
    (0.0..=PI, 0.0..=PI, 0.0..=TAU, 0.0..=TAU)
        .prop_map(|(t1, t2, psi, phi)| GateParams::new(t1, t2, psi, phi))
}

fn input() -> impl Strategy<Value = SpinInput> {
    (0.0..=PI, 0.0..TAU).prop_map(|(d, g)| SpinInput::new(d, g).unwrap())
}

fn layout() -> impl Strategy<Value = Layout> {
    prop_oneof![Just(Layout::TwoDot), Just(Layout::ThreeDot)]
}

fn state(layout: Layout) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), layout.dim())
        .prop_filter("nonzero", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3))
        .prop_map(move |v| {
            let amps = v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
            StateVector::normalized(layout, amps).unwrap()
        })
}

fn mode_pair(layout: Layout) -> BoxedStrategy<(Mode, Mode)> {
    let modes = layout.modes().to_vec();
    let n = modes.len();
    (0..n, 1..n)
        .prop_map(move |(i, k)| (modes[i], modes[(i + k) % n]))
        .boxed()
}

fn gate(layout: Layout) -> BoxedStrategy<Unitary> {
    let modes = layout.modes().to_vec();
    let n = modes.len();
    let rx = (angle(), mode_pair(layout)).prop_map(move |(t, p)| rx_mode(t, p, layout).unwrap());
    let rz = (angle(), 0..n).prop_map(move |(t, m)| rz_spin(t, modes[m], layout).unwrap());
    match layout {
        Layout::TwoDot => prop_oneof![rx, rz, (angle(), angle()).prop_map(|(a, b)| u2_general(a, b))]
            .boxed(),
        Layout::ThreeDot => prop_oneof![rx, rz].boxed(),
    }
}

fn layout_gate_state() -> impl Strategy<Value = (Unitary, StateVector)> {
    layout().prop_flat_map(|l| (gate(l), state(l)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gates_are_unitary_and_preserve_norm((u, s) in layout_gate_state()) {
        prop_assert!(u.unitarity_deviation() <= TOL);
        let out = u.apply(&s).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() <= TOL);
    }

    #[test]
    fn identity_action(s in layout().prop_flat_map(state)) {
        let out = Unitary::identity(s.layout()).apply(&s).unwrap();
        prop_assert_eq!(out, s);
    }

    #[test]
    fn rx_inverse_and_additive(
        (l, pair) in layout().prop_flat_map(|l| (Just(l), mode_pair(l))),
        a in angle(),
        b in angle(),
    ) {
        let ra = rx_mode(a, pair, l).unwrap();
        let inv = rx_mode(-a, pair, l).unwrap();
        prop_assert!(compose(&[ra.clone(), inv]).unwrap().approx_eq(&Unitary::identity(l), TOL));
        let rb = rx_mode(b, pair, l).unwrap();
        let sum = rx_mode(a + b, pair, l).unwrap();
        prop_assert!(compose(&[ra, rb]).unwrap().approx_eq(&sum, TOL));
    }

    #[test]
    fn probabilities_sum_to_one(i in input(), p in params()) {
        let (amps, probs) = run_readout(&i, &p);
        prop_assert!((probs.p_up + probs.p_down - 1.0).abs() <= TOL);
        let total = amps.f1.norm_sqr() + amps.f2.norm_sqr() + amps.g1.norm_sqr() + amps.g2.norm_sqr();
        prop_assert!((total - 1.0).abs() <= TOL);
    }

    #[test]
    fn closed_form_matches_matrix_path(i in input(), p in params()) {
        let closed = probabilities_closed_form(&p, i.delta()).unwrap();
        let (_, matrix) = run_readout(&i, &p);
        prop_assert!((closed.p_up - matrix.p_up).abs() <= TOL);
        prop_assert!((closed.p_down - matrix.p_down).abs() <= TOL);
    }

    #[test]
    fn palindrome_reduces_to_double_rotation(theta in angle()) {
        let u = noisy_sequence(&GateParams::new(theta, theta, 0.0, 0.0));
        let r = rx_mode(2.0 * theta, (Mode::Dot0, Mode::Dot1), Layout::TwoDot).unwrap();
        prop_assert!(u.approx_eq(&r, TOL));
    }

    #[test]
    fn three_dot_agrees_with_two_dot(i in input()) {
        let (_, two) = run_readout(&i, &GateParams::ideal());
        let (_, three) = run_three_dot(&i);
        prop_assert!((two.p_up - three.p_up).abs() <= TOL);
        prop_assert!(three.p_unassigned <= TOL);
    }

    #[test]
    fn error_is_affine_in_cos_delta(p in params()) {
        // Fit E = a + b cos δ + c cos²δ... through δ = 0, π/2, π and check
        // the quadratic term vanishes and the fit predicts other points.
        let e0 = measurement_error(&p, 0.0).unwrap();
        let e1 = measurement_error(&p, PI / 2.0).unwrap();
        let e2 = measurement_error(&p, PI).unwrap();
        let offset = e1;
        let slope = 0.5 * (e0 - e2);
        prop_assert!((0.5 * (e0 + e2) - e1).abs() <= TOL);
        for k in 1..=20 {
            let d = PI * k as f64 / 21.0;
            let e = measurement_error(&p, d).unwrap();
            prop_assert!((offset + slope * d.cos() - e).abs() <= TOL);
        }
    }

    #[test]
    fn extremes_at_basis_states(p in params()) {
        prop_assert!(extremal_error(&p).is_ok());
    }

    #[test]
    fn average_error_properties(p in params()) {
        let a = avg_abs_error(&p, AveragingMethod::Analytic).unwrap();
        prop_assert!(a >= 0.0);
        let q = avg_abs_error(&p, AveragingMethod::Quadrature).unwrap();
        prop_assert!((a - q).abs() <= 1e-9);
        let shifted = GateParams::new(p.theta1, p.theta2, p.psi + TAU, p.phi + 2.0 * TAU);
        let s = avg_abs_error(&shifted, AveragingMethod::Analytic).unwrap();
        prop_assert!((a - s).abs() <= TOL);
    }

    #[test]
    fn pulse_angle_is_linear(amp in -50.0..50.0f64, dur in 0.01..5.0f64, k in 0.1..10.0f64) {
        let base = device::pulse_angle(&PulseSpec::constant(amp, dur).unwrap());
        let scaled_amp = device::pulse_angle(&PulseSpec::constant(k * amp, dur).unwrap());
        let scaled_dur = device::pulse_angle(&PulseSpec::constant(amp, k * dur).unwrap());
        prop_assert!((scaled_amp - k * base).abs() <= TOL * (1.0 + base.abs() * k));
        prop_assert!((scaled_dur - k * base).abs() <= TOL * (1.0 + base.abs() * k));
        let split = PulseSpec::new(vec![
            PulseSegment { amplitude_uev: amp, duration_ns: 0.5 * dur },
            PulseSegment { amplitude_uev: amp, duration_ns: 0.5 * dur },
        ]).unwrap();
        prop_assert!((device::pulse_angle(&split) - base).abs() <= TOL * (1.0 + base.abs()));
    }

    #[test]
    fn rashba_product_is_constant(alpha in 1e-12..1e-10f64, mass in 0.01..0.2f64, theta in 0.1..TAU) {
        let reference = device::rashba_length(&RashbaSpec::new(4e-11, 0.026, theta).unwrap()) * 4e-11 * 0.026;
        let l = device::rashba_length(&RashbaSpec::new(alpha, mass, theta).unwrap());
        prop_assert!(((l * alpha * mass) - reference).abs() <= TOL * reference);
    }

    #[test]
    fn detection_monotone_in_efficiency(p in 0.0..=1.0f64, fp in 0.0..=1.0f64, e1 in 0.0..=1.0f64, e2 in 0.0..=1.0f64) {
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let a = effective_outcome_probability(p, &DetectorModel::new(lo, fp).unwrap()).unwrap();
        let b = effective_outcome_probability(p, &DetectorModel::new(hi, fp).unwrap()).unwrap();
        prop_assert!(a <= b + 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn sampling_is_reproducible(i in input(), p in params(), seed in any::<u64>(), shots in 1u64..20_000) {
        let det = DetectorModel::new(0.9, 0.03).unwrap();
        let a = sample_readout(&i, &p, shots, seed, &det).unwrap();
        let b = sample_readout(&i, &p, shots, seed, &det).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(a.detected_dot1 <= a.shots);
        prop_assert!((0.0..=1.0).contains(&a.estimated_p_up));
    }

    #[test]
    fn gamma_does_not_change_readout(d in 0.0..=PI, p in params(), gammas in prop::collection::vec(0.0..TAU, 10)) {
        let values: Vec<f64> = gammas
            .iter()
            .map(|&g| run_readout(&SpinInput::new(d, g).unwrap(), &p).1.p_up)
            .collect();
        let max = values.iter().cloned().fold(f64::MIN, f64::max);
        let min = values.iter().cloned().fold(f64::MAX, f64::min);
        prop_assert!(max - min < TOL);
    }
}
