use gravab_core::clock::{
    analytic_mixing_phase, numerical_mixing_phase, propagate_analytic, propagate_analytic_interval,
    propagate_numerical, NORM_TOLERANCE,
};
use gravab_core::{ClockTransition, OrbitalElements, RadiusModel, TwoLevelState};
use num_complex::Complex64;
use proptest::prelude::*;

fn iss() -> OrbitalElements {
    OrbitalElements::earth(6.800e6, 6.810e6, Some(5400.0)).unwrap()
}

fn maser() -> ClockTransition {
    ClockTransition::new(1.42e9).unwrap()
}

fn phase_error(t: f64, dt: f64, model: RadiusModel) -> f64 {
    let (c, o) = (maser(), iss());
    let num = numerical_mixing_phase(&c, &o, 0.0, t, model, dt).unwrap();
    let exact = analytic_mixing_phase(&c, &o, 0.0, t, model).unwrap();
    num - exact
}

#[test]
fn fine_step_agrees_with_closed_form_over_one_orbit() {
    let o = iss();
    let dt = o.period() / 1e6;
    for frac in [0.25, 0.5, 0.75, 1.0] {
        let err = phase_error(frac * o.period(), dt, RadiusModel::Paper);
        assert!(err.abs() < 1e-8, "t = {frac} T: {err:e}");
    }
}

#[test]
fn exact_model_agrees_with_eccentric_anomaly_form() {
    let o = OrbitalElements::earth(2.3445e7, 3.2510e7, None).unwrap();
    let c = maser();
    let dt = o.period() / 1e5;
    let t = 0.3 * o.period();
    let num = numerical_mixing_phase(&c, &o, 0.0, t, RadiusModel::Exact, dt).unwrap();
    let exact = analytic_mixing_phase(&c, &o, 0.0, t, RadiusModel::Exact).unwrap();
    assert!((num - exact).abs() <= 1e-9 * exact.abs(), "{num} vs {exact}");
}

#[test]
fn midpoint_rule_is_second_order() {
    let o = iss();
    let t = 0.25 * o.period();
    let errors: Vec<f64> = [1e3, 2e3, 4e3, 8e3]
        .iter()
        .map(|&d| phase_error(t, o.period() / d, RadiusModel::Paper).abs())
        .collect();
    for pair in errors.windows(2) {
        let order = (pair[0] / pair[1]).log2();
        assert!((order - 2.0).abs() <= 0.2, "order {order} from {errors:?}");
    }
}

#[test]
fn step_larger_than_limit_is_rejected() {
    let o = iss();
    let c = maser();
    let dt = 2.0 * o.period() / 1e3;
    assert!(numerical_mixing_phase(&c, &o, 0.0, o.period(), RadiusModel::Paper, dt).is_err());
}

#[test]
fn numerical_and_analytic_states_coincide() {
    let o = iss();
    let c = maser();
    let s0 = TwoLevelState::equal_superposition();
    let t = 0.6 * o.period();
    let a = propagate_analytic(&s0, &c, &o, t, RadiusModel::Paper).unwrap();
    let n = propagate_numerical(&s0, &c, &o, t, RadiusModel::Paper, o.period() / 1e5).unwrap();
    assert!((a.c_f() - n.c_f()).norm() < 1e-8);
    assert_eq!(a.c_i(), s0.c_i());
}

proptest! {
    #[test]
    fn propagator_composes(f1 in 0.0f64..1.0, f2 in 0.0f64..1.0) {
        let (o, c) = (iss(), maser());
        let (t1, t2) = (f1.min(f2) * o.period(), f1.max(f2) * o.period());
        let s0 = TwoLevelState::equal_superposition();
        let m = RadiusModel::Paper;
        let mid = propagate_analytic_interval(&s0, &c, &o, 0.0, t1, m).unwrap();
        let two_step = propagate_analytic_interval(&mid, &c, &o, t1, t2, m).unwrap();
        let direct = propagate_analytic_interval(&s0, &c, &o, 0.0, t2, m).unwrap();
        prop_assert!(two_step.excited_phase_lag(&direct).abs() < 1e-9);
    }

    #[test]
    fn propagation_preserves_norm(theta in 0.0f64..std::f64::consts::TAU, frac in 0.0f64..3.0) {
        let (o, c) = (iss(), maser());
        let s0 = TwoLevelState::new(
            Complex64::new(theta.cos(), 0.0),
            Complex64::from_polar(theta.sin().abs(), 0.3),
        ).unwrap();
        let s = propagate_analytic(&s0, &c, &o, frac * o.period(), RadiusModel::Exact).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() <= NORM_TOLERANCE);
        prop_assert_eq!(s.c_i(), s0.c_i());
    }
}
