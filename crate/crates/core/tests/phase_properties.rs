use gravab_core::constants::HBAR;
use gravab_core::phase::{
    ab_phase, ab_phase_closed_form, ab_phase_interval, mixing_angle, modulation_index,
    potential_exact, DEFAULT_STEPS_PER_ORBIT,
};
use gravab_core::{ClockTransition, OrbitalElements, RadiusModel};
use proptest::prelude::*;

fn galileo() -> OrbitalElements {
    OrbitalElements::earth(2.3445e7, 3.2510e7, None).unwrap()
}

fn iss() -> OrbitalElements {
    OrbitalElements::earth(6.800e6, 6.810e6, Some(5400.0)).unwrap()
}

fn maser() -> ClockTransition {
    ClockTransition::new(1.42e9).unwrap()
}

#[test]
fn simpson_matches_closed_form_cosine_model() {
    for o in [iss(), galileo()] {
        let dm = maser().delta_m();
        for frac in [0.13, 0.25, 0.5, 0.77, 1.0] {
            let t = frac * o.period();
            let steps = DEFAULT_STEPS_PER_ORBIT;
            let num = ab_phase(dm, &o, t, RadiusModel::Paper, steps).unwrap();
            let exact = ab_phase_closed_form(dm, &o, 0.0, t, RadiusModel::Paper).unwrap();
            assert!((num / exact - 1.0).abs() < 1e-9, "frac {frac}");
        }
    }
}

#[test]
fn simpson_matches_eccentric_anomaly_closed_form() {
    let o = galileo();
    let dm = maser().delta_m();
    for frac in [0.1, 0.5, 0.9, 1.0] {
        let t = frac * o.period();
        let num = ab_phase(dm, &o, t, RadiusModel::Exact, 20_000).unwrap();
        let exact = ab_phase_closed_form(dm, &o, 0.0, t, RadiusModel::Exact).unwrap();
        assert!((num / exact - 1.0).abs() < 1e-9, "frac {frac}: {num} vs {exact}");
    }
}

#[test]
fn exact_potential_averages_to_mean_orbit() {
    let o = galileo();
    let avg = gravab_core::quadrature::simpson(|t| potential_exact(&o, t).unwrap(), 0.0, o.period(), 1 << 14)
        .unwrap()
        / o.period();
    assert!((avg / (-o.mu() / o.semi_major_axis()) - 1.0).abs() < 1e-10);
}

#[test]
fn decomposition_matches_mass_difference_phase() {
    let c = maser();
    for o in [iss(), galileo()] {
        for frac in [0.0, 0.1, 0.25, 0.6, 1.0] {
            let t = frac * o.period();
            let rec = mixing_angle(&c, &o, t);
            let via_quadrature =
                ab_phase(c.delta_m(), &o, t, RadiusModel::Paper, DEFAULT_STEPS_PER_ORBIT).unwrap();
            let via_closed = ab_phase_closed_form(c.delta_m(), &o, 0.0, t, RadiusModel::Paper).unwrap();
            assert!((rec.mixing_total() - via_closed).abs() < 1e-9, "frac {frac}");
            assert!((rec.mixing_total() - via_quadrature).abs() <= 1e-9 * via_closed.abs().max(1.0));

            // φ* - φ from the full masses only resolves to rounding of φ*.
            let raw = rec.phi_g_star - rec.phi_g;
            let ulp = f64::EPSILON * rec.phi_g_star.abs();
            assert!((raw - rec.mixing_total()).abs() <= 8.0 * ulp + 1e-9);
        }
    }
}

#[test]
fn oscillatory_part_vanishes_on_full_period() {
    let c = maser();
    let o = galileo();
    assert_eq!(mixing_angle(&c, &o, 0.0).mixing_oscillatory, 0.0);
    let rec = mixing_angle(&c, &o, o.period());
    assert!(rec.mixing_oscillatory.abs() < 1e-9);
}

#[test]
fn full_period_quadrature_equals_secular_term() {
    let o = galileo();
    let m = 9.109_383_713_9e-31;
    let phase = ab_phase(m, &o, o.period(), RadiusModel::Paper, DEFAULT_STEPS_PER_ORBIT).unwrap();
    let secular = -(m * o.mu() / (HBAR * o.r0())) * o.period();
    assert!((phase / secular - 1.0).abs() < 1e-9);
}

#[test]
fn alpha_scales_with_period() {
    let c = maser();
    let base = iss();
    let a = modulation_index(&c, &base);
    for k in [2.0, 0.5, 4.0] {
        let scaled = OrbitalElements::earth(6.800e6, 6.810e6, Some(5400.0 * k)).unwrap();
        assert_eq!(modulation_index(&c, &scaled), k * a);
    }
    let scaled = OrbitalElements::earth(6.800e6, 6.810e6, Some(5400.0 * 3.0)).unwrap();
    assert!((modulation_index(&c, &scaled) / (3.0 * a) - 1.0).abs() < 1e-15);
}

proptest! {
    #[test]
    fn phase_is_additive(f1 in 0.0f64..1.0, f2 in 0.0f64..1.0) {
        let o = iss();
        let dm = maser().delta_m();
        let (t1, t2) = (f1.min(f2) * o.period(), f1.max(f2) * o.period());
        let steps = 10_000;
        let a = ab_phase_interval(dm, &o, 0.0, t1, RadiusModel::Paper, steps).unwrap();
        let b = ab_phase_interval(dm, &o, t1, t2, RadiusModel::Paper, steps).unwrap();
        let whole = ab_phase_interval(dm, &o, 0.0, t2, RadiusModel::Paper, steps).unwrap();
        prop_assert!((a + b - whole).abs() <= 1e-9, "{}", a + b - whole);
    }

    #[test]
    fn phase_is_linear_in_mass(mass in 1e-40f64..1e-28, frac in 0.0f64..2.0) {
        let o = galileo();
        let t = frac * o.period();
        let one = ab_phase(mass, &o, t, RadiusModel::Paper, 2000).unwrap();
        let two = ab_phase(2.0 * mass, &o, t, RadiusModel::Paper, 2000).unwrap();
        prop_assert_eq!(two, 2.0 * one);
    }
}
