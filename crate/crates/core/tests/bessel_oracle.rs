//! Bessel values checked against the integral representation
//! `J_n(x) = (1/2π) ∫_0^{2π} cos(nθ - x sin θ) dθ`.
//!
//! The integrand is periodic and band-limited to roughly `n + x`, so the
//! trapezoid rule with more nodes than that is exact to rounding.

use gravab_core::bessel::{bessel_j, bessel_j_all, bessel_j_signed};
use gravab_core::spectrum::{default_truncation, jacobi_anger_spectrum, significant_band};
use proptest::prelude::*;

fn oracle(n: u32, x: f64) -> f64 {
    let nodes = 2 * (n as usize + x.ceil() as usize) + 256;
    let h = std::f64::consts::TAU / nodes as f64;
    let sum: f64 = (0..nodes)
        .map(|k| {
            let theta = k as f64 * h;
            (n as f64 * theta - x * theta.sin()).cos()
        })
        .sum();
    sum / nodes as f64
}

#[test]
fn oracle_reproduces_reference() {
    assert!((oracle(1, 2.0) - 0.576_724_807_756_873_4).abs() < 1e-13);
}

#[test]
fn series_and_recurrence_regions_match_oracle() {
    let xs = [0.1, 0.5, 1.0, 2.0, 3.7, 7.9, 8.1, 12.0, 23.8, 50.0, 100.0];
    for &x in &xs {
        for n in [0u32, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 150] {
            let got = bessel_j(n, x);
            let want = oracle(n, x);
            assert!((got - want).abs() < 1e-12, "J_{n}({x}) = {got}, oracle {want}");
        }
    }
}

#[test]
fn deep_modulation_orders_match_oracle() {
    let x = 1699.0;
    let all = bessel_j_all(1850, x);
    for n in [0u32, 1, 500, 1600, 1680, 1690, 1699, 1710, 1750, 1800, 1850] {
        let want = oracle(n, x);
        assert!((all[n as usize] - want).abs() < 1e-12, "J_{n}({x})");
        assert!((bessel_j(n, x) - want).abs() < 1e-12, "J_{n}({x}) single");
    }
}

#[test]
fn normalisation_identity() {
    for alpha in [0.5, 3.7, 23.8, 100.0] {
        let s = jacobi_anger_spectrum(alpha, 1.0, 1.0, None).unwrap();
        let j = bessel_j_all(default_truncation(alpha), alpha);
        let sum = j[0] * j[0] + 2.0 * j[1..].iter().map(|v| v * v).sum::<f64>();
        assert!((sum - 1.0).abs() < 1e-10, "alpha {alpha}: {sum}");
        assert!((s.total_power() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn peak_order_sits_near_alpha() {
    for alpha in [10.0, 23.8, 100.0, 500.0, 1699.0] {
        let j = bessel_j_all(default_truncation(alpha), alpha);
        let (argmax, _) = j
            .iter()
            .enumerate()
            .fold((0, 0.0), |acc, (n, v)| if v.abs() > acc.1 { (n, v.abs()) } else { acc });
        let width = 2.0 * alpha.cbrt();
        assert!(
            (argmax as f64 - alpha).abs() <= width,
            "alpha {alpha}: peak at {argmax}"
        );
    }
}

#[test]
fn cutoff_beyond_alpha_is_monotone() {
    for alpha in [3.7, 10.0, 23.8, 100.0, 1699.0] {
        let j = bessel_j_all(default_truncation(alpha), alpha);
        let start = alpha.ceil() as usize;
        for n in start..j.len() - 1 {
            if j[n].abs() < 1e-300 {
                break;
            }
            assert!(j[n + 1].abs() < j[n].abs(), "alpha {alpha}, n {n}");
        }
    }
}

#[test]
fn significant_band_cumulative_oracle() {
    // direct cumulative sum with oracle-quality values
    fn direct(alpha: f64, eps: f64) -> u32 {
        let mut total = oracle(0, alpha).powi(2);
        let mut n = 0;
        while total < 1.0 - eps {
            n += 1;
            total += 2.0 * oracle(n, alpha).powi(2);
        }
        n
    }
    let n37 = significant_band(3.7, 1e-3).unwrap();
    assert_eq!(n37, direct(3.7, 1e-3));
    assert!((4..=9).contains(&n37), "{n37}");

    let alpha = 1_698.357_272_71;
    let n = significant_band(alpha, 1e-3).unwrap();
    assert!(n as f64 >= alpha && n as f64 <= alpha + 10.0 * alpha.cbrt(), "{n}");
}

proptest! {
    #[test]
    fn recurrence_identity(n in 1u32..200, x in 0.05f64..300.0) {
        let lhs = bessel_j(n - 1, x) + bessel_j(n + 1, x);
        let rhs = 2.0 * n as f64 / x * bessel_j(n, x);
        prop_assert!((lhs - rhs).abs() <= 1e-10, "n {} x {}: {} vs {}", n, x, lhs, rhs);
    }

    #[test]
    fn negative_order_symmetry(n in 0i64..100, x in 0.0f64..200.0) {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(bessel_j_signed(-n, x), sign * bessel_j_signed(n, x));
    }

    #[test]
    fn single_and_bulk_agree(n in 0u32..120, x in 0.0f64..150.0) {
        let all = bessel_j_all(n, x);
        prop_assert!((all[n as usize] - bessel_j(n, x)).abs() < 1e-12);
    }
}
