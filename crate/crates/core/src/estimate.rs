//! Least-squares recovery of the modulation index from measured line
//! amplitudes.

use alloc::vec::Vec;

use crate::bessel::bessel_j_all;
use crate::error::{Error, Result};
use crate::synthesis::MeasuredLine;

/// Final golden-section bracket width.
pub const GOLDEN_TOLERANCE: f64 = 1e-6;

/// Largest grid spacing used to locate the global minimum before refining.
pub const SCAN_STEP: f64 = 0.05;

const MIN_SCAN_POINTS: usize = 64;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EstimationResult {
    pub alpha_hat: f64,
    /// `sqrt(Σ (|J_n(α̂)| - a_n)²)`.
    pub residual_norm: f64,
    pub n_lines_used: usize,
}

/// Golden-section search for a minimum of `f` on `[lo, hi]`, stopping once
/// the bracket is narrower than `tol`. Returns the final bracket.
pub fn golden_section<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    (lo, hi)
}

/// Vertex of the parabola through three equally spaced samples, if it is a
/// minimum inside the bracket.
fn parabola_vertex(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> Option<f64> {
    let h = 0.5 * (b - a);
    let curvature = fa - 2.0 * fm + fb;
    if curvature.is_nan() || curvature <= 0.0 {
        return None;
    }
    let x = 0.5 * (a + b) + h * (fa - fb) / (2.0 * curvature);
    (a..=b).contains(&x).then_some(x)
}

struct Residual<'a> {
    measured: &'a [MeasuredLine],
    max_order: u32,
}

impl Residual<'_> {
    fn eval(&self, alpha: f64) -> f64 {
        let j: Vec<f64> = bessel_j_all(self.max_order, alpha);
        self.measured
            .iter()
            .map(|m| {
                let d = libm::fabs(j[m.n.unsigned_abs() as usize]) - m.amplitude;
                d * d
            })
            .sum()
    }
}

/// Finds `α̂ = argmin_α Σ_n (|J_n(α)| - a_n)²` inside `alpha_bracket`.
///
/// The residual oscillates in α, so the bracket is first scanned on a grid
/// no coarser than [`SCAN_STEP`]. Golden-section search then narrows the
/// two cells around the best grid point to [`GOLDEN_TOLERANCE`], and one
/// parabolic fit refines the result. A best grid point on the bracket edge
/// means the residual is monotone over the bracket and is reported as an
/// error.
pub fn estimate_modulation_index(
    measured: &[MeasuredLine],
    alpha_bracket: (f64, f64),
) -> Result<EstimationResult> {
    let (lo, hi) = alpha_bracket;
    if measured.len() < 3 {
        return Err(Error::domain("measured", "need at least three lines"));
    }
    if !(lo.is_finite() && hi.is_finite() && lo >= 0.0 && lo < hi) {
        return Err(Error::domain("alpha_bracket", "need 0 <= lo < hi"));
    }
    if measured.iter().any(|m| !m.amplitude.is_finite()) {
        return Err(Error::domain("measured", "amplitudes must be finite"));
    }
    let max_order = measured.iter().map(|m| m.n.unsigned_abs()).max().unwrap_or(0);
    let residual = Residual {
        measured,
        max_order: max_order as u32,
    };

    let cells = (libm::ceil((hi - lo) / SCAN_STEP) as usize).max(MIN_SCAN_POINTS);
    let step = (hi - lo) / cells as f64;
    let (best, _) = (0..=cells)
        .map(|i| (i, residual.eval(lo + i as f64 * step)))
        .fold((0, f64::INFINITY), |acc, (i, r)| if r < acc.1 { (i, r) } else { acc });
    if best == 0 || best == cells {
        return Err(Error::Estimation(
            "bracket does not contain a minimum (residual is monotone)",
        ));
    }

    let a = lo + (best - 1) as f64 * step;
    let b = lo + (best + 1) as f64 * step;
    let (ga, gb) = golden_section(|x| residual.eval(x), a, b, GOLDEN_TOLERANCE);
    let mid = 0.5 * (ga + gb);
    let f_mid = residual.eval(mid);
    let (alpha_hat, f_hat) = match parabola_vertex(ga, gb, residual.eval(ga), f_mid, residual.eval(gb)) {
        Some(x) => {
            let fx = residual.eval(x);
            if fx <= f_mid {
                (x, fx)
            } else {
                (mid, f_mid)
            }
        }
        None => (mid, f_mid),
    };

    Ok(EstimationResult {
        alpha_hat,
        residual_norm: libm::sqrt(f_hat),
        n_lines_used: measured.len(),
    })
}
