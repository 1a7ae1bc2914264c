//! Compensated summation and composite Simpson quadrature.

use crate::error::{Error, Result};

/// Neumaier's improved Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if libm::fabs(self.sum) >= libm::fabs(value) {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl core::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Composite Simpson rule for `∫_a^b f(x) dx` with `n_steps` sub-intervals.
///
/// `n_steps` must be even and at least 2. The weighted samples are summed
/// with compensation so long integrals of slowly varying integrands keep
/// their relative accuracy.
pub fn simpson<F>(mut f: F, a: f64, b: f64, n_steps: usize) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if n_steps < 2 || !n_steps.is_multiple_of(2) {
        return Err(Error::domain("n_steps", "must be even and at least 2"));
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("interval", "endpoints must be finite"));
    }
    let h = (b - a) / n_steps as f64;
    let mut acc = CompensatedSum::new();
    acc.add(f(a));
    acc.add(f(b));
    for k in 1..n_steps {
        // Nodes are computed from the index, never accumulated.
        let x = a + k as f64 * h;
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc.add(w * f(x));
    }
    Ok(acc.value() * h / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_is_exact_for_cubics() {
        let v = simpson(|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, 2).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_odd_step_counts() {
        assert!(simpson(|x| x, 0.0, 1.0, 3).is_err());
        assert!(simpson(|x| x, 0.0, 1.0, 0).is_err());
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let acc: CompensatedSum = [1e16, 1.0, -1e16, 1.0].into_iter().collect();
        assert_eq!(acc.value(), 2.0);
    }
}
