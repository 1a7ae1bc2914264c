//! Unitary discrete Fourier transform.
//!
//! Power-of-two lengths use an iterative radix-2 Cooley-Tukey transform;
//! other lengths up to [`DIRECT_DFT_LIMIT`] fall back to the O(N²) sum.
//! Both directions are scaled by `1/√N`, so Parseval's identity holds
//! without extra factors.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::synthesis::TimeSeries;

/// Longest non-power-of-two series accepted by [`dft`].
pub const DIRECT_DFT_LIMIT: usize = 4096;

/// Relative tolerance on `f N / f_s` being an integer.
pub const BIN_ALIGNMENT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

fn twiddles(n: usize, direction: Direction) -> Vec<Complex64> {
    let sign = match direction {
        Direction::Forward => -1.0,
        Direction::Inverse => 1.0,
    };
    (0..n / 2)
        .map(|k| {
            let (s, c) = libm::sincos(sign * TAU * k as f64 / n as f64);
            Complex64::new(c, s)
        })
        .collect()
}

/// In-place unitary radix-2 FFT. `buf.len()` must be a power of two.
pub fn fft_in_place(buf: &mut [Complex64], direction: Direction) -> Result<()> {
    let n = buf.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::Configuration {
            constraint: "radix-2 length",
            detail: "FFT length must be a non-zero power of two",
        });
    }
    if n == 1 {
        return Ok(());
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            buf.swap(i, j);
        }
    }
    let w = twiddles(n, direction);
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for block in buf.chunks_exact_mut(len) {
            let (lo, hi) = block.split_at_mut(half);
            for (k, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                let t = *b * w[k * stride];
                *b = *a - t;
                *a += t;
            }
        }
        len <<= 1;
    }
    let scale = 1.0 / libm::sqrt(n as f64);
    for v in buf.iter_mut() {
        *v *= scale;
    }
    Ok(())
}

/// Direct unitary DFT, `X_k = N^{-1/2} Σ_j x_j exp(∓2πi jk/N)`.
pub fn direct_dft(samples: &[Complex64], direction: Direction) -> Vec<Complex64> {
    let n = samples.len();
    let sign = match direction {
        Direction::Forward => -1.0,
        Direction::Inverse => 1.0,
    };
    let scale = 1.0 / libm::sqrt(n as f64);
    (0..n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, x) in samples.iter().enumerate() {
                // reduce jk mod N so the angle stays in [0, 2π)
                let idx = (j * k) % n;
                let (s, c) = libm::sincos(sign * TAU * idx as f64 / n as f64);
                acc += x * Complex64::new(c, s);
            }
            acc * scale
        })
        .collect()
}

/// Spectrum of a uniformly sampled series, bins in FFT order.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencySpectrum {
    pub sample_rate: f64,
    pub bins: Vec<Complex64>,
}

impl FrequencySpectrum {
    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    pub fn resolution(&self) -> f64 {
        self.sample_rate / self.bins.len() as f64
    }

    pub fn nyquist(&self) -> f64 {
        0.5 * self.sample_rate
    }

    /// Signed frequency of bin `k`; bins at and above `N/2` are negative.
    pub fn frequency(&self, k: usize) -> f64 {
        let n = self.bins.len();
        let signed = if k < n / 2 { k as i64 } else { k as i64 - n as i64 };
        signed as f64 * self.resolution()
    }

    /// Bin index holding frequency `freq_hz`.
    ///
    /// Fails with a range error outside `[-f_s/2, f_s/2)` and with a
    /// configuration error when the frequency is not on a bin.
    pub fn bin_for_frequency(&self, freq_hz: f64) -> Result<usize> {
        let nyq = self.nyquist();
        if !(freq_hz >= -nyq && freq_hz < nyq) {
            return Err(Error::Range {
                freq_hz,
                nyquist_hz: nyq,
            });
        }
        let exact = freq_hz / self.resolution();
        let k = libm::round(exact);
        if libm::fabs(exact - k) > BIN_ALIGNMENT_TOLERANCE * k.abs().max(1.0) {
            return Err(Error::Configuration {
                constraint: "bin alignment",
                detail: "requested frequency is not an integer multiple of f_s/N",
            });
        }
        Ok((k as i64).rem_euclid(self.bins.len() as i64) as usize)
    }

    /// `(frequency, value)` pairs in ascending frequency.
    pub fn shifted(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        let n = self.bins.len();
        let half = n / 2;
        (half..n).chain(0..half).map(move |k| (self.frequency(k), self.bins[k]))
    }

    pub fn energy(&self) -> f64 {
        self.bins.iter().map(|b| b.norm_sqr()).sum()
    }
}

/// Unitary forward DFT of a time series.
pub fn dft(series: &TimeSeries) -> Result<FrequencySpectrum> {
    let samples = series.samples();
    let n = samples.len();
    let bins = if n.is_power_of_two() {
        let mut buf = samples.to_vec();
        fft_in_place(&mut buf, Direction::Forward)?;
        buf
    } else if n <= DIRECT_DFT_LIMIT {
        direct_dft(samples, Direction::Forward)
    } else {
        return Err(Error::Configuration {
            constraint: "DFT length",
            detail: "length must be a power of two or at most 4096",
        });
    };
    Ok(FrequencySpectrum {
        sample_rate: series.sample_rate(),
        bins,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn series(samples: Vec<Complex64>) -> TimeSeries {
        TimeSeries::new(0.0, 1.0, samples).unwrap()
    }

    #[test]
    fn constant_goes_to_bin_zero() {
        let s = dft(&series(vec![Complex64::new(2.0, 0.0); 16])).unwrap();
        assert!((s.bins[0].re - 8.0).abs() < 1e-14);
        assert!(s.bins[1..].iter().all(|b| b.norm() < 1e-14));
    }

    #[test]
    fn aligned_tone_is_one_bin() {
        let n = 64;
        let samples = (0..n)
            .map(|j| {
                let (s, c) = libm::sincos(TAU * 5.0 * j as f64 / n as f64);
                Complex64::new(c, s)
            })
            .collect();
        let s = dft(&series(samples)).unwrap();
        for (k, b) in s.bins.iter().enumerate() {
            if k == 5 {
                assert!((b.norm() - 8.0).abs() < 1e-12);
            } else {
                assert!(b.norm() < 1e-12, "bin {k}");
            }
        }
    }

    #[test]
    fn fft_matches_direct_and_inverts() {
        let samples: Vec<Complex64> = (0..32)
            .map(|j| Complex64::new(libm::sin(j as f64 * 0.37), libm::cos(j as f64 * j as f64 * 0.01)))
            .collect();
        let mut fast = samples.clone();
        fft_in_place(&mut fast, Direction::Forward).unwrap();
        let slow = direct_dft(&samples, Direction::Forward);
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).norm() < 1e-13);
        }
        fft_in_place(&mut fast, Direction::Inverse).unwrap();
        for (a, b) in fast.iter().zip(&samples) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn non_power_of_two_uses_direct() {
        let s = dft(&series(vec![Complex64::new(1.0, 0.0); 12])).unwrap();
        assert_eq!(s.len(), 12);
        assert!((s.bins[0].re - 12.0 / libm::sqrt(12.0)).abs() < 1e-13);
        let big = series(vec![Complex64::new(1.0, 0.0); 4097]);
        assert!(dft(&big).is_err());
    }

    #[test]
    fn bin_lookup() {
        let s = FrequencySpectrum {
            sample_rate: 8.0,
            bins: vec![Complex64::new(0.0, 0.0); 8],
        };
        assert_eq!(s.bin_for_frequency(1.0).unwrap(), 1);
        assert_eq!(s.bin_for_frequency(-1.0).unwrap(), 7);
        assert_eq!(s.bin_for_frequency(-4.0).unwrap(), 4);
        assert!(matches!(s.bin_for_frequency(4.0), Err(Error::Range { .. })));
        assert!(matches!(s.bin_for_frequency(1.5), Err(Error::Configuration { .. })));
        let freqs: Vec<f64> = s.shifted().map(|(f, _)| f).collect();
        assert_eq!(freqs, vec![-4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]);
    }
}
