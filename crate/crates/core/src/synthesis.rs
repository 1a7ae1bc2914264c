//! Brute-force synthesis of the clock-comparison beat and spectral line
//! extraction.
//!
//! The beat is simulated in a downconverted frame: a tone at `offset_freq`
//! carrying the phase modulation `α sin(2π f_orb t)`. The modulation
//! structure does not depend on where the carrier sits, and sampling the
//! physical GHz carrier would only cost precision. Frequencies are required
//! to fall exactly on DFT bins, so no window is applied.

use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::ops::RangeInclusive;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::fft::FrequencySpectrum;
use crate::spectrum::{significant_band, SidebandSpectrum};

/// Power fraction allowed outside the band checked against Nyquist.
pub const NYQUIST_BAND_EPSILON: f64 = 1e-6;

/// Uniformly sampled complex signal.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    t0: f64,
    dt: f64,
    samples: Vec<Complex64>,
}

impl TimeSeries {
    pub fn new(t0: f64, dt: f64, samples: Vec<Complex64>) -> Result<Self> {
        if !t0.is_finite() {
            return Err(Error::domain("t0", "must be finite"));
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::domain("dt", "must be positive and finite"));
        }
        if samples.len() < 2 {
            return Err(Error::domain("samples", "need at least two samples"));
        }
        if samples.iter().any(|s| !(s.re.is_finite() && s.im.is_finite())) {
            return Err(Error::domain("samples", "must be finite"));
        }
        Ok(Self { t0, dt, samples })
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn sample_rate(&self) -> f64 {
        1.0 / self.dt
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.dt
    }

    /// Mean of `|x_k|²`.
    pub fn mean_power(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() / self.samples.len() as f64
    }

    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).sum()
    }
}

/// Integer count `value` within relative tolerance, or `None`.
fn as_integer(value: f64) -> Option<u64> {
    let k = libm::round(value);
    if k >= 0.0 && libm::fabs(value - k) <= 1e-9 * k.max(1.0) {
        Some(k as u64)
    } else {
        None
    }
}

/// Synthesises `exp(i (2π f_off t + α sin(2π f_orb t)))` over `n_periods`
/// modulation periods at `sample_rate`.
///
/// Preconditions, reported as configuration errors:
/// * `N = n_periods · f_s / f_orb` is an integer of at least 2;
/// * `f_off` lies on a bin, i.e. `f_off N / f_s` is an integer;
/// * `f_s > 2 (f_off + n* f_orb)` with `n*` the band holding all but
///   `1e-6` of the power.
pub fn synthesize_beat(
    alpha: f64,
    orbital_freq: f64,
    offset_freq: f64,
    sample_rate: f64,
    n_periods: u32,
) -> Result<TimeSeries> {
    if !(alpha.is_finite() && alpha >= 0.0) {
        return Err(Error::domain("alpha", "must be finite and non-negative"));
    }
    if !(orbital_freq.is_finite() && orbital_freq > 0.0) {
        return Err(Error::domain("orbital_freq", "must be positive and finite"));
    }
    if !(offset_freq.is_finite() && offset_freq >= 0.0) {
        return Err(Error::domain("offset_freq", "must be finite and non-negative"));
    }
    if !(sample_rate.is_finite() && sample_rate > 0.0) {
        return Err(Error::domain("sample_rate", "must be positive and finite"));
    }
    if n_periods == 0 {
        return Err(Error::domain("n_periods", "must be at least 1"));
    }

    let n = as_integer(n_periods as f64 * sample_rate / orbital_freq)
        .filter(|&n| n >= 2)
        .ok_or(Error::Configuration {
            constraint: "bin alignment",
            detail: "n_periods * sample_rate / orbital_freq must be an integer >= 2",
        })?;
    let offset_bin = as_integer(offset_freq * n as f64 / sample_rate).ok_or(Error::Configuration {
        constraint: "bin alignment",
        detail: "offset_freq must be an integer multiple of sample_rate / N",
    })?;
    let band = significant_band(alpha, NYQUIST_BAND_EPSILON)?;
    if sample_rate <= 2.0 * (offset_freq + band as f64 * orbital_freq) {
        return Err(Error::Configuration {
            constraint: "Nyquist",
            detail: "sample_rate must exceed 2 (offset_freq + n* orbital_freq)",
        });
    }

    // Phases are reduced in integers, (k m mod N)/N, so every sample sits
    // exactly on the bin grid.
    let n_periods = n_periods as u64;
    let samples = (0..n)
        .map(|k| {
            let carrier = ((k * offset_bin) % n) as f64 / n as f64;
            let orbit = ((k * n_periods) % n) as f64 / n as f64;
            let phase = TAU * carrier + alpha * libm::sin(TAU * orbit);
            let (s, c) = libm::sincos(phase);
            Complex64::new(c, s)
        })
        .collect();
    TimeSeries::new(0.0, 1.0 / sample_rate, samples)
}

/// Adds circular complex Gaussian noise at the given signal-to-noise ratio
/// (dB, relative to the series' mean power).
pub fn add_white_noise<R>(series: &mut TimeSeries, snr_db: f64, rng: &mut R) -> Result<()>
where
    R: Rng + ?Sized,
{
    if !snr_db.is_finite() {
        return Err(Error::domain("snr_db", "must be finite"));
    }
    let noise_power = series.mean_power() / libm::pow(10.0, snr_db / 10.0);
    let sigma = libm::sqrt(0.5 * noise_power);
    for s in series.samples.iter_mut() {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        *s += Complex64::new(sigma * re, sigma * im);
    }
    Ok(())
}

/// One extracted spectral line.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MeasuredLine {
    pub n: i64,
    /// `|X_k| / √N`, an estimate of `|J_n(α)|`.
    pub amplitude: f64,
}

/// Reads the magnitude at `offset_freq + n · orbital_freq` for each `n`.
///
/// With the unitary transform a unit tone has bin magnitude `√N`; the
/// result is divided by `√N` so it estimates `|J_n(α)|` directly.
pub fn extract_sideband_amplitudes(
    spectrum: &FrequencySpectrum,
    offset_freq: f64,
    orbital_freq: f64,
    n_range: RangeInclusive<i64>,
) -> Result<Vec<MeasuredLine>> {
    let norm = 1.0 / libm::sqrt(spectrum.len() as f64);
    n_range
        .map(|n| {
            let k = spectrum.bin_for_frequency(offset_freq + n as f64 * orbital_freq)?;
            Ok(MeasuredLine {
                n,
                amplitude: spectrum.bins[k].norm() * norm,
            })
        })
        .collect()
}

/// Predicted against measured magnitude for one line.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LineComparison {
    pub n: i64,
    /// `|J_n(α)|` from the predicted spectrum.
    pub predicted: f64,
    pub measured: f64,
    /// `measured - predicted`.
    pub deviation: f64,
}

/// Pairs each measured line with the predicted magnitude of the same order.
/// Orders beyond the predicted truncation are compared against zero.
pub fn compare_lines(predicted: &SidebandSpectrum, measured: &[MeasuredLine]) -> Vec<LineComparison> {
    measured
        .iter()
        .map(|m| {
            let p = predicted.line(m.n).map_or(0.0, |l| libm::fabs(l.amplitude));
            LineComparison {
                n: m.n,
                predicted: p,
                measured: m.amplitude,
                deviation: m.amplitude - p,
            }
        })
        .collect()
}

/// Sampling cadence needed to resolve the strongest sidebands.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NyquistRequirements {
    /// `α f_orb`, Hz: the strongest sidebands sit near `n ≈ α`.
    pub peak_sideband_freq: f64,
    /// Twice the peak sideband frequency, Hz.
    pub min_sample_rate: f64,
    /// `1 / min_sample_rate`, s. `None` when there are no sidebands and the
    /// interval is unbounded.
    pub max_averaging_interval: Option<f64>,
}

pub fn nyquist_requirements(alpha: f64, orbital_freq: f64) -> Result<NyquistRequirements> {
    if !(alpha.is_finite() && alpha >= 0.0) {
        return Err(Error::domain("alpha", "must be finite and non-negative"));
    }
    if !(orbital_freq.is_finite() && orbital_freq > 0.0) {
        return Err(Error::domain("orbital_freq", "must be positive and finite"));
    }
    let peak = alpha * orbital_freq;
    let min_rate = 2.0 * peak;
    Ok(NyquistRequirements {
        peak_sideband_freq: peak,
        min_sample_rate: min_rate,
        max_averaging_interval: (min_rate > 0.0).then(|| 1.0 / min_rate),
    })
}

/// Bin-aligned synthesis parameters for a given modulation.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SynthesisPlan {
    pub sample_rate: f64,
    pub offset_freq: f64,
    pub n_periods: u32,
    pub n_samples: usize,
}

/// Picks a power-of-two record covering `n_periods` modulation periods with
/// the whole significant band on positive frequencies below Nyquist.
pub fn plan_synthesis(alpha: f64, orbital_freq: f64, n_periods: u32) -> Result<SynthesisPlan> {
    if n_periods == 0 {
        return Err(Error::domain("n_periods", "must be at least 1"));
    }
    if !(orbital_freq.is_finite() && orbital_freq > 0.0) {
        return Err(Error::domain("orbital_freq", "must be positive and finite"));
    }
    let band = significant_band(alpha, NYQUIST_BAND_EPSILON)? as usize;
    let p = n_periods as usize;
    let offset_bin = p * (band + 8);
    let n_samples = (2 * (offset_bin + p * band) + 1).next_power_of_two().max(64);
    let resolution = orbital_freq / n_periods as f64;
    Ok(SynthesisPlan {
        sample_rate: n_samples as f64 * resolution,
        offset_freq: offset_bin as f64 * resolution,
        n_periods,
        n_samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fft::dft;
    use alloc::vec;

    #[test]
    fn series_validation() {
        let one = vec![Complex64::new(1.0, 0.0)];
        assert!(TimeSeries::new(0.0, 1.0, one).is_err());
        let two = vec![Complex64::new(1.0, 0.0); 2];
        assert!(TimeSeries::new(0.0, 0.0, two.clone()).is_err());
        let bad = vec![Complex64::new(f64::NAN, 0.0); 2];
        assert!(TimeSeries::new(0.0, 1.0, bad).is_err());
        assert!(TimeSeries::new(0.0, 1.0, two).is_ok());
    }

    #[test]
    fn unmodulated_is_pure_tone() {
        let s = synthesize_beat(0.0, 1.0, 16.0, 128.0, 1).unwrap();
        let spec = dft(&s).unwrap();
        for (k, b) in spec.bins.iter().enumerate() {
            if k == 16 {
                assert!((b.norm() - libm::sqrt(128.0)).abs() < 1e-12);
            } else {
                assert!(b.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn samples_have_unit_magnitude() {
        let s = synthesize_beat(3.7, 1.0, 32.0, 128.0, 1).unwrap();
        assert!(s.samples().iter().all(|x| (x.norm() - 1.0).abs() < 1e-15));
    }

    #[test]
    fn configuration_errors() {
        // N not an integer
        assert!(matches!(
            synthesize_beat(1.0, 3.0, 10.0, 128.0, 1),
            Err(Error::Configuration { constraint: "bin alignment", .. })
        ));
        // offset between bins
        assert!(matches!(
            synthesize_beat(1.0, 1.0, 10.5, 128.0, 1),
            Err(Error::Configuration { constraint: "bin alignment", .. })
        ));
        // band reaches past Nyquist
        assert!(matches!(
            synthesize_beat(3.7, 1.0, 60.0, 128.0, 1),
            Err(Error::Configuration { constraint: "Nyquist", .. })
        ));
    }

    #[test]
    fn extraction_out_of_band() {
        let s = synthesize_beat(1.0, 1.0, 16.0, 64.0, 1).unwrap();
        let spec = dft(&s).unwrap();
        assert!(matches!(
            extract_sideband_amplitudes(&spec, 16.0, 1.0, 0..=20),
            Err(Error::Range { .. })
        ));
    }

    #[test]
    fn unmodulated_sidebands_vanish() {
        let s = synthesize_beat(0.0, 1.0, 16.0, 64.0, 1).unwrap();
        let spec = dft(&s).unwrap();
        let lines = extract_sideband_amplitudes(&spec, 16.0, 1.0, -8..=8).unwrap();
        for l in lines {
            if l.n == 0 {
                assert!((l.amplitude - 1.0).abs() < 1e-12);
            } else {
                assert!(l.amplitude <= 1e-10);
            }
        }
    }

    #[test]
    fn nyquist_values() {
        let g = nyquist_requirements(1699.0, 21.5e-6).unwrap();
        assert!((g.peak_sideband_freq - 36.5e-3).abs() < 1.5e-3);
        let iv = g.max_averaging_interval.unwrap();
        assert!((13.0..=14.0).contains(&iv));

        let iss = nyquist_requirements(23.8, 1.85e-4).unwrap();
        assert!((iss.peak_sideband_freq - 4.403e-3).abs() < 1e-6);
        assert!((iss.max_averaging_interval.unwrap() - 113.56).abs() < 0.01);

        let none = nyquist_requirements(0.0, 1e-4).unwrap();
        assert_eq!(none.peak_sideband_freq, 0.0);
        assert_eq!(none.max_averaging_interval, None);
    }

    #[test]
    fn plan_is_valid_for_synthesis() {
        for alpha in [0.0, 0.5, 3.7, 23.8] {
            let p = plan_synthesis(alpha, 2e-4, 2).unwrap();
            let s = synthesize_beat(alpha, 2e-4, p.offset_freq, p.sample_rate, 2).unwrap();
            assert_eq!(s.len(), p.n_samples);
            assert!(p.n_samples.is_power_of_two());
        }
    }

    #[test]
    fn comparison_pairs_orders() {
        let predicted = crate::spectrum::jacobi_anger_spectrum(1.0, 1.0, 10.0, Some(2)).unwrap();
        let measured = [
            MeasuredLine { n: -1, amplitude: 0.45 },
            MeasuredLine { n: 3, amplitude: 0.02 },
        ];
        let rows = compare_lines(&predicted, &measured);
        let j1 = crate::bessel::bessel_j(1, 1.0);
        assert!((rows[0].predicted - j1).abs() < 1e-15);
        assert_eq!(rows[0].deviation, 0.45 - rows[0].predicted);
        assert_eq!(rows[1].predicted, 0.0);
    }
}
