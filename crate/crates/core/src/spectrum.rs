//! Sideband multiplet of a phase-modulated clock transition.
//!
//! A phase `α sin(Ωt)` on the excited level expands by the Jacobi-Anger
//! identity into lines at `n Ω` around the carrier with amplitudes
//! `(-1)ⁿ J_n(α)`. The powers `J_n(α)²` sum to one.

use alloc::vec::Vec;

use crate::bessel::bessel_j_all;
use crate::clock::{redshifted_transition_energy, ClockTransition};
use crate::constants::HBAR;
use crate::error::{Error, Result};
use crate::orbit::OrbitalElements;

/// Upper edge of the single-tone regime (a convention, not a physical edge).
pub const SINGLE_TONE_LIMIT: f64 = 0.2;
/// Upper edge of the over-modulated regime (a convention).
pub const OVER_MODULATED_LIMIT: f64 = 20.0;

/// Human-readable form of the default truncation rule.
pub const TRUNCATION_RULE: &str = "n_max = ceil(alpha + 10 + 5 alpha^(1/3))";

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SidebandLine {
    pub n: i64,
    /// `n · f_orb`, Hz.
    pub offset_hz: f64,
    /// `(-1)ⁿ J_n(α)`.
    pub amplitude: f64,
    /// `J_n(α)²`.
    pub power: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SidebandSpectrum {
    pub alpha: f64,
    pub carrier_freq: f64,
    pub orbital_freq: f64,
    pub n_max: u32,
    /// Lines ordered by `n` from `-n_max` to `n_max`.
    pub lines: Vec<SidebandLine>,
}

impl SidebandSpectrum {
    pub fn total_power(&self) -> f64 {
        self.lines.iter().map(|l| l.power).sum()
    }

    pub fn line(&self, n: i64) -> Option<&SidebandLine> {
        let idx = n + self.n_max as i64;
        if idx < 0 {
            return None;
        }
        self.lines.get(idx as usize)
    }

    /// Absolute frequency of line `n`, Hz.
    pub fn line_frequency(&self, n: i64) -> f64 {
        self.carrier_freq + n as f64 * self.orbital_freq
    }
}

/// `ceil(α + 10 + 5 α^{1/3})`, or zero when there is no modulation.
pub fn default_truncation(alpha: f64) -> u32 {
    if alpha == 0.0 {
        0
    } else {
        libm::ceil(alpha + 10.0 + 5.0 * libm::cbrt(alpha)) as u32
    }
}

/// Predicted multiplet for modulation index `alpha`.
///
/// Lines run over `n ∈ [-n_max, n_max]`, with `n_max` defaulting to
/// [`default_truncation`].
pub fn jacobi_anger_spectrum(
    alpha: f64,
    orbital_freq: f64,
    carrier_freq: f64,
    n_max: Option<u32>,
) -> Result<SidebandSpectrum> {
    if !(alpha.is_finite() && alpha >= 0.0) {
        return Err(Error::domain("alpha", "must be finite and non-negative"));
    }
    if !(orbital_freq.is_finite() && orbital_freq > 0.0) {
        return Err(Error::domain("orbital_freq", "must be positive and finite"));
    }
    if !(carrier_freq.is_finite() && carrier_freq > 0.0) {
        return Err(Error::domain("carrier_freq", "must be positive and finite"));
    }
    let n_max = n_max.unwrap_or_else(|| default_truncation(alpha));
    let j = bessel_j_all(n_max, alpha);
    let lines = (-(n_max as i64)..=n_max as i64)
        .map(|n| {
            let jn = j[n.unsigned_abs() as usize];
            // J_{-n} = (-1)ⁿ J_n, so (-1)ⁿ J_n for n < 0 is J_|n|.
            let amplitude = if n < 0 || n % 2 == 0 { jn } else { -jn };
            SidebandLine {
                n,
                offset_hz: n as f64 * orbital_freq,
                amplitude,
                power: jn * jn,
            }
        })
        .collect();
    Ok(SidebandSpectrum {
        alpha,
        carrier_freq,
        orbital_freq,
        n_max,
        lines,
    })
}

/// Multiplet energies `ΔE₀(1 + μ/(r0 c²)) + n ħ Ω` for each requested `n`.
pub fn multiplet_energies(
    transition: &ClockTransition,
    elements: &OrbitalElements,
    n_list: &[i64],
) -> Vec<f64> {
    let (carrier, _) = redshifted_transition_energy(transition, elements);
    let quantum = HBAR * elements.angular_frequency();
    n_list.iter().map(|&n| carrier + n as f64 * quantum).collect()
}

/// Smallest `n*` with `Σ_{|n| ≤ n*} J_n(α)² ≥ 1 - epsilon`.
pub fn significant_band(alpha: f64, epsilon: f64) -> Result<u32> {
    if !(alpha.is_finite() && alpha >= 0.0) {
        return Err(Error::domain("alpha", "must be finite and non-negative"));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::domain("epsilon", "must lie in (0, 1)"));
    }
    if alpha == 0.0 {
        return Ok(0);
    }
    // Search well past the default truncation so tiny epsilons still terminate.
    let limit = default_truncation(alpha) + 20;
    let j = bessel_j_all(limit, alpha);
    let target = 1.0 - epsilon;
    let mut cumulative = j[0] * j[0];
    if cumulative >= target {
        return Ok(0);
    }
    for (n, jn) in j.iter().enumerate().skip(1) {
        cumulative += 2.0 * jn * jn;
        if cumulative >= target {
            return Ok(n as u32);
        }
    }
    Ok(limit)
}

/// Qualitative modulation regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Regime {
    /// `α = 0`: carrier only.
    NoSidebands,
    /// `0 < α ≤ 0.2`: the first pair of sidebands dominates.
    SingleTone,
    /// `0.2 < α ≤ 20`: several orders carry power.
    OverModulated,
    /// `α > 20`: power concentrates near `n ≈ α` and cuts off beyond.
    DeepModulation,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::NoSidebands => "no_sidebands",
            Regime::SingleTone => "single_tone",
            Regime::OverModulated => "over_modulated",
            Regime::DeepModulation => "deep_modulation",
        }
    }
}

pub fn regime_classify(alpha: f64) -> Regime {
    if alpha <= 0.0 {
        Regime::NoSidebands
    } else if alpha <= SINGLE_TONE_LIMIT {
        Regime::SingleTone
    } else if alpha <= OVER_MODULATED_LIMIT {
        Regime::OverModulated
    } else {
        Regime::DeepModulation
    }
}
