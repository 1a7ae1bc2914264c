//! Machine-readable run reports.

use gravab_core::estimate::EstimationResult;
use gravab_core::phase::PhaseRecord;
use gravab_core::spectrum::SidebandLine;
use gravab_core::synthesis::{LineComparison, NyquistRequirements};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantsReport {
    pub version: &'static str,
    pub speed_of_light: f64,
    pub planck: f64,
    pub hbar: f64,
    pub electron_mass: f64,
}

impl ConstantsReport {
    pub fn current() -> Self {
        use gravab_core::constants::*;
        Self {
            version: CONSTANTS_VERSION,
            speed_of_light: SPEED_OF_LIGHT,
            planck: PLANCK,
            hbar: HBAR,
            electron_mass: ELECTRON_MASS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodSource {
    Override,
    Kepler,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitReport {
    pub preset: Option<String>,
    pub r_perigee_m: f64,
    pub r_apogee_m: f64,
    pub mu_m3_s2: f64,
    pub r0_m: f64,
    pub semi_amplitude_m: f64,
    pub eccentricity: f64,
    pub period_s: f64,
    pub period_source: PeriodSource,
    pub kepler_period_s: f64,
    pub orbital_freq_hz: f64,
    pub model: &'static str,
    /// Time average of `1/r` over one orbit for the selected model, 1/m.
    pub mean_inverse_radius: f64,
}

/// α recomputed with the other period convention.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlternateAlpha {
    pub period_source: PeriodSource,
    pub period_s: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaReport {
    pub clock: String,
    pub f_ph0_hz: f64,
    pub alpha: f64,
    /// `α / f₀`, s.
    pub alpha_per_hz: f64,
    pub regime: &'static str,
    /// Present only when the two period conventions change α by more than 1%.
    pub alternate: Option<AlternateAlpha>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RedshiftReport {
    /// `μ/(r0 c²)`, relative to a clock at zero potential.
    pub fractional_shift: f64,
    pub carrier_freq_hz: f64,
    pub ground_radius_m: f64,
    /// Gravitational part of the orbit-minus-ground fractional shift.
    pub ground_relative_shift: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseReport {
    pub model: &'static str,
    /// Mixing angle accumulated over one full orbit, rad.
    pub mixing_one_orbit_rad: f64,
    /// Phase breakdown a quarter orbit after perigee (cosine potential).
    pub quarter_orbit: PhaseRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub truncation_rule: &'static str,
    pub n_max: u32,
    pub band_epsilon: f64,
    /// Smallest `n*` holding all but `band_epsilon` of the power.
    pub significant_band: u32,
    pub total_power: f64,
    pub lines: Vec<SidebandLine>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SynthesisReport {
    pub sample_rate_hz: f64,
    pub offset_freq_hz: f64,
    pub n_periods: u32,
    pub n_samples: usize,
    pub snr_db: Option<f64>,
    pub seed: u64,
    pub dft_normalization: &'static str,
}

/// The estimation report written by `estimate`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimateRecord {
    pub alpha_hat: f64,
    pub residual_norm: f64,
    pub n_lines_used: usize,
    pub seed: u64,
}

impl EstimateRecord {
    pub fn new(result: EstimationResult, seed: u64) -> Self {
        Self {
            alpha_hat: result.alpha_hat,
            residual_norm: result.residual_norm,
            n_lines_used: result.n_lines_used,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum EstimationReport {
    Estimated {
        alpha_bracket: (f64, f64),
        #[serde(flatten)]
        record: EstimateRecord,
    },
    Skipped {
        notice: &'static str,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub constants: ConstantsReport,
    pub orbit: OrbitReport,
    pub alpha: AlphaReport,
    pub redshift: RedshiftReport,
    pub phase: PhaseReport,
    pub spectrum: SpectrumReport,
    pub nyquist: NyquistRequirements,
    pub synthesis: SynthesisReport,
    pub estimation: EstimationReport,
    pub comparison: Vec<LineComparison>,
}

/// α and redshift of one clock.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClockAlpha {
    #[serde(flatten)]
    pub alpha: AlphaReport,
    pub redshift: RedshiftReport,
}

/// Output of the `alpha` command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaSummary {
    pub constants_version: &'static str,
    pub orbit: OrbitReport,
    pub clocks: Vec<ClockAlpha>,
}
