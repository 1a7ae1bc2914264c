//! Run configuration.
//!
//! A run is described by one JSON document. Values are resolved in the
//! order built-in defaults, then the config file, then command-line flags;
//! a later source replaces an earlier one field by field.

use std::fs;
use std::path::{Path, PathBuf};

use gravab_core::constants::{EARTH_MU, EARTH_RADIUS};
use gravab_core::RadiusModel;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Orbit given either by preset name or by explicit apsides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum OrbitSource {
    Preset(String),
    Elements(ExplicitElements),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitElements {
    pub r_perigee: f64,
    pub r_apogee: f64,
    #[serde(default = "earth_mu")]
    pub mu: f64,
    #[serde(default)]
    pub period_override: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthesisConfig {
    /// Modulation periods covered by the record.
    #[serde(default = "one")]
    pub n_periods: u32,
    /// Sample rate and offset frequency, Hz. Both or neither; when absent a
    /// bin-aligned plan is derived from the predicted spectrum.
    #[serde(default)]
    pub sample_rate: Option<f64>,
    #[serde(default)]
    pub offset_freq: Option<f64>,
    /// Signal-to-noise ratio in dB; `None` synthesises a noiseless record.
    #[serde(default)]
    pub snr_db: Option<f64>,
    #[serde(default)]
    pub seed: u64,
}

impl Default for SynthesisConfig {
    fn default() -> Self {
        Self {
            n_periods: 1,
            sample_rate: None,
            offset_freq: None,
            snr_db: None,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimationConfig {
    /// Search interval for α. Defaults to `[0, 2 α_pred + 5]`.
    #[serde(default)]
    pub alpha_bracket: Option<(f64, f64)>,
}

/// Extra files written by the `pipeline` command.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub report: Option<PathBuf>,
    #[serde(default)]
    pub sidebands_csv: Option<PathBuf>,
    #[serde(default)]
    pub sidebands_json: Option<PathBuf>,
    #[serde(default)]
    pub timeseries_csv: Option<PathBuf>,
    #[serde(default)]
    pub dft_csv: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub orbit: OrbitSource,
    /// Preset clock label, or a transition frequency in Hz such as
    /// `"1.42e9"`. Defaults to the preset's first clock.
    #[serde(default)]
    pub clock: Option<String>,
    #[serde(default)]
    pub model: RadiusModel,
    /// Replace any period override with Kepler's third law.
    #[serde(default)]
    pub kepler_period: bool,
    #[serde(default = "earth_radius")]
    pub r_ground: f64,
    #[serde(default)]
    pub synthesis: SynthesisConfig,
    #[serde(default)]
    pub estimation: EstimationConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

fn earth_mu() -> f64 {
    EARTH_MU
}

fn earth_radius() -> f64 {
    EARTH_RADIUS
}

fn one() -> u32 {
    1
}

impl RunConfig {
    pub fn for_preset(name: &str) -> Self {
        Self::new(OrbitSource::Preset(name.to_string()))
    }

    pub fn new(orbit: OrbitSource) -> Self {
        Self {
            orbit,
            clock: None,
            model: RadiusModel::default(),
            kepler_period: false,
            r_ground: EARTH_RADIUS,
            synthesis: SynthesisConfig::default(),
            estimation: EstimationConfig::default(),
            output: OutputConfig::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::ReadConfig {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text).map_err(|source| CliError::ParseConfig {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Checks constraints that do not need the orbit to be built.
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.r_ground.is_finite() && self.r_ground > 0.0) {
            return Err(CliError::config("r_ground must be positive"));
        }
        let s = &self.synthesis;
        if s.n_periods == 0 {
            return Err(CliError::config("synthesis.n_periods must be at least 1"));
        }
        if s.sample_rate.is_some() != s.offset_freq.is_some() {
            return Err(CliError::config(
                "synthesis.sample_rate and synthesis.offset_freq must be given together",
            ));
        }
        if let Some(snr) = s.snr_db {
            if !snr.is_finite() {
                return Err(CliError::config("synthesis.snr_db must be finite"));
            }
        }
        if let Some((lo, hi)) = self.estimation.alpha_bracket {
            if !(lo.is_finite() && hi.is_finite() && lo >= 0.0 && lo < hi) {
                return Err(CliError::config("estimation.alpha_bracket needs 0 <= lo < hi"));
            }
        }
        Ok(())
    }
}
