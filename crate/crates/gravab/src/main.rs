use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gravab::config::{OrbitSource, OutputFormat, RunConfig};
use gravab::error::{CliError, StageExt};
use gravab::io::{open_output, write_dft_csv, write_json, write_rows, write_sidebands_csv, write_sidebands_json, write_timeseries_csv};
use gravab::pipeline::{self, PipelineOutput};
use gravab::report::{EstimationReport, PeriodSource};
use gravab_core::orbit::radius;
use gravab_core::phase::potential;
use gravab_core::presets::builtin_presets;
use gravab_core::RadiusModel;
use serde::Serialize;

/// Scalar gravitational Aharonov-Bohm modulation of orbiting atomic clocks.
///
/// Settings are taken from built-in defaults, then from `--config`, then
/// from command-line flags; each later source overrides the earlier one.
#[derive(Parser)]
#[command(name = "gravab", version)]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Mission preset (iss, galileo)
    #[arg(long, global = true)]
    preset: Option<String>,
    /// Preset clock label or transition frequency in Hz
    #[arg(long, global = true)]
    clock: Option<String>,
    /// Radius model for r(t) and the potential
    #[arg(long, global = true, value_enum)]
    model: Option<ModelArg>,
    /// JSON run configuration
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file (stdout when absent)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Noise generator seed
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Use Kepler's third law even when the preset fixes the period
    #[arg(long, global = true)]
    kepler_period: bool,
    /// Ground clock radius for the relative redshift, m
    #[arg(long, global = true)]
    r_ground: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Exact,
    Paper,
}

impl From<ModelArg> for RadiusModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Exact => RadiusModel::Exact,
            ModelArg::Paper => RadiusModel::Paper,
        }
    }
}

#[derive(Args, Default)]
struct SynthArgs {
    /// Modulation periods in the record
    #[arg(long)]
    n_periods: Option<u32>,
    /// Sample rate, Hz (needs --offset-freq)
    #[arg(long)]
    sample_rate: Option<f64>,
    /// Beat offset frequency, Hz (needs --sample-rate)
    #[arg(long)]
    offset_freq: Option<f64>,
    /// Add white noise at this signal-to-noise ratio, dB
    #[arg(long)]
    snr_db: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// List built-in mission presets
    Presets,
    /// Tabulate r(t) and the potential over one orbit
    Orbit {
        /// Intervals per orbit
        #[arg(long, default_value_t = 360)]
        samples: usize,
    },
    /// Modulation index and redshift for each clock
    Alpha,
    /// Predicted sideband multiplet
    Spectrum {
        /// Highest sideband order (default: truncation rule)
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Synthesised beat signal, or its spectrum with --dft
    Synth {
        #[command(flatten)]
        synth: SynthArgs,
        /// Write the unitary DFT instead of the time series
        #[arg(long)]
        dft: bool,
    },
    /// Recover alpha from a synthesised signal
    Estimate {
        #[command(flatten)]
        synth: SynthArgs,
        /// Search interval for alpha
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        alpha_bracket: Option<Vec<f64>>,
    },
    /// Full report: orbit, alpha, spectrum, synthesis, estimation
    Pipeline {
        #[command(flatten)]
        synth: SynthArgs,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        alpha_bracket: Option<Vec<f64>>,
    },
}

fn build_config(common: &CommonArgs, synth: Option<&SynthArgs>, bracket: Option<&[f64]>) -> Result<RunConfig, CliError> {
    let mut cfg = match (&common.config, &common.preset) {
        (Some(path), _) => RunConfig::load(path)?,
        (None, Some(name)) => RunConfig::for_preset(name),
        (None, None) => return Err(CliError::config("no orbit: pass --preset or --config")),
    };
    if let Some(name) = &common.preset {
        cfg.orbit = OrbitSource::Preset(name.clone());
    }
    if let Some(c) = &common.clock {
        cfg.clock = Some(c.clone());
    }
    if let Some(m) = common.model {
        cfg.model = m.into();
    }
    if let Some(seed) = common.seed {
        cfg.synthesis.seed = seed;
    }
    if common.kepler_period {
        cfg.kepler_period = true;
    }
    if let Some(r) = common.r_ground {
        cfg.r_ground = r;
    }
    if let Some(s) = synth {
        if let Some(n) = s.n_periods {
            cfg.synthesis.n_periods = n;
        }
        if s.sample_rate.is_some() {
            cfg.synthesis.sample_rate = s.sample_rate;
        }
        if s.offset_freq.is_some() {
            cfg.synthesis.offset_freq = s.offset_freq;
        }
        if s.snr_db.is_some() {
            cfg.synthesis.snr_db = s.snr_db;
        }
    }
    if let Some(&[lo, hi]) = bracket {
        cfg.estimation.alpha_bracket = Some((lo, hi));
    }
    if common.out.is_some() {
        cfg.output.report = common.out.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

#[derive(Serialize)]
struct PresetRow {
    preset: String,
    clock: String,
    f_ph0_hz: f64,
    r_perigee_m: f64,
    r_apogee_m: f64,
    eccentricity: f64,
    period_s: f64,
    period_source: PeriodSource,
}

#[derive(Serialize)]
struct OrbitRow {
    t_s: f64,
    r_m: f64,
    potential_m2_s2: f64,
}

#[derive(Serialize)]
struct AlphaRow<'a> {
    clock: &'a str,
    f_ph0_hz: f64,
    alpha: f64,
    alpha_per_hz: f64,
    regime: &'a str,
    period_s: f64,
    alpha_alternate_period: Option<f64>,
    fractional_shift: f64,
    ground_relative_shift: f64,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let common = &cli.common;
    let out = common.out.as_deref();
    match &cli.command {
        Command::Presets => {
            let rows: Vec<PresetRow> = builtin_presets()
                .into_iter()
                .flat_map(|p| {
                    let el = p.elements;
                    p.clocks.into_iter().map(move |c| PresetRow {
                        preset: p.name.clone(),
                        clock: c.label,
                        f_ph0_hz: c.f_ph0,
                        r_perigee_m: el.r_perigee(),
                        r_apogee_m: el.r_apogee(),
                        eccentricity: el.eccentricity(),
                        period_s: el.period(),
                        period_source: if el.period_override().is_some() {
                            PeriodSource::Override
                        } else {
                            PeriodSource::Kepler
                        },
                    })
                })
                .collect();
            write_rows(&rows, common.format.unwrap_or_default(), open_output(out)?)
        }
        Command::Orbit { samples } => {
            if *samples == 0 {
                return Err(CliError::config("--samples must be at least 1"));
            }
            let cfg = build_config(common, None, None)?;
            let elements = orbit_only(&cfg)?;
            let rows = (0..=*samples)
                .map(|k| {
                    let t = elements.period() * k as f64 / *samples as f64;
                    Ok(OrbitRow {
                        t_s: t,
                        r_m: radius(&elements, t, cfg.model).stage("orbit")?,
                        potential_m2_s2: potential(&elements, t, cfg.model).stage("orbit")?,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            write_rows(&rows, common.format.unwrap_or_default(), open_output(out)?)
        }
        Command::Alpha => {
            let cfg = build_config(common, None, None)?;
            let summary = pipeline::alpha_summary(&cfg)?;
            match common.format.unwrap_or(OutputFormat::Json) {
                OutputFormat::Json => write_json(&summary, open_output(out)?),
                OutputFormat::Csv => {
                    let rows: Vec<AlphaRow> = summary
                        .clocks
                        .iter()
                        .map(|c| AlphaRow {
                            clock: &c.alpha.clock,
                            f_ph0_hz: c.alpha.f_ph0_hz,
                            alpha: c.alpha.alpha,
                            alpha_per_hz: c.alpha.alpha_per_hz,
                            regime: c.alpha.regime,
                            period_s: summary.orbit.period_s,
                            alpha_alternate_period: c.alpha.alternate.as_ref().map(|a| a.alpha),
                            fractional_shift: c.redshift.fractional_shift,
                            ground_relative_shift: c.redshift.ground_relative_shift,
                        })
                        .collect();
                    write_rows(&rows, OutputFormat::Csv, open_output(out)?)
                }
            }
        }
        Command::Spectrum { n_max } => {
            let cfg = build_config(common, None, None)?;
            let spectrum = pipeline::predicted_spectrum(&pipeline::resolve(&cfg)?, *n_max)?;
            match common.format.unwrap_or_default() {
                OutputFormat::Csv => write_sidebands_csv(&spectrum, open_output(out)?),
                OutputFormat::Json => write_sidebands_json(&spectrum, open_output(out)?),
            }
        }
        Command::Synth { synth, dft } => {
            require_csv(common.format, "synth")?;
            let cfg = build_config(common, Some(synth), None)?;
            let run = pipeline::resolve(&cfg)?;
            let (plan, series) = pipeline::synthesize(&cfg, &run)?;
            if *dft {
                let (spectrum, _) = pipeline::measure(&run, &plan, &series)?;
                write_dft_csv(&spectrum, open_output(out)?)
            } else {
                write_timeseries_csv(&series, open_output(out)?)
            }
        }
        Command::Estimate { synth, alpha_bracket } => {
            require_json(common.format, "estimate")?;
            let cfg = build_config(common, Some(synth), alpha_bracket.as_deref())?;
            let run = pipeline::resolve(&cfg)?;
            let (plan, series) = pipeline::synthesize(&cfg, &run)?;
            let (_, lines) = pipeline::measure(&run, &plan, &series)?;
            match pipeline::estimate(&cfg, &run, &lines)? {
                EstimationReport::Estimated { record, .. } => write_json(&record, open_output(out)?),
                skipped => write_json(&skipped, open_output(out)?),
            }
        }
        Command::Pipeline { synth, alpha_bracket } => {
            require_json(common.format, "pipeline")?;
            let cfg = build_config(common, Some(synth), alpha_bracket.as_deref())?;
            let output: PipelineOutput = pipeline::run_pipeline(&cfg)?;
            pipeline::write_pipeline_outputs(&output, &cfg.output)
        }
    }
}

fn orbit_only(cfg: &RunConfig) -> Result<gravab_core::OrbitalElements, CliError> {
    // The orbit table needs no clock, so fall back to a nominal frequency
    // when none is configured.
    let mut probe = cfg.clone();
    if probe.clock.is_none() && matches!(probe.orbit, OrbitSource::Elements(_)) {
        probe.clock = Some("1".into());
    }
    Ok(pipeline::resolve(&probe)?.elements)
}

fn require_csv(format: Option<OutputFormat>, cmd: &str) -> Result<(), CliError> {
    match format {
        Some(OutputFormat::Json) => Err(CliError::config(format!("`{cmd}` writes CSV only"))),
        _ => Ok(()),
    }
}

fn require_json(format: Option<OutputFormat>, cmd: &str) -> Result<(), CliError> {
    match format {
        Some(OutputFormat::Csv) => Err(CliError::config(format!("`{cmd}` writes a JSON report only"))),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
