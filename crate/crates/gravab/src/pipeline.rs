//! Orbit → α → spectrum → synthesis → estimation.

use gravab_core::clock::{analytic_mixing_phase, ground_relative_shift, redshifted_frequency};
use gravab_core::estimate::estimate_modulation_index;
use gravab_core::fft::{dft, FrequencySpectrum};
use gravab_core::orbit::{kepler_period, time_average_inverse_radius};
use gravab_core::phase::{mixing_angle, modulation_index, modulation_index_per_hz, redshift_factor};
use gravab_core::presets::{find_preset, PresetClock};
use gravab_core::spectrum::{
    jacobi_anger_spectrum, regime_classify, significant_band, TRUNCATION_RULE,
};
use gravab_core::synthesis::{
    add_white_noise, compare_lines, extract_sideband_amplitudes, nyquist_requirements,
    plan_synthesis, synthesize_beat, MeasuredLine, SynthesisPlan, NYQUIST_BAND_EPSILON,
};
use gravab_core::{ClockTransition, OrbitalElements, RadiusModel, SidebandSpectrum, TimeSeries};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{OrbitSource, OutputConfig, RunConfig};
use crate::error::{CliError, StageExt};
use crate::io::{open_output, write_dft_csv, write_json, write_sidebands_csv, write_sidebands_json, write_timeseries_csv};
use crate::report::*;

/// Quadrature nodes for the mean of `1/r`.
const MEAN_RADIUS_NODES: usize = 1 << 14;

/// Relative α difference above which both period conventions are reported.
pub const ALTERNATE_ALPHA_THRESHOLD: f64 = 0.01;

pub const ESTIMATION_SKIPPED: &str =
    "alpha = 0: the spectrum is a single carrier line, there is nothing to estimate";

/// Orbit and clock after presets and overrides are applied.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedRun {
    pub preset: Option<String>,
    /// Elements as configured, before `kepler_period` is applied.
    pub configured: OrbitalElements,
    /// Elements used for the run.
    pub elements: OrbitalElements,
    pub clock_label: String,
    pub transition: ClockTransition,
}

fn orbit_and_clocks(cfg: &RunConfig) -> Result<(Option<String>, OrbitalElements, Vec<PresetClock>), CliError> {
    cfg.validate()?;
    match &cfg.orbit {
        OrbitSource::Preset(name) => {
            let p = find_preset(name).ok_or_else(|| {
                CliError::config(format!("unknown preset `{name}` (known: iss, galileo)"))
            })?;
            Ok((Some(p.name), p.elements, p.clocks))
        }
        OrbitSource::Elements(e) => {
            let el = OrbitalElements::from_apsides(e.r_perigee, e.r_apogee, e.mu, e.period_override)
                .stage("orbit")?;
            Ok((None, el, Vec::new()))
        }
    }
}

fn make_run(
    preset: Option<String>,
    configured: &OrbitalElements,
    kepler: bool,
    label: String,
    f_ph0: f64,
) -> Result<ResolvedRun, CliError> {
    let elements = if kepler {
        configured.with_kepler_period()
    } else {
        *configured
    };
    Ok(ResolvedRun {
        preset,
        configured: *configured,
        elements,
        clock_label: label,
        transition: ClockTransition::new(f_ph0).stage("clock")?,
    })
}

fn pick_clock(choice: &str, clocks: &[PresetClock]) -> Result<(String, f64), CliError> {
    if let Some(c) = clocks.iter().find(|c| c.label.eq_ignore_ascii_case(choice)) {
        return Ok((c.label.clone(), c.f_ph0));
    }
    match choice.parse::<f64>() {
        Ok(f) => Ok((choice.to_string(), f)),
        Err(_) => {
            let known: Vec<&str> = clocks.iter().map(|c| c.label.as_str()).collect();
            Err(CliError::config(format!(
                "unknown clock `{choice}`: give a frequency in Hz or one of [{}]",
                known.join(", ")
            )))
        }
    }
}

/// Resolves the single clock of a run: the configured one, else the
/// preset's first clock.
pub fn resolve(cfg: &RunConfig) -> Result<ResolvedRun, CliError> {
    let (preset, el, clocks) = orbit_and_clocks(cfg)?;
    let (label, f) = match &cfg.clock {
        Some(choice) => pick_clock(choice, &clocks)?,
        None => clocks
            .first()
            .map(|c| (c.label.clone(), c.f_ph0))
            .ok_or_else(|| CliError::config("no clock selected: give a transition frequency in Hz"))?,
    };
    make_run(preset, &el, cfg.kepler_period, label, f)
}

/// One run per clock: the configured clock, or every preset clock ordered
/// by label.
pub fn resolve_all(cfg: &RunConfig) -> Result<Vec<ResolvedRun>, CliError> {
    if cfg.clock.is_some() {
        return Ok(vec![resolve(cfg)?]);
    }
    let (preset, el, mut clocks) = orbit_and_clocks(cfg)?;
    if clocks.is_empty() {
        return Err(CliError::config("no clock selected: give a transition frequency in Hz"));
    }
    clocks.sort_by(|a, b| a.label.cmp(&b.label));
    clocks
        .into_iter()
        .map(|c| make_run(preset.clone(), &el, cfg.kepler_period, c.label, c.f_ph0))
        .collect()
}

fn period_source(el: &OrbitalElements) -> PeriodSource {
    if el.period_override().is_some() {
        PeriodSource::Override
    } else {
        PeriodSource::Kepler
    }
}

pub fn orbit_report(run: &ResolvedRun, model: RadiusModel) -> Result<OrbitReport, CliError> {
    let el = &run.elements;
    Ok(OrbitReport {
        preset: run.preset.clone(),
        r_perigee_m: el.r_perigee(),
        r_apogee_m: el.r_apogee(),
        mu_m3_s2: el.mu(),
        r0_m: el.r0(),
        semi_amplitude_m: el.semi_amplitude(),
        eccentricity: el.eccentricity(),
        period_s: el.period(),
        period_source: period_source(el),
        kepler_period_s: kepler_period(el.semi_major_axis(), el.mu()),
        orbital_freq_hz: el.orbital_frequency(),
        model: model.name(),
        mean_inverse_radius: time_average_inverse_radius(el, model, MEAN_RADIUS_NODES).stage("orbit")?,
    })
}

pub fn alpha_report(run: &ResolvedRun) -> AlphaReport {
    let alpha = modulation_index(&run.transition, &run.elements);
    let alternate = run.configured.period_override().and_then(|_| {
        let other = match period_source(&run.elements) {
            PeriodSource::Override => run.configured.with_kepler_period(),
            PeriodSource::Kepler => run.configured,
        };
        let other_alpha = modulation_index(&run.transition, &other);
        ((other_alpha / alpha - 1.0).abs() > ALTERNATE_ALPHA_THRESHOLD).then(|| AlternateAlpha {
            period_source: period_source(&other),
            period_s: other.period(),
            alpha: other_alpha,
        })
    });
    AlphaReport {
        clock: run.clock_label.clone(),
        f_ph0_hz: run.transition.f_ph0(),
        alpha,
        alpha_per_hz: modulation_index_per_hz(&run.elements),
        regime: regime_classify(alpha).name(),
        alternate,
    }
}

pub fn redshift_report(run: &ResolvedRun, r_ground: f64) -> Result<RedshiftReport, CliError> {
    Ok(RedshiftReport {
        fractional_shift: redshift_factor(&run.elements),
        carrier_freq_hz: redshifted_frequency(&run.transition, &run.elements),
        ground_radius_m: r_ground,
        ground_relative_shift: ground_relative_shift(&run.elements, r_ground).stage("redshift")?,
    })
}

pub fn phase_report(run: &ResolvedRun, model: RadiusModel) -> Result<PhaseReport, CliError> {
    let el = &run.elements;
    Ok(PhaseReport {
        model: model.name(),
        mixing_one_orbit_rad: analytic_mixing_phase(&run.transition, el, 0.0, el.period(), model)
            .stage("phase")?,
        quarter_orbit: mixing_angle(&run.transition, el, 0.25 * el.period()),
    })
}

pub fn alpha_summary(cfg: &RunConfig) -> Result<AlphaSummary, CliError> {
    let runs = resolve_all(cfg)?;
    let clocks = runs
        .iter()
        .map(|run| {
            Ok(ClockAlpha {
                alpha: alpha_report(run),
                redshift: redshift_report(run, cfg.r_ground)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(AlphaSummary {
        constants_version: gravab_core::constants::CONSTANTS_VERSION,
        orbit: orbit_report(&runs[0], cfg.model)?,
        clocks,
    })
}

/// Predicted multiplet, carrier at the redshifted transition frequency.
pub fn predicted_spectrum(run: &ResolvedRun, n_max: Option<u32>) -> Result<SidebandSpectrum, CliError> {
    let alpha = modulation_index(&run.transition, &run.elements);
    jacobi_anger_spectrum(
        alpha,
        run.elements.orbital_frequency(),
        redshifted_frequency(&run.transition, &run.elements),
        n_max,
    )
    .stage("spectrum")
}

/// Synthesises the (optionally noisy) beat signal for the run.
pub fn synthesize(cfg: &RunConfig, run: &ResolvedRun) -> Result<(SynthesisPlan, TimeSeries), CliError> {
    let alpha = modulation_index(&run.transition, &run.elements);
    let f_orb = run.elements.orbital_frequency();
    let s = &cfg.synthesis;
    let mut plan = match (s.sample_rate, s.offset_freq) {
        (Some(sample_rate), Some(offset_freq)) => SynthesisPlan {
            sample_rate,
            offset_freq,
            n_periods: s.n_periods,
            n_samples: 0,
        },
        _ => plan_synthesis(alpha, f_orb, s.n_periods).stage("synthesis")?,
    };
    let mut series = synthesize_beat(alpha, f_orb, plan.offset_freq, plan.sample_rate, plan.n_periods)
        .stage("synthesis")?;
    plan.n_samples = series.len();
    if let Some(snr) = s.snr_db {
        let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
        add_white_noise(&mut series, snr, &mut rng).stage("noise")?;
    }
    Ok((plan, series))
}

/// DFT of the record and the line magnitudes over the significant band
/// (at least `|n| ≤ 2`).
pub fn measure(
    run: &ResolvedRun,
    plan: &SynthesisPlan,
    series: &TimeSeries,
) -> Result<(FrequencySpectrum, Vec<MeasuredLine>), CliError> {
    let alpha = modulation_index(&run.transition, &run.elements);
    let band = significant_band(alpha, NYQUIST_BAND_EPSILON).stage("spectrum")?.max(2) as i64;
    let spectrum = dft(series).stage("dft")?;
    let lines = extract_sideband_amplitudes(&spectrum, plan.offset_freq, run.elements.orbital_frequency(), -band..=band)
        .stage("extraction")?;
    Ok((spectrum, lines))
}

pub fn default_bracket(alpha: f64) -> (f64, f64) {
    (0.0, 2.0 * alpha + 5.0)
}

pub fn estimate(cfg: &RunConfig, run: &ResolvedRun, lines: &[MeasuredLine]) -> Result<EstimationReport, CliError> {
    let alpha = modulation_index(&run.transition, &run.elements);
    if alpha == 0.0 {
        return Ok(EstimationReport::Skipped {
            notice: ESTIMATION_SKIPPED,
        });
    }
    let bracket = cfg.estimation.alpha_bracket.unwrap_or_else(|| default_bracket(alpha));
    let result = estimate_modulation_index(lines, bracket).stage("estimation")?;
    Ok(EstimationReport::Estimated {
        alpha_bracket: bracket,
        record: EstimateRecord::new(result, cfg.synthesis.seed),
    })
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub report: Report,
    pub spectrum: SidebandSpectrum,
    pub series: TimeSeries,
    pub dft: FrequencySpectrum,
}

pub fn run_pipeline(cfg: &RunConfig) -> Result<PipelineOutput, CliError> {
    let run = resolve(cfg)?;
    let alpha = alpha_report(&run);
    let spectrum = predicted_spectrum(&run, None)?;
    let (plan, series) = synthesize(cfg, &run)?;
    let (dft, lines) = measure(&run, &plan, &series)?;
    let estimation = estimate(cfg, &run, &lines)?;

    let report = Report {
        constants: ConstantsReport::current(),
        orbit: orbit_report(&run, cfg.model)?,
        redshift: redshift_report(&run, cfg.r_ground)?,
        phase: phase_report(&run, cfg.model)?,
        spectrum: SpectrumReport {
            truncation_rule: TRUNCATION_RULE,
            n_max: spectrum.n_max,
            band_epsilon: NYQUIST_BAND_EPSILON,
            significant_band: significant_band(alpha.alpha, NYQUIST_BAND_EPSILON).stage("spectrum")?,
            total_power: spectrum.total_power(),
            lines: spectrum.lines.clone(),
        },
        nyquist: nyquist_requirements(alpha.alpha, run.elements.orbital_frequency()).stage("nyquist")?,
        synthesis: SynthesisReport {
            sample_rate_hz: plan.sample_rate,
            offset_freq_hz: plan.offset_freq,
            n_periods: plan.n_periods,
            n_samples: plan.n_samples,
            snr_db: cfg.synthesis.snr_db,
            seed: cfg.synthesis.seed,
            dft_normalization: "unitary (1/sqrt(N) both directions)",
        },
        estimation,
        comparison: compare_lines(&spectrum, &lines),
        alpha,
    };
    Ok(PipelineOutput {
        report,
        spectrum,
        series,
        dft,
    })
}

/// Writes the report and any extra files named in `outputs`.
pub fn write_pipeline_outputs(out: &PipelineOutput, outputs: &OutputConfig) -> Result<(), CliError> {
    write_json(&out.report, open_output(outputs.report.as_deref())?)?;
    if let Some(p) = &outputs.sidebands_csv {
        write_sidebands_csv(&out.spectrum, open_output(Some(p))?)?;
    }
    if let Some(p) = &outputs.sidebands_json {
        write_sidebands_json(&out.spectrum, open_output(Some(p))?)?;
    }
    if let Some(p) = &outputs.timeseries_csv {
        write_timeseries_csv(&out.series, open_output(Some(p))?)?;
    }
    if let Some(p) = &outputs.dft_csv {
        write_dft_csv(&out.dft, open_output(Some(p))?)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ExplicitElements;

    #[test]
    fn iss_reports_both_alphas() {
        let mut cfg = RunConfig::for_preset("iss");
        cfg.clock = Some("cs-pharao".into());
        let a = alpha_report(&resolve(&cfg).unwrap());
        assert!((a.alpha - 23.8).abs() < 0.3);
        let alt = a.alternate.expect("kepler alpha differs by > 1%");
        assert_eq!(alt.period_source, PeriodSource::Kepler);

        cfg.kepler_period = true;
        let k = alpha_report(&resolve(&cfg).unwrap());
        assert_eq!(k.alpha, alt.alpha);
        assert_eq!(k.alternate.unwrap().alpha, a.alpha);
    }

    #[test]
    fn galileo_has_single_period() {
        let a = alpha_report(&resolve(&RunConfig::for_preset("galileo")).unwrap());
        assert!(a.alternate.is_none());
        assert_eq!(a.regime, "deep_modulation");
    }

    #[test]
    fn clock_selection() {
        let mut cfg = RunConfig::for_preset("ISS");
        assert_eq!(resolve(&cfg).unwrap().clock_label, "h-maser");
        let labels: Vec<String> = resolve_all(&cfg).unwrap().into_iter().map(|r| r.clock_label).collect();
        assert_eq!(labels, ["cs-pharao", "h-maser"]);
        cfg.clock = Some("9.19263177e9".into());
        assert_eq!(resolve(&cfg).unwrap().transition.f_ph0(), 9.192_631_77e9);
        cfg.clock = Some("rubidium".into());
        assert_eq!(resolve(&cfg).unwrap_err().exit_code(), 2);
        assert!(resolve(&RunConfig::for_preset("mir")).is_err());
    }

    fn circular() -> RunConfig {
        let mut cfg = RunConfig::new(OrbitSource::Elements(ExplicitElements {
            r_perigee: 7e6,
            r_apogee: 7e6,
            mu: gravab_core::constants::EARTH_MU,
            period_override: None,
        }));
        cfg.clock = Some("1.42e9".into());
        cfg
    }

    #[test]
    fn zero_alpha_skips_estimation() {
        let out = run_pipeline(&circular()).unwrap();
        assert_eq!(out.report.alpha.alpha, 0.0);
        assert_eq!(out.report.alpha.regime, "no_sidebands");
        assert_eq!(out.spectrum.lines.len(), 1);
        assert_eq!(out.report.nyquist.max_averaging_interval, None);
        assert_eq!(
            out.report.estimation,
            EstimationReport::Skipped { notice: ESTIMATION_SKIPPED }
        );
    }

    #[test]
    fn explicit_elements_need_a_frequency() {
        let mut cfg = circular();
        cfg.clock = None;
        assert_eq!(resolve(&cfg).unwrap_err().exit_code(), 2);
        cfg.clock = Some("h-maser".into());
        assert!(resolve(&cfg).is_err());
    }

    #[test]
    fn synthesis_constraints_surface_as_configuration_errors() {
        let mut cfg = RunConfig::for_preset("iss");
        cfg.synthesis.sample_rate = Some(1e-3);
        cfg.synthesis.offset_freq = Some(1e-4);
        let err = run_pipeline(&cfg).unwrap_err();
        assert!(err.to_string().starts_with("synthesis stage failed"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn monotone_bracket_is_numerical_failure() {
        let mut cfg = RunConfig::for_preset("iss");
        cfg.estimation.alpha_bracket = Some((0.0, 0.5));
        let err = run_pipeline(&cfg).unwrap_err();
        assert!(err.to_string().starts_with("estimation stage failed"));
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn iss_pipeline_recovers_alpha() {
        let out = run_pipeline(&RunConfig::for_preset("iss")).unwrap();
        let EstimationReport::Estimated { record, .. } = out.report.estimation else {
            panic!("estimation skipped");
        };
        assert!((record.alpha_hat / out.report.alpha.alpha - 1.0).abs() < 1e-3);
        assert!(out.report.comparison.iter().all(|c| c.deviation.abs() < 1e-3));
        assert!((out.report.spectrum.total_power - 1.0).abs() < 1e-10);
    }
}
