//! Gravitational potential along the orbit and the phases it imprints.
//!
//! A mass `m` held in a potential `Φ(t)` accumulates the phase
//! `φ(t) = (m/ħ) ∫₀ᵗ Φ(t') dt'`. The clock's ground level carries the
//! electron mass and the excited level the electron mass plus the absorbed
//! photon's mass, so the relative (mixing) phase is the same integral with
//! the mass difference `Δm = h f / c²`.
//!
//! For the cosine potential `Φ = -(μ/r0)(1 + e cos Ωt)` the mixing phase
//! splits into
//!
//! ```text
//! Δφ(t) = -(Δm μ / ħ r0) t  -  α sin(Ωt),   α = e (μ / r0 c²) (2π f / Ω)
//! ```
//!
//! The secular part is the mean redshift; the oscillatory part produces the
//! sidebands. The two parts are stored separately and the carrier phase
//! `ΔE₀ t / ħ` (about 10¹³ rad per orbit) is never formed.

use crate::clock::ClockTransition;
use crate::constants::{C_SQUARED, HBAR};
use crate::error::{Error, Result};
use crate::orbit::{eccentric_anomaly_unwrapped, radius_exact, OrbitalElements, RadiusModel};
use crate::quadrature::simpson;

/// Default Simpson step count per orbital period.
pub const DEFAULT_STEPS_PER_ORBIT: usize = 10_000;

/// `Φ(t) = -(μ/r0)(1 + e cos Ωt)`, m²/s².
pub fn potential_paper(elements: &OrbitalElements, t: f64) -> f64 {
    let e = elements.eccentricity();
    -(elements.mu() / elements.r0()) * (1.0 + e * libm::cos(elements.angular_frequency() * t))
}

/// `Φ(t) = -μ / r(t)` on the Kepler orbit.
pub fn potential_exact(elements: &OrbitalElements, t: f64) -> Result<f64> {
    Ok(-elements.mu() / radius_exact(elements, t)?)
}

pub fn potential(elements: &OrbitalElements, t: f64, model: RadiusModel) -> Result<f64> {
    match model {
        RadiusModel::Exact => potential_exact(elements, t),
        RadiusModel::Paper => Ok(potential_paper(elements, t)),
    }
}

/// `(mass/ħ) ∫_{t0}^{t1} Φ(t) dt` for an arbitrary potential, by composite
/// Simpson with `n_steps` sub-intervals.
pub fn accumulate_phase<F>(mass: f64, potential: F, t0: f64, t1: f64, n_steps: usize) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(mass.is_finite() && mass > 0.0) {
        return Err(Error::domain("mass", "must be positive and finite"));
    }
    Ok(mass / HBAR * simpson(potential, t0, t1, n_steps)?)
}

/// Accumulated phase of a mass over `[0, t]` along the orbit.
pub fn ab_phase(
    mass: f64,
    elements: &OrbitalElements,
    t: f64,
    model: RadiusModel,
    n_steps: usize,
) -> Result<f64> {
    ab_phase_interval(mass, elements, 0.0, t, model, n_steps)
}

/// Accumulated phase of a mass over `[t0, t1]` along the orbit.
pub fn ab_phase_interval(
    mass: f64,
    elements: &OrbitalElements,
    t0: f64,
    t1: f64,
    model: RadiusModel,
    n_steps: usize,
) -> Result<f64> {
    if !(t0.is_finite() && t0 >= 0.0) {
        return Err(Error::domain("t0", "must be finite and non-negative"));
    }
    if !(t1.is_finite() && t1 >= t0) {
        return Err(Error::domain("t", "must be finite and not precede the start time"));
    }
    match model {
        RadiusModel::Paper => {
            accumulate_phase(mass, |t| potential_paper(elements, t), t0, t1, n_steps)
        }
        RadiusModel::Exact => {
            let mut failure = None;
            let phase = accumulate_phase(
                mass,
                |t| match potential_exact(elements, t) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.get_or_insert(e);
                        f64::NAN
                    }
                },
                t0,
                t1,
                n_steps,
            )?;
            match failure {
                Some(e) => Err(e),
                None => Ok(phase),
            }
        }
    }
}

/// Closed form of [`ab_phase_interval`].
///
/// The cosine model integrates to `-(μ/r0)(t + (e/Ω) sin Ωt)`. On the Kepler
/// orbit `dt = (1 - e cos E) dE / Ω` and `r = a(1 - e cos E)`, so
/// `∫ dt / r = E / (Ω a)` with `E` the unwrapped eccentric anomaly.
pub fn ab_phase_closed_form(
    mass: f64,
    elements: &OrbitalElements,
    t0: f64,
    t1: f64,
    model: RadiusModel,
) -> Result<f64> {
    let prefactor = -mass / HBAR * elements.mu();
    match model {
        RadiusModel::Paper => {
            let omega = elements.angular_frequency();
            let e = elements.eccentricity();
            let secular = t1 - t0;
            let oscillatory = e / omega * (libm::sin(omega * t1) - libm::sin(omega * t0));
            Ok(prefactor / elements.r0() * (secular + oscillatory))
        }
        RadiusModel::Exact => {
            let e0 = eccentric_anomaly_unwrapped(elements, t0)?;
            let e1 = eccentric_anomaly_unwrapped(elements, t1)?;
            Ok(prefactor / (elements.angular_frequency() * elements.semi_major_axis()) * (e1 - e0))
        }
    }
}

/// Fractional potential depth of the mean orbit, `μ / (r0 c²)`.
pub fn redshift_factor(elements: &OrbitalElements) -> f64 {
    elements.mu() / (elements.r0() * C_SQUARED)
}

/// Dimensionless modulation index `α = e (μ / r0 c²) (2π f / Ω)`.
///
/// `2π f / Ω` is evaluated as `f T`, so rescaling the period rescales α by
/// the same factor.
pub fn modulation_index(transition: &ClockTransition, elements: &OrbitalElements) -> f64 {
    elements.eccentricity() * redshift_factor(elements) * (transition.f_ph0() * elements.period())
}

/// Modulation index per unit photon frequency, `α / f = e (μ / r0 c²) T`, s.
pub fn modulation_index_per_hz(elements: &OrbitalElements) -> f64 {
    elements.eccentricity() * redshift_factor(elements) * elements.period()
}

/// Accumulated phases of both clock levels and the mixing angle between
/// them at one instant (cosine potential).
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PhaseRecord {
    pub t: f64,
    /// Ground-level phase, electron mass.
    pub phi_g: f64,
    /// Excited-level phase, electron mass plus photon mass.
    pub phi_g_star: f64,
    /// Part of the mixing angle linear in `t`.
    pub mixing_secular: f64,
    /// Part of the mixing angle proportional to `sin Ωt`.
    pub mixing_oscillatory: f64,
}

impl PhaseRecord {
    pub fn mixing_total(&self) -> f64 {
        self.mixing_secular + self.mixing_oscillatory
    }
}

/// Mixing angle `Δφ = φ* - φ` at time `t` on the cosine potential, split
/// into secular and oscillatory parts.
///
/// The oscillatory part carries the sign of the integrated potential,
/// `-α sin Ωt`; [`modulation_index`] reports α itself as non-negative.
pub fn mixing_angle(transition: &ClockTransition, elements: &OrbitalElements, t: f64) -> PhaseRecord {
    let depth = elements.mu() / elements.r0();
    let omega = elements.angular_frequency();
    let e = elements.eccentricity();
    let integral = -depth * (t + e / omega * libm::sin(omega * t));

    let rate = transition.delta_m() / HBAR * depth;
    let alpha = modulation_index(transition, elements);
    PhaseRecord {
        t,
        phi_g: transition.m_e() / HBAR * integral,
        phi_g_star: transition.m_e_star() / HBAR * integral,
        mixing_secular: -rate * t,
        mixing_oscillatory: -alpha * libm::sin(omega * t),
    }
}
