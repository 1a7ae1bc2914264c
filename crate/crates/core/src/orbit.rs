//! Eccentric two-body orbits.
//!
//! The orbit is radial-only: time is measured from perigee, so `r(0) = r_p`
//! and `r(T/2) = r_a`. Two realisations of `r(t)` are offered:
//!
//! * [`radius_exact`] solves Kepler's equation, `M = E - e sin E`, and
//!   returns `r = a (1 - e cos E)`.
//! * [`radius_paper_model`] uses `1/r = 1/r0 + (A/r0²) cos(Ωt)`. This form is
//!   exact in true anomaly but only approximate in time; the two models
//!   differ at relative order `e²`.
//!
//! `A = (r_a - r_p)/2` is always derived from the apsides. For the eccentric
//! Galileo orbit (`r_p = 23 445 km`, `r_a = 32 510 km`) this gives
//! `A = 4532.5 km`, consistent with `e = 0.162`.

use core::f64::consts::{PI, TAU};

use crate::constants::EARTH_MU;
use crate::error::{Error, Result};
use crate::quadrature::simpson;

/// Maximum Newton iterations in [`solve_kepler_equation`].
pub const KEPLER_MAX_ITERATIONS: usize = 50;

/// Residual bound `|E - e sin E - M|` accepted by the Kepler solver.
pub const KEPLER_TOLERANCE: f64 = 1e-12;

/// Eccentricity at which the Newton starting guess switches from `M` to `π`.
const START_GUESS_SWITCH: f64 = 0.8;

/// Which realisation of `r(t)` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum RadiusModel {
    /// Kepler's equation solved at each instant.
    Exact,
    /// Cosine model of the inverse radius.
    #[default]
    Paper,
}

impl RadiusModel {
    pub fn name(self) -> &'static str {
        match self {
            RadiusModel::Exact => "exact",
            RadiusModel::Paper => "paper",
        }
    }
}

impl core::str::FromStr for RadiusModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(RadiusModel::Exact),
            "paper" => Ok(RadiusModel::Paper),
            _ => Err(Error::domain("model", "expected `exact` or `paper`")),
        }
    }
}

/// Elements of one Keplerian orbit, fully derived from its apsides.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OrbitalElements {
    r_perigee: f64,
    r_apogee: f64,
    mu: f64,
    period_override: Option<f64>,
    r0: f64,
    semi_amplitude: f64,
    eccentricity: f64,
    period: f64,
    angular_frequency: f64,
}

impl OrbitalElements {
    /// Builds the elements from perigee and apogee radii.
    ///
    /// The period follows Kepler's third law, `T = 2π sqrt(a³/μ)`, unless
    /// `period_override` is given.
    pub fn from_apsides(
        r_perigee: f64,
        r_apogee: f64,
        mu: f64,
        period_override: Option<f64>,
    ) -> Result<Self> {
        if !(r_perigee.is_finite() && r_perigee > 0.0) {
            return Err(Error::domain("r_perigee", "must be positive and finite"));
        }
        if !(r_apogee.is_finite() && r_apogee > 0.0) {
            return Err(Error::domain("r_apogee", "must be positive and finite"));
        }
        if r_perigee > r_apogee {
            return Err(Error::domain("r_perigee", "must not exceed r_apogee"));
        }
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::domain("mu", "must be positive and finite"));
        }
        if let Some(p) = period_override {
            if !(p.is_finite() && p > 0.0) {
                return Err(Error::domain("period_override", "must be positive and finite"));
            }
        }

        let r0 = 0.5 * (r_apogee + r_perigee);
        let semi_amplitude = 0.5 * (r_apogee - r_perigee);
        let eccentricity = (r_apogee - r_perigee) / (r_apogee + r_perigee);
        let period = period_override.unwrap_or_else(|| kepler_period(r0, mu));
        Ok(Self {
            r_perigee,
            r_apogee,
            mu,
            period_override,
            r0,
            semi_amplitude,
            eccentricity,
            period,
            angular_frequency: TAU / period,
        })
    }

    /// Earth-centred orbit with the default gravitational parameter.
    pub fn earth(r_perigee: f64, r_apogee: f64, period_override: Option<f64>) -> Result<Self> {
        Self::from_apsides(r_perigee, r_apogee, EARTH_MU, period_override)
    }

    /// Same apsides with the period taken from Kepler's third law.
    pub fn with_kepler_period(&self) -> Self {
        Self::from_apsides(self.r_perigee, self.r_apogee, self.mu, None)
            .expect("elements were validated at construction")
    }

    pub fn r_perigee(&self) -> f64 {
        self.r_perigee
    }

    pub fn r_apogee(&self) -> f64 {
        self.r_apogee
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn period_override(&self) -> Option<f64> {
        self.period_override
    }

    /// Mean of the apsides, `(r_a + r_p)/2`.
    pub fn r0(&self) -> f64 {
        self.r0
    }

    /// Half the apsidal difference, `(r_a - r_p)/2`.
    pub fn semi_amplitude(&self) -> f64 {
        self.semi_amplitude
    }

    pub fn eccentricity(&self) -> f64 {
        self.eccentricity
    }

    pub fn semi_major_axis(&self) -> f64 {
        self.r0
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// `2π / T`, rad/s.
    pub fn angular_frequency(&self) -> f64 {
        self.angular_frequency
    }

    /// `1 / T`, Hz.
    pub fn orbital_frequency(&self) -> f64 {
        1.0 / self.period
    }

    pub fn mean_anomaly(&self, t: f64) -> f64 {
        self.angular_frequency * t
    }
}

/// `T = 2π sqrt(a³/μ)`.
pub fn kepler_period(semi_major_axis: f64, mu: f64) -> f64 {
    TAU * libm::sqrt(semi_major_axis * semi_major_axis * semi_major_axis / mu)
}

#[inline]
fn kepler_residual(ecc_anomaly: f64, mean_anomaly: f64, e: f64) -> f64 {
    ecc_anomaly - e * libm::sin(ecc_anomaly) - mean_anomaly
}

/// Reduces an angle to `[0, 2π)`.
pub fn wrap_two_pi(angle: f64) -> f64 {
    let wrapped = angle - TAU * libm::floor(angle / TAU);
    // floor can leave exactly 2π after rounding
    if wrapped >= TAU {
        0.0
    } else {
        wrapped
    }
}

/// Solves Kepler's equation `M = E - e sin E` for the eccentric anomaly.
///
/// `M` is reduced to `[0, 2π)` first and the result lies in the same range.
/// Newton's method starts from `M` for `e < 0.8` and from `π` otherwise; if
/// it has not met [`KEPLER_TOLERANCE`] after [`KEPLER_MAX_ITERATIONS`] the
/// monotone residual is bisected on `[0, 2π]`.
pub fn solve_kepler_equation(mean_anomaly: f64, e: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&e) {
        return Err(Error::domain("eccentricity", "must lie in [0, 1)"));
    }
    if !mean_anomaly.is_finite() {
        return Err(Error::domain("mean_anomaly", "must be finite"));
    }
    let m = wrap_two_pi(mean_anomaly);
    if e == 0.0 {
        return Ok(m);
    }

    let mut ecc = if e < START_GUESS_SWITCH { m } else { PI };
    for _ in 0..KEPLER_MAX_ITERATIONS {
        let f = kepler_residual(ecc, m, e);
        let fp = 1.0 - e * libm::cos(ecc);
        let step = f / fp;
        ecc -= step;
        if libm::fabs(step) <= 4.0 * f64::EPSILON * ecc.abs().max(1.0) {
            break;
        }
    }
    if ecc.is_finite() && libm::fabs(kepler_residual(ecc, m, e)) <= KEPLER_TOLERANCE {
        return Ok(ecc.clamp(0.0, TAU));
    }

    // f(0) = -M <= 0 and f(2π) = 2π - M > 0, f strictly increasing.
    let (mut lo, mut hi) = (0.0_f64, TAU);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if kepler_residual(mid, m, e) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    let ecc = 0.5 * (lo + hi);
    let residual = libm::fabs(kepler_residual(ecc, m, e));
    if residual <= KEPLER_TOLERANCE {
        Ok(ecc)
    } else {
        Err(Error::NonConvergence {
            method: "Kepler equation",
            iterations: KEPLER_MAX_ITERATIONS,
            residual,
        })
    }
}

/// Eccentric anomaly at time `t`, continued through whole revolutions so it
/// grows monotonically with `t` (`E(T) = 2π`).
pub fn eccentric_anomaly_unwrapped(elements: &OrbitalElements, t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::domain("t", "must be finite"));
    }
    let m = elements.mean_anomaly(t);
    let turns = libm::floor(m / TAU);
    let ecc = solve_kepler_equation(m, elements.eccentricity)?;
    Ok(ecc + TAU * turns)
}

/// Orbital radius from Kepler's equation, `r = a(1 - e cos E)`.
pub fn radius_exact(elements: &OrbitalElements, t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::domain("t", "must be finite"));
    }
    let ecc = solve_kepler_equation(elements.mean_anomaly(t), elements.eccentricity)?;
    let r = elements.r0 - elements.semi_amplitude * libm::cos(ecc);
    Ok(r.clamp(elements.r_perigee, elements.r_apogee))
}

/// Orbital radius from the cosine model, `r = r0 / (1 + e cos Ωt)`.
pub fn radius_paper_model(elements: &OrbitalElements, t: f64) -> f64 {
    elements.r0 / (1.0 + elements.eccentricity * libm::cos(elements.angular_frequency * t))
}

pub fn radius(elements: &OrbitalElements, t: f64, model: RadiusModel) -> Result<f64> {
    match model {
        RadiusModel::Exact => radius_exact(elements, t),
        RadiusModel::Paper => Ok(radius_paper_model(elements, t)),
    }
}

/// Time average of `1/r` over one period by composite Simpson quadrature.
///
/// Both models average to `1/a`: the cosine term integrates to zero, and for the exact orbit `⟨1/r⟩_t = 1/a` is the
/// classical two-body identity.
pub fn time_average_inverse_radius(
    elements: &OrbitalElements,
    model: RadiusModel,
    n_quad: usize,
) -> Result<f64> {
    if n_quad < 64 || !n_quad.is_multiple_of(2) {
        return Err(Error::domain("n_quad", "must be even and at least 64"));
    }
    let period = elements.period;
    let integral = match model {
        RadiusModel::Paper => simpson(|t| 1.0 / radius_paper_model(elements, t), 0.0, period, n_quad)?,
        RadiusModel::Exact => {
            // The solver cannot fail for a validated orbit; surface it if it does.
            let mut failure = None;
            let value = simpson(
                |t| match radius_exact(elements, t) {
                    Ok(r) => 1.0 / r,
                    Err(e) => {
                        failure.get_or_insert(e);
                        f64::NAN
                    }
                },
                0.0,
                period,
                n_quad,
            )?;
            if let Some(e) = failure {
                return Err(e);
            }
            value
        }
    };
    Ok(integral / period)
}
