//! Two-level atomic clock in a time-varying gravitational potential.
//!
//! The Hamiltonian is diagonal in the clock basis,
//! `H = (E_i0 + m_e Φ)|i⟩⟨i| + (E_f0 + m_e* Φ)|f⟩⟨f|`, so propagation only
//! rotates the excited amplitude relative to the ground amplitude. All
//! states here live in the rotating frame: the carrier `exp(-iΔE₀t/ħ)` and
//! the common ground-level phase are removed, leaving `c_i` untouched and
//! `c_f → c_f exp(-iΔφ)` with `Δφ` the gravitational mixing angle.

use num_complex::Complex64;

use crate::constants::{C_SQUARED, ELECTRON_MASS, HBAR, PLANCK};
use crate::error::{Error, Result};
use crate::orbit::{OrbitalElements, RadiusModel};
use crate::phase::{ab_phase_closed_form, potential, redshift_factor};
use crate::quadrature::CompensatedSum;

/// Largest step accepted by [`propagate_numerical`], as a fraction of the period.
pub const MAX_STEP_FRACTION: f64 = 1e-3;

/// Normalisation tolerance for [`TwoLevelState`].
pub const NORM_TOLERANCE: f64 = 1e-12;

/// A clock transition between a ground and an excited level.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ClockTransition {
    f_ph0: f64,
    e_i0: f64,
    e_f0: f64,
    delta_e0: f64,
    m_e: f64,
    delta_m: f64,
    m_e_star: f64,
}

impl ClockTransition {
    /// Transition at frequency `f_ph0` (Hz, zero potential) with the ground
    /// level at zero energy.
    pub fn new(f_ph0: f64) -> Result<Self> {
        Self::with_ground_energy(f_ph0, 0.0)
    }

    pub fn with_ground_energy(f_ph0: f64, e_i0: f64) -> Result<Self> {
        if !(f_ph0.is_finite() && f_ph0 > 0.0) {
            return Err(Error::domain("f_ph0", "must be positive and finite"));
        }
        if !e_i0.is_finite() {
            return Err(Error::domain("e_i0", "must be finite"));
        }
        let delta_e0 = PLANCK * f_ph0;
        // The excited electron gains the absorbed photon's mass.
        let delta_m = delta_e0 / C_SQUARED;
        Ok(Self {
            f_ph0,
            e_i0,
            e_f0: e_i0 + delta_e0,
            delta_e0,
            m_e: ELECTRON_MASS,
            delta_m,
            m_e_star: ELECTRON_MASS + delta_m,
        })
    }

    pub fn f_ph0(&self) -> f64 {
        self.f_ph0
    }

    pub fn e_i0(&self) -> f64 {
        self.e_i0
    }

    pub fn e_f0(&self) -> f64 {
        self.e_f0
    }

    /// `h f_ph0`.
    pub fn delta_e0(&self) -> f64 {
        self.delta_e0
    }

    pub fn m_e(&self) -> f64 {
        self.m_e
    }

    /// `ΔE₀ / c²`.
    pub fn delta_m(&self) -> f64 {
        self.delta_m
    }

    pub fn m_e_star(&self) -> f64 {
        self.m_e_star
    }
}

/// Amplitudes of the ground and excited clock levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelState {
    c_i: Complex64,
    c_f: Complex64,
}

impl TwoLevelState {
    pub fn new(c_i: Complex64, c_f: Complex64) -> Result<Self> {
        let norm = c_i.norm_sqr() + c_f.norm_sqr();
        if !norm.is_finite() || libm::fabs(norm - 1.0) > NORM_TOLERANCE {
            return Err(Error::domain("state", "|c_i|² + |c_f|² must equal 1"));
        }
        Ok(Self { c_i, c_f })
    }

    /// `(|i⟩ + |f⟩)/√2`, the mid-point of a Rabi cycle.
    pub fn equal_superposition() -> Self {
        let a = core::f64::consts::FRAC_1_SQRT_2;
        Self {
            c_i: Complex64::new(a, 0.0),
            c_f: Complex64::new(a, 0.0),
        }
    }

    pub fn c_i(&self) -> Complex64 {
        self.c_i
    }

    pub fn c_f(&self) -> Complex64 {
        self.c_f
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c_i.norm_sqr() + self.c_f.norm_sqr()
    }

    /// Multiplies the excited amplitude by `exp(-i phase)`.
    pub fn rotate_excited(&self, phase: f64) -> Self {
        let (s, c) = libm::sincos(phase);
        Self {
            c_i: self.c_i,
            c_f: self.c_f * Complex64::new(c, -s),
        }
    }

    /// Phase `θ` such that `other.c_f = self.c_f exp(-iθ)`, in `(-π, π]`.
    pub fn excited_phase_lag(&self, other: &TwoLevelState) -> f64 {
        let z = self.c_f * other.c_f.conj();
        libm::atan2(z.im, z.re)
    }
}

impl Default for TwoLevelState {
    fn default() -> Self {
        Self::equal_superposition()
    }
}

/// Potential-shifted level energies `(E_i0 + m_e Φ, E_f0 + m_e* Φ)`.
pub fn level_energies(
    transition: &ClockTransition,
    elements: &OrbitalElements,
    t: f64,
    model: RadiusModel,
) -> Result<(f64, f64)> {
    let phi = potential(elements, t, model)?;
    Ok((
        transition.e_i0 + transition.m_e * phi,
        transition.e_f0 + transition.m_e_star * phi,
    ))
}

/// Mixing angle accumulated over `[t0, t1]` from the closed-form integral of
/// the potential.
pub fn analytic_mixing_phase(
    transition: &ClockTransition,
    elements: &OrbitalElements,
    t0: f64,
    t1: f64,
    model: RadiusModel,
) -> Result<f64> {
    ab_phase_closed_form(transition.delta_m, elements, t0, t1, model)
}

/// Propagates `state0` from `0` to `t` with the closed-form propagator.
pub fn propagate_analytic(
    state0: &TwoLevelState,
    transition: &ClockTransition,
    elements: &OrbitalElements,
    t: f64,
    model: RadiusModel,
) -> Result<TwoLevelState> {
    propagate_analytic_interval(state0, transition, elements, 0.0, t, model)
}

/// Propagates a state given at `t0` to `t1` with the closed-form propagator.
pub fn propagate_analytic_interval(
    state: &TwoLevelState,
    transition: &ClockTransition,
    elements: &OrbitalElements,
    t0: f64,
    t1: f64,
    model: RadiusModel,
) -> Result<TwoLevelState> {
    let phase = analytic_mixing_phase(transition, elements, t0, t1, model)?;
    Ok(state.rotate_excited(phase))
}

/// Mixing angle over `[t0, t1]` by midpoint steps of at most `dt`.
///
/// The interval is split into `ceil((t1 - t0)/dt)` equal steps and the
/// increments `(Δm/ħ) Φ(t_mid) h` are summed with compensation.
pub fn numerical_mixing_phase(
    transition: &ClockTransition,
    elements: &OrbitalElements,
    t0: f64,
    t1: f64,
    model: RadiusModel,
    dt: f64,
) -> Result<f64> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::domain("dt", "must be positive and finite"));
    }
    if dt > elements.period() * MAX_STEP_FRACTION * (1.0 + 1e-12) {
        return Err(Error::domain("dt", "must not exceed T/1000"));
    }
    if !(t0.is_finite() && t1.is_finite() && t1 >= t0) {
        return Err(Error::domain("t", "interval must be finite and ordered"));
    }
    let span = t1 - t0;
    if span == 0.0 {
        return Ok(0.0);
    }
    let n_steps = libm::ceil(span / dt * (1.0 - 1e-12)).max(1.0) as usize;
    let h = span / n_steps as f64;
    let rate = transition.delta_m / HBAR;

    let mut acc = CompensatedSum::new();
    for k in 0..n_steps {
        let mid = t0 + (k as f64 + 0.5) * h;
        acc.add(potential(elements, mid, model)?);
    }
    Ok(rate * h * acc.value())
}

/// Propagates `state0` from `0` to `t` by step-wise multiplication of the
/// excited amplitude with `exp(-i (Δm/ħ) Φ(t_mid) dt)`.
pub fn propagate_numerical(
    state0: &TwoLevelState,
    transition: &ClockTransition,
    elements: &OrbitalElements,
    t: f64,
    model: RadiusModel,
    dt: f64,
) -> Result<TwoLevelState> {
    let phase = numerical_mixing_phase(transition, elements, 0.0, t, model, dt)?;
    Ok(state0.rotate_excited(phase))
}

/// Transition energy shifted by the mean orbital potential,
/// `ΔE = ΔE₀ (1 + μ/(r0 c²))`, together with the fractional shift.
///
/// The sign follows the multiplet formula: relative to a clock at zero
/// potential the mean shift enters with `+μ/(r0 c²)`. The shift relative to
/// a ground clock is given by [`ground_relative_shift`].
pub fn redshifted_transition_energy(
    transition: &ClockTransition,
    elements: &OrbitalElements,
) -> (f64, f64) {
    let fractional = redshift_factor(elements);
    (transition.delta_e0 * (1.0 + fractional), fractional)
}

/// Carrier frequency `f₀ (1 + μ/(r0 c²))` of the multiplet, Hz.
pub fn redshifted_frequency(transition: &ClockTransition, elements: &OrbitalElements) -> f64 {
    transition.f_ph0 * (1.0 + redshift_factor(elements))
}

/// Fractional frequency difference between the orbiting clock (mean
/// orbit) and a ground clock at radius `r_ground`, gravitational term only:
/// `μ (1/r_ground - 1/r0) / c²`.
pub fn ground_relative_shift(elements: &OrbitalElements, r_ground: f64) -> Result<f64> {
    if !(r_ground.is_finite() && r_ground > 0.0) {
        return Err(Error::domain("r_ground", "must be positive and finite"));
    }
    Ok(elements.mu() * (1.0 / r_ground - 1.0 / elements.r0()) / C_SQUARED)
}
