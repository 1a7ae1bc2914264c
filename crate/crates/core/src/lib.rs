//! Numerical core for the scalar gravitational Aharonov-Bohm effect on an
//! orbiting atomic clock.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`orbit`]: eccentric two-body orbits, Kepler's equation and the
//!   cosine model of `1/r(t)`.
//! * [`phase`]: the gravitational potential along the orbit, accumulated
//!   phases `(m/ħ)∫Φ dt`, the clock mixing angle and the modulation index α.
//! * [`clock`]: the two-level clock with potential-shifted levels, analytic
//!   and step-wise propagation in the rotating frame, redshift terms.
//! * [`bessel`] and [`spectrum`]: Bessel functions of the first kind and the
//!   Jacobi-Anger sideband multiplet.
//! * [`fft`], [`synthesis`] and [`estimate`]: brute-force signal synthesis,
//!   spectral line extraction and least-squares recovery of α.
//! * [`presets`]: the ISS/ACES and eccentric Galileo missions.
//!
//! All functions are pure and deterministic; results depend only on inputs.

#![no_std]

extern crate alloc;

pub mod bessel;
pub mod clock;
pub mod constants;
pub mod error;
pub mod estimate;
pub mod fft;
pub mod orbit;
pub mod phase;
pub mod presets;
pub mod quadrature;
pub mod spectrum;
pub mod synthesis;

pub use clock::{ClockTransition, TwoLevelState};
pub use error::{Error, Result};
pub use estimate::EstimationResult;
pub use orbit::{OrbitalElements, RadiusModel};
pub use phase::PhaseRecord;
pub use presets::MissionPreset;
pub use spectrum::{Regime, SidebandLine, SidebandSpectrum};
pub use synthesis::TimeSeries;
