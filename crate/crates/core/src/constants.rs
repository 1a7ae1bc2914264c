//! Physical constants used throughout the crate.
//!
//! `c` and `h` are exact SI values; the electron mass is the CODATA 2022
//! recommended value. `ħ` is derived as `h / 2π`.

use core::f64::consts::PI;

/// Identifier of this constants table, written into every report.
pub const CONSTANTS_VERSION: &str = "SI-2019 exact (c, h); CODATA-2022 m_e";

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Planck constant, J·s.
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = PLANCK / (2.0 * PI);

/// Electron rest mass, kg.
pub const ELECTRON_MASS: f64 = 9.109_383_713_9e-31;

/// Standard gravitational parameter of the Earth, m³/s².
pub const EARTH_MU: f64 = 3.986_004_418e14;

/// Mean Earth radius, m. Default ground-clock radius.
pub const EARTH_RADIUS: f64 = 6.371e6;

pub const C_SQUARED: f64 = SPEED_OF_LIGHT * SPEED_OF_LIGHT;
