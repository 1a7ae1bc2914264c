//! Built-in missions.
//!
//! * `iss`: the ACES payload on the International Space Station. Apsides
//!   6800/6810 km; the period is fixed at the rounded 5400 s rather than
//!   Kepler's ≈5587 s so that the published modulation indices are
//!   reproduced.
//! * `galileo`: one of the two Galileo satellites left in an eccentric
//!   orbit (apsides 23 445/32 510 km), Kepler period ≈12.94 h.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::clock::ClockTransition;
use crate::constants::EARTH_MU;
use crate::error::Result;
use crate::orbit::OrbitalElements;

pub const HYDROGEN_MASER_HZ: f64 = 1.42e9;
pub const CESIUM_PHARAO_HZ: f64 = 9.192_631_77e9;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PresetClock {
    pub label: String,
    pub f_ph0: f64,
}

impl PresetClock {
    pub fn transition(&self) -> Result<ClockTransition> {
        ClockTransition::new(self.f_ph0)
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MissionPreset {
    pub name: String,
    pub elements: OrbitalElements,
    pub clocks: Vec<PresetClock>,
}

impl MissionPreset {
    pub fn clock(&self, label: &str) -> Option<&PresetClock> {
        self.clocks.iter().find(|c| c.label == label)
    }
}

fn clock(label: &str, f_ph0: f64) -> PresetClock {
    PresetClock {
        label: label.to_string(),
        f_ph0,
    }
}

pub fn builtin_presets() -> Vec<MissionPreset> {
    vec![
        MissionPreset {
            name: "iss".to_string(),
            elements: OrbitalElements::from_apsides(6.800e6, 6.810e6, EARTH_MU, Some(5400.0))
                .expect("valid ISS apsides"),
            clocks: vec![
                clock("h-maser", HYDROGEN_MASER_HZ),
                clock("cs-pharao", CESIUM_PHARAO_HZ),
            ],
        },
        MissionPreset {
            name: "galileo".to_string(),
            elements: OrbitalElements::from_apsides(2.3445e7, 3.2510e7, EARTH_MU, None)
                .expect("valid Galileo apsides"),
            clocks: vec![clock("h-maser", HYDROGEN_MASER_HZ)],
        },
    ]
}

pub fn find_preset(name: &str) -> Option<MissionPreset> {
    builtin_presets().into_iter().find(|p| p.name.eq_ignore_ascii_case(name))
}
