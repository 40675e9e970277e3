//! Named polytope presets shipped as data, loadable by the CLI and tests.

use crate::error::{Error, Result};
use crate::lattice::FanPolytope;

pub const PRESET_NAMES: [&str; 6] = ["CP1", "CP2", "CP3", "CP1xCP1", "CP1xCP2", "Bl1CP2"];

pub fn preset_json(name: &str) -> Option<&'static str> {
    match name {
        "CP1" => Some(include_str!("../presets/CP1.json")),
        "CP2" => Some(include_str!("../presets/CP2.json")),
        "CP3" => Some(include_str!("../presets/CP3.json")),
        "CP1xCP1" => Some(include_str!("../presets/CP1xCP1.json")),
        "CP1xCP2" => Some(include_str!("../presets/CP1xCP2.json")),
        "Bl1CP2" => Some(include_str!("../presets/Bl1CP2.json")),
        _ => None,
    }
}

pub fn preset(name: &str) -> Result<FanPolytope> {
    let text = preset_json(name).ok_or_else(|| Error::UnknownPreset(name.to_string()))?;
    FanPolytope::from_json(text)
}
