//! The experiment configurations shipped in `configs/`, compiled in.

use crate::config::RunConfig;
use crate::error::HarnessError;

pub const NAMES: [&str; 3] = ["schrodinger", "euler", "maxwell"];

fn source(name: &str) -> Option<&'static str> {
    match name {
        "schrodinger" => Some(include_str!("../../../configs/schrodinger.toml")),
        "euler" => Some(include_str!("../../../configs/euler.toml")),
        "maxwell" => Some(include_str!("../../../configs/maxwell.toml")),
        _ => None,
    }
}

pub fn preset(name: &str) -> Result<RunConfig, HarnessError> {
    let text = source(name)
        .ok_or_else(|| HarnessError::Config(format!("unknown preset {name:?} (expected one of {NAMES:?})")))?;
    RunConfig::from_toml(text)
}
