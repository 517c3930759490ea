//! TOML run configuration.
//!
//! Example:
//!
//! ```toml
//! run_id = "euler_k10"
//!
//! [model]
//! name = "euler"
//! mach = 0.5
//!
//! [grid]
//! points = 256
//! dx = 0.25
//! buffer = 16.0        # or "auto"
//!
//! [filter]
//! delta = 1e-6
//! k_b = 1.0
//! sigma = 1.0          # or "auto"
//! t_step = 1.5         # or "auto"
//!
//! [initial]
//! kind = "ring_pulse_2d"
//! k = 10.0
//! center = [8.0, 0.0]
//!
//! [time]
//! t_final = 50.0
//! observe_every = 1.0
//!
//! [reference]
//! enabled = true
//! enlargement_factor = 4
//! ```

use std::fmt;
use std::path::Path;

use psf_core::models::ModelSpec;
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

/// The literal string `"auto"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AutoKeyword {
    Auto,
}

/// A number or `"auto"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Setting {
    Fixed(f64),
    Auto(AutoKeyword),
}

impl Setting {
    pub const AUTO: Setting = Setting::Auto(AutoKeyword::Auto);

    pub fn fixed(self) -> Option<f64> {
        match self {
            Setting::Fixed(v) => Some(v),
            Setting::Auto(_) => None,
        }
    }
}

impl Default for Setting {
    fn default() -> Self {
        Self::AUTO
    }
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Setting::Fixed(v) => write!(f, "{v}"),
            Setting::Auto(_) => write!(f, "auto"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModelConfig {
    Schrodinger,
    Euler { mach: f64 },
    Maxwell { b: f64, c: f64 },
}

impl ModelConfig {
    pub fn spec(&self) -> ModelSpec {
        match *self {
            ModelConfig::Schrodinger => ModelSpec::Schrodinger,
            ModelConfig::Euler { mach } => ModelSpec::Euler { mach },
            ModelConfig::Maxwell { b, c } => ModelSpec::Maxwell { b, c },
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ModelConfig::Schrodinger => 1,
            _ => 2,
        }
    }
}

/// Lattice of `points` per dimension at spacing `dx`; the interior half
/// width is whatever the buffer leaves, `points * dx / 2 - w`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub points: usize,
    pub dx: f64,
    #[serde(default)]
    pub buffer: Setting,
}

fn default_delta() -> f64 {
    1e-6
}

fn default_k_b() -> f64 {
    1.0
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterConfig {
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default = "default_k_b")]
    pub k_b: f64,
    #[serde(default)]
    pub sigma: Setting,
    #[serde(default)]
    pub t_step: Setting,
    #[serde(default = "yes")]
    pub enabled: bool,
}

impl Default for FilterConfig {
    fn default() -> Self {
        Self {
            delta: default_delta(),
            k_b: default_k_b(),
            sigma: Setting::AUTO,
            t_step: Setting::AUTO,
            enabled: true,
        }
    }
}

fn default_width_1d() -> f64 {
    7.0
}

fn default_width_2d() -> f64 {
    3.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialConfig {
    /// `exp(i k (x - c)) exp(-(x - c)^2 / (2 width^2)) / (2 sqrt(width))`
    #[serde(rename = "gaussian_1d")]
    Gaussian1d {
        k: f64,
        #[serde(default)]
        center: f64,
        #[serde(default = "default_width_1d")]
        width: f64,
    },
    /// `r^2 exp(-r^2 / width^2) cos(k r)` with `r = |x - center|`, placed in
    /// the model's source component unless `component` is given.
    #[serde(rename = "ring_pulse_2d")]
    RingPulse2d {
        k: f64,
        center: [f64; 2],
        #[serde(default = "default_width_2d")]
        width: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        component: Option<usize>,
    },
}

impl InitialConfig {
    pub fn k(&self) -> f64 {
        match *self {
            InitialConfig::Gaussian1d { k, .. } | InitialConfig::RingPulse2d { k, .. } => k,
        }
    }

    pub fn set_k(&mut self, value: f64) {
        match self {
            InitialConfig::Gaussian1d { k, .. } | InitialConfig::RingPulse2d { k, .. } => *k = value,
        }
    }
}

fn default_observe_every() -> f64 {
    0.25
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeConfig {
    pub t_final: f64,
    #[serde(default = "default_observe_every")]
    pub observe_every: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// CSV path, relative to the output directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub snapshot_times: Vec<f64>,
    #[serde(default)]
    pub dump_filters: bool,
}

fn default_factor() -> usize {
    4
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceConfig {
    #[serde(default)]
    pub enabled: bool,
    #[serde(default = "default_factor")]
    pub enlargement_factor: usize,
}

impl Default for ReferenceConfig {
    fn default() -> Self {
        Self {
            enabled: false,
            enlargement_factor: default_factor(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub run_id: String,
    pub model: ModelConfig,
    pub grid: GridConfig,
    #[serde(default)]
    pub filter: FilterConfig,
    pub initial: InitialConfig,
    pub time: TimeConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub reference: ReferenceConfig,
}

fn invalid(path: &str, msg: impl fmt::Display) -> HarnessError {
    HarnessError::Config(format!("{path}: {msg}"))
}

fn check_positive(path: &str, v: f64) -> Result<(), HarnessError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(path, format!("{v} must be positive")))
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, HarnessError> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configs always serialize")
    }

    /// Field-by-field sanity checks; messages name the offending key.
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.run_id.is_empty() || self.run_id.contains(['/', '\\']) {
            return Err(invalid("run_id", "must be a non-empty file name"));
        }
        match self.model {
            ModelConfig::Euler { mach } if !(0.0..1.0).contains(&mach) => {
                return Err(invalid("model.mach", format!("{mach} not in [0, 1)")));
            }
            ModelConfig::Maxwell { b, c } => {
                if !(b.abs() < 1.0) {
                    return Err(invalid("model.b", format!("|b| = {} must be below 1", b.abs())));
                }
                check_positive("model.c", c)?;
            }
            _ => {}
        }
        if !self.grid.points.is_power_of_two() || self.grid.points < 8 {
            return Err(invalid(
                "grid.points",
                format!("{} is not a power of two >= 8", self.grid.points),
            ));
        }
        check_positive("grid.dx", self.grid.dx)?;
        if let Some(w) = self.grid.buffer.fixed() {
            check_positive("grid.buffer", w)?;
            if w >= self.grid.points as f64 * self.grid.dx / 2.0 {
                return Err(invalid("grid.buffer", format!("{w} leaves no interior")));
            }
        }
        let f = &self.filter;
        if !(f.delta > 0.0 && f.delta < 1.0) {
            return Err(invalid("filter.delta", format!("{} not in (0, 1)", f.delta)));
        }
        if !(f.k_b >= 0.0 && f.k_b.is_finite()) {
            return Err(invalid("filter.k_b", format!("{} must be non-negative", f.k_b)));
        }
        if let Some(s) = f.sigma.fixed() {
            check_positive("filter.sigma", s)?;
        }
        if let Some(t) = f.t_step.fixed() {
            check_positive("filter.t_step", t)?;
        }
        if self.grid.buffer.fixed().is_some() && f.sigma.fixed().is_none() {
            return Err(invalid("filter.sigma", "\"auto\" needs grid.buffer = \"auto\" as well"));
        }
        if f.sigma.fixed().is_none() && f.k_b == 0.0 {
            return Err(invalid("filter.sigma", "\"auto\" needs k_b > 0"));
        }
        match (&self.initial, self.model.dim()) {
            (InitialConfig::Gaussian1d { width, .. }, 1) => check_positive("initial.width", *width)?,
            (InitialConfig::RingPulse2d { width, .. }, 2) => check_positive("initial.width", *width)?,
            (_, d) => return Err(invalid("initial.kind", format!("does not fit a {d}-dimensional model"))),
        }
        if let InitialConfig::RingPulse2d { component: Some(c), .. } = self.initial {
            if c >= 3 {
                return Err(invalid(
                    "initial.component",
                    format!("{c} out of range for 3 components"),
                ));
            }
        }
        if !(self.time.t_final >= 0.0 && self.time.t_final.is_finite()) {
            return Err(invalid(
                "time.t_final",
                format!("{} must be non-negative", self.time.t_final),
            ));
        }
        check_positive("time.observe_every", self.time.observe_every)?;
        for t in &self.output.snapshot_times {
            if !(0.0..=self.time.t_final).contains(t) {
                return Err(invalid("output.snapshot_times", format!("{t} outside [0, t_final]")));
            }
        }
        let factor = self.reference.enlargement_factor;
        if self.reference.enabled && (factor < 2 || !factor.is_power_of_two()) {
            return Err(invalid(
                "reference.enlargement_factor",
                format!("{factor} must be a power of two >= 2"),
            ));
        }
        Ok(())
    }

    /// The same box sampled twice as finely.
    pub fn at_paper_scale(&self) -> Self {
        let mut cfg = self.clone();
        cfg.grid.points *= 2;
        cfg.grid.dx /= 2.0;
        cfg
    }
}
