use std::sync::Arc;

use psf_core::models::WaveModel;
use psf_core::{Complex64, FieldState, Grid};

use crate::config::InitialConfig;
use crate::error::HarnessError;

/// `exp(i k (x - c)) exp(-(x - c)^2 / (2 width^2)) / (2 sqrt(width))`
pub fn gaussian_1d(grid: &Arc<Grid>, k: f64, center: f64, width: f64) -> FieldState {
    let scale = 1.0 / (2.0 * width.sqrt());
    FieldState::sample(grid.clone(), 1, |x| {
        let y = x[0] - center;
        vec![Complex64::from_polar(
            scale * (-y * y / (2.0 * width * width)).exp(),
            k * y,
        )]
    })
}

/// `r^2 exp(-r^2 / width^2) cos(k r)` in component `component` of an
/// `n`-component field, zero elsewhere.
pub fn ring_pulse_2d(grid: &Arc<Grid>, n: usize, component: usize, k: f64, center: [f64; 2], width: f64) -> FieldState {
    FieldState::sample(grid.clone(), n, |x| {
        let r2 = (x[0] - center[0]).powi(2) + (x[1] - center[1]).powi(2);
        let v = r2 * (-r2 / (width * width)).exp() * (k * r2.sqrt()).cos();
        let mut out = vec![Complex64::default(); n];
        out[component] = Complex64::new(v, 0.0);
        out
    })
}

pub fn make_initial_condition(
    spec: &InitialConfig,
    grid: &Arc<Grid>,
    model: &dyn WaveModel,
) -> Result<FieldState, HarnessError> {
    let n = model.n_components();
    match *spec {
        InitialConfig::Gaussian1d { k, center, width } if grid.dim() == 1 && n == 1 => {
            Ok(gaussian_1d(grid, k, center, width))
        }
        InitialConfig::RingPulse2d {
            k,
            center,
            width,
            component,
        } if grid.dim() == 2 => {
            let c = component.unwrap_or_else(|| model.source_component());
            if c >= n {
                return Err(HarnessError::Config(format!(
                    "initial.component: {c} out of range for {} ({n} components)",
                    model.name()
                )));
            }
            Ok(ring_pulse_2d(grid, n, c, k, center, width))
        }
        _ => Err(HarnessError::Config(format!(
            "initial.kind: does not fit {} on a {}-dimensional grid",
            model.name(),
            grid.dim()
        ))),
    }
}
