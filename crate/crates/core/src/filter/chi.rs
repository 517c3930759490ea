use statrs::function::erf::{erf, erfc};

use super::Side;
use crate::grid::Grid;
use crate::{Error, Result};

/// `erf(u) - erf(v)` without cancellation when both arguments share a sign.
pub fn erf_diff(u: f64, v: f64) -> f64 {
    if u >= 0.0 && v >= 0.0 {
        erfc(v) - erfc(u)
    } else if u <= 0.0 && v <= 0.0 {
        erfc(-u) - erfc(-v)
    } else {
        erf(u) - erf(v)
    }
}

/// Unit-mass Gaussian `exp(-x^2/sigma^2)` convolved with the indicator of
/// `[lo, hi]`, evaluated at `x`.
fn smoothed_box(x: f64, lo: f64, hi: f64, sigma: f64) -> f64 {
    0.5 * erf_diff((x - lo) / sigma, (x - hi) / sigma)
}

/// Spatial cutoff of one side: the mollified indicator of
/// `sign * x_axis in [L + w/3, L + 2w/3]`, `|x_other| <= L + 2w/3`.
///
/// Computed in closed form as a product of erf profiles; values lie in
/// `[0, 1]` with plateau value 1.
pub fn build_chi(grid: &Grid, side: Side, sigma: f64) -> Result<Vec<f64>> {
    let w = grid.buffer_width();
    let l = grid.interior_half_width();
    if !(sigma > 0.0) {
        return Err(Error::FilterParameter(format!("sigma = {sigma} must be positive")));
    }
    if w < 3.0 * grid.dx() * (1.0 - 1e-12) {
        return Err(Error::FilterParameter(format!(
            "buffer width {w} is narrower than 3 grid cells (dx = {})",
            grid.dx()
        )));
    }
    let (lo, hi) = (l + w / 3.0, l + 2.0 * w / 3.0);
    let s = side.sign.factor();
    let normal: Vec<f64> = grid
        .x_values()
        .iter()
        .map(|&x| smoothed_box(s * x, lo, hi, sigma))
        .collect();
    let tangential: Vec<f64> = grid
        .x_values()
        .iter()
        .map(|&x| smoothed_box(x, -hi, hi, sigma))
        .collect();
    let dim = grid.dim();
    Ok((0..grid.len())
        .map(|p| {
            let idx = grid.unravel(p);
            let mut v = 1.0;
            for (axis, &i) in idx.iter().enumerate().take(dim) {
                v *= if axis == side.axis { normal[i] } else { tangential[i] };
            }
            v.clamp(0.0, 1.0)
        })
        .collect())
}
