//! Buffer parameters `(delta, k_b, sigma, w, T_step)` and the inequalities
//! that tie them together.
//!
//! Four constraints are checked:
//!
//! * frequency spreading: multiplying by `chi` smears frequencies by a
//!   Gaussian of width `~1/sigma`, which must fall below `delta` within `k_b`
//!   ([`lower_bound_sigma`]);
//! * spatial tail, in the coarse form `sigma <= w / sqrt(ln(1/delta) + d ln(2 sigma / sqrt(pi)))`
//!   ([`upper_bound_sigma`]);
//! * spatial tail, exact form: the erf profile of `chi` sits `w/3` away from
//!   the interior, so `erfc(w / (3 sigma)) / 2 <= delta` ([`chi_tail`]);
//! * plateau: the flat part of `chi` is only `w/3` wide, and outgoing waves
//!   crossing it are removed only to within `1 - chi`, so
//!   `erfc(w / (6 sigma)) <= delta` ([`plateau_defect`]).
//!
//! The coarse form alone does not keep `chi <= delta` on the interior. For
//! small `delta` the plateau condition is the binding one.

use std::f64::consts::PI;
use std::fmt;

use statrs::function::erf::{erfc, erfc_inv};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum ParamWarning {
    SigmaBelowLowerBound { sigma: f64, bound: f64 },
    SigmaAboveUpperBound { sigma: f64, bound: f64 },
    ChiTailAboveDelta { tail: f64, delta: f64 },
    PlateauBelowOne { defect: f64, delta: f64 },
    ZeroFrequencyBuffer,
    BufferNotPowerOfTwo { cells: f64 },
    StepTooLong { t_step: f64, limit: f64 },
}

impl fmt::Display for ParamWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SigmaBelowLowerBound { sigma, bound } => write!(
                f,
                "sigma = {sigma} is below the frequency-spreading bound {bound:.4}; \
                 filters may remove incoming waves near the turning set"
            ),
            Self::SigmaAboveUpperBound { sigma, bound } => {
                write!(f, "sigma = {sigma} exceeds the spatial-tail bound {bound:.4}")
            }
            Self::ChiTailAboveDelta { tail, delta } => write!(
                f,
                "spatial cutoff leaks {tail:.3e} into the interior (delta = {delta:e})"
            ),
            Self::PlateauBelowOne { defect, delta } => write!(
                f,
                "chi falls {defect:.3e} short of 1 at the buffer centre (delta = {delta:e}); \
                 outgoing waves are only partly removed"
            ),
            Self::ZeroFrequencyBuffer => write!(f, "k_b = 0: no margin around the turning set"),
            Self::BufferNotPowerOfTwo { cells } => {
                write!(f, "buffer width is {cells} cells, not a power of two")
            }
            Self::StepTooLong { t_step, limit } => write!(
                f,
                "T_step = {t_step} exceeds w / (3 vmax) = {limit:.4}; fast waves can cross \
                 the buffer between filter applications"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FilterParams {
    pub delta: f64,
    pub k_b: f64,
    pub sigma: f64,
    pub w: f64,
    pub t_step: f64,
    pub kmax: f64,
    pub warnings: Vec<ParamWarning>,
}

/// Geometry the inequalities depend on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamContext {
    pub interior_half_width: f64,
    pub dim: usize,
    pub dx: f64,
}

/// Input to [`select_parameters`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BufferRequest {
    pub delta: f64,
    pub k_b: f64,
    pub interior_half_width: f64,
    pub dim: usize,
    pub dx: f64,
    pub sigma_hint: Option<f64>,
}

/// Smallest `sigma` compatible with frequency spreading at the given `sigma`
/// and `w` (the bound depends weakly on `sigma` itself). Infinite for
/// `k_b = 0`.
pub fn lower_bound_sigma(delta: f64, k_b: f64, w: f64, l: f64, dim: usize, sigma: f64) -> f64 {
    if k_b <= 0.0 {
        return f64::INFINITY;
    }
    let d = dim as f64;
    let arg = (1.0 / delta).ln() + 2.0 * w.ln() + (d - 1.0) * l.ln() + 3.0 * d * (2.0 * sigma).ln() - 1.5 * d * PI.ln();
    arg.max(0.0).sqrt() / k_b
}

/// Largest `sigma` allowed by the coarse spatial-tail bound.
pub fn upper_bound_sigma(delta: f64, w: f64, dim: usize, sigma: f64) -> f64 {
    let arg = (1.0 / delta).ln() + dim as f64 * (2.0 * sigma / PI.sqrt()).ln();
    if arg <= 0.0 {
        f64::INFINITY
    } else {
        w / arg.sqrt()
    }
}

/// Largest value of `chi` on the interior box.
pub fn chi_tail(w: f64, sigma: f64) -> f64 {
    0.5 * erfc(w / (3.0 * sigma))
}

/// `1 - chi` at the centre of a one-sided buffer slab.
pub fn plateau_defect(w: f64, sigma: f64) -> f64 {
    erfc(w / (6.0 * sigma))
}

/// Smallest `w` satisfying the spatial-tail and plateau conditions at fixed
/// `sigma`.
fn spatial_width(delta: f64, sigma: f64, dim: usize) -> f64 {
    let arg = (1.0 / delta).ln() + dim as f64 * (2.0 * sigma / PI.sqrt()).ln();
    let coarse = sigma * arg.max(0.0).sqrt();
    let exact = 3.0 * sigma * erfc_inv(2.0 * delta);
    let plateau = 6.0 * sigma * erfc_inv(delta);
    coarse.max(exact).max(plateau)
}

/// `2^m dx` for the smallest `m >= 2` with `2^m dx >= w`.
pub fn round_to_power_of_two(w: f64, dx: f64) -> f64 {
    let mut cells = 4.0;
    while cells * dx < w * (1.0 - 1e-12) {
        cells *= 2.0;
    }
    cells * dx
}

/// Narrowest power-of-two buffer meeting the spatial-tail and plateau conditions at a
/// fixed `sigma`. This is the only constraint when `k_b = 0`.
pub fn buffer_width_for(delta: f64, sigma: f64, dim: usize, dx: f64) -> Result<f64> {
    validate_delta(delta)?;
    positive("sigma", sigma)?;
    positive("dx", dx)?;
    Ok(round_to_power_of_two(
        spatial_width(delta, sigma, dim).max(3.0 * dx),
        dx,
    ))
}

fn validate_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::FilterParameter(format!("delta = {delta} must lie in (0, 1)")))
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::FilterParameter(format!("{name} = {v} must be positive")))
    }
}

const SPREADING: &str = "frequency-spreading lower bound on sigma";
const TAIL: &str = "spatial-tail upper bound on sigma";

/// Smallest `sigma >= floor` with `sigma >= lower_bound_sigma(.., sigma)`,
/// by monotone fixed-point iteration from `start`.
fn spreading_fixed_point(req: &BufferRequest, w: f64, start: f64, floor: f64) -> Result<f64> {
    let mut sigma = start.max(floor);
    for _ in 0..500 {
        let next = lower_bound_sigma(req.delta, req.k_b, w, req.interior_half_width, req.dim, sigma).max(floor);
        if (next - sigma).abs() <= 1e-10 * sigma {
            return Ok(next.max(sigma));
        }
        sigma = next;
    }
    Err(Error::Infeasible {
        inequality: SPREADING,
        detail: format!("no fixed point at w = {w} (k_b = {} too small)", req.k_b),
    })
}

/// Chooses `sigma` and the narrowest power-of-two buffer `w` that satisfy
/// all four constraints, then `T_step = w / (3 vmax)`.
///
/// With `sigma_hint`, `sigma` is held fixed and only `w` is chosen; the
/// frequency-spreading bound must then already hold. `sigma` is never taken
/// below `sqrt(ln(1/delta)) / kmax`, where the frequency smoothing would
/// wrap around the lattice.
pub fn select_parameters(req: &BufferRequest, vmax: f64) -> Result<FilterParams> {
    validate_delta(req.delta)?;
    positive("k_b", req.k_b)?;
    positive("L", req.interior_half_width)?;
    positive("dx", req.dx)?;
    positive("vmax", vmax)?;
    let ln_inv = (1.0 / req.delta).ln();
    let kmax = PI / req.dx;
    let floor = ln_inv.sqrt() / kmax;
    let max_w = 2.0 * req.interior_half_width;
    let too_wide = |w: f64, which: &'static str| Error::Infeasible {
        inequality: which,
        detail: format!(
            "needs a buffer of width {w:.4}, more than twice the interior half width {}",
            req.interior_half_width
        ),
    };

    let (sigma, w) = if let Some(sigma) = req.sigma_hint {
        positive("sigma", sigma)?;
        if sigma < floor {
            return Err(Error::FilterParameter(format!(
                "sigma = {sigma} is below sqrt(ln(1/delta)) / kmax = {floor:.4}"
            )));
        }
        let w = round_to_power_of_two(spatial_width(req.delta, sigma, req.dim).max(3.0 * req.dx), req.dx);
        if w > max_w {
            return Err(too_wide(w, TAIL));
        }
        let bound = lower_bound_sigma(req.delta, req.k_b, w, req.interior_half_width, req.dim, sigma);
        if sigma < bound {
            return Err(Error::Infeasible {
                inequality: SPREADING,
                detail: format!("sigma = {sigma} < {bound:.4} at w = {w}"),
            });
        }
        (sigma, w)
    } else {
        // joint fixed point in (sigma, w), then round w up and re-solve
        let mut sigma = (ln_inv.sqrt() / req.k_b).max(floor);
        let mut w = 3.0 * req.dx;
        for _ in 0..500 {
            w = spatial_width(req.delta, sigma, req.dim).max(3.0 * req.dx);
            let next = lower_bound_sigma(req.delta, req.k_b, w, req.interior_half_width, req.dim, sigma).max(floor);
            let done = (next - sigma).abs() <= 1e-6 * sigma;
            sigma = next;
            if done {
                break;
            }
        }
        let mut w = round_to_power_of_two(w, req.dx);
        loop {
            if w > max_w {
                return Err(too_wide(w, TAIL));
            }
            sigma = spreading_fixed_point(req, w, floor, floor)?;
            let tail_ok = sigma <= upper_bound_sigma(req.delta, w, req.dim, sigma)
                && chi_tail(w, sigma) <= req.delta
                && plateau_defect(w, sigma) <= req.delta;
            if tail_ok {
                break;
            }
            w *= 2.0;
        }
        (sigma, w)
    };

    Ok(FilterParams {
        delta: req.delta,
        k_b: req.k_b,
        sigma,
        w,
        t_step: w / (3.0 * vmax),
        kmax,
        warnings: Vec::new(),
    })
}

/// Accepts user-supplied parameters, rejecting only impossible values and
/// recording every violated constraint as a warning.
pub fn manual_parameters(
    delta: f64,
    k_b: f64,
    sigma: f64,
    w: f64,
    t_step: f64,
    ctx: ParamContext,
    vmax: f64,
) -> Result<FilterParams> {
    validate_delta(delta)?;
    positive("sigma", sigma)?;
    positive("w", w)?;
    positive("T_step", t_step)?;
    positive("dx", ctx.dx)?;
    if !(k_b >= 0.0 && k_b.is_finite()) {
        return Err(Error::FilterParameter(format!("k_b = {k_b} must be non-negative")));
    }
    let mut warnings = Vec::new();
    if k_b == 0.0 {
        warnings.push(ParamWarning::ZeroFrequencyBuffer);
    } else {
        let bound = lower_bound_sigma(delta, k_b, w, ctx.interior_half_width, ctx.dim, sigma);
        if sigma < bound {
            warnings.push(ParamWarning::SigmaBelowLowerBound { sigma, bound });
        }
    }
    let upper = upper_bound_sigma(delta, w, ctx.dim, sigma);
    if sigma > upper {
        warnings.push(ParamWarning::SigmaAboveUpperBound { sigma, bound: upper });
    }
    let tail = chi_tail(w, sigma);
    if tail > delta {
        warnings.push(ParamWarning::ChiTailAboveDelta { tail, delta });
    }
    let defect = plateau_defect(w, sigma);
    if defect > delta {
        warnings.push(ParamWarning::PlateauBelowOne { defect, delta });
    }
    let cells = w / ctx.dx;
    let rounded = cells.round();
    if (cells - rounded).abs() > 1e-9 * cells || !(rounded as u64).is_power_of_two() {
        warnings.push(ParamWarning::BufferNotPowerOfTwo { cells });
    }
    if vmax > 0.0 && t_step > w / (3.0 * vmax) * (1.0 + 1e-12) {
        warnings.push(ParamWarning::StepTooLong {
            t_step,
            limit: w / (3.0 * vmax),
        });
    }
    for warning in &warnings {
        log::warn!("{warning}");
    }
    Ok(FilterParams {
        delta,
        k_b,
        sigma,
        w,
        t_step,
        kmax: PI / ctx.dx,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn request(delta: f64, k_b: f64) -> BufferRequest {
        BufferRequest {
            delta,
            k_b,
            interior_half_width: 128.0,
            dim: 2,
            dx: 0.125,
            sigma_hint: None,
        }
    }

    #[test]
    fn selection_satisfies_every_constraint() {
        for delta in [1e-3, 1e-6, 1e-9] {
            for k_b in [1.0, 2.0, 4.0] {
                let req = request(delta, k_b);
                let p = select_parameters(&req, 1.0).unwrap();
                let lb = lower_bound_sigma(delta, k_b, p.w, 128.0, 2, p.sigma);
                assert!(p.sigma >= lb * (1.0 - 1e-9), "{delta} {k_b}: {} < {lb}", p.sigma);
                assert!(p.sigma <= upper_bound_sigma(delta, p.w, 2, p.sigma));
                assert!(chi_tail(p.w, p.sigma) <= delta);
                assert!(plateau_defect(p.w, p.sigma) <= delta);
                let cells = p.w / 0.125;
                assert!((cells as u64).is_power_of_two());
                assert!((p.t_step - p.w / 3.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn narrower_margin_needs_wider_buffer() {
        let a = select_parameters(&request(1e-6, 4.0), 1.0).unwrap();
        let b = select_parameters(&request(1e-6, 1.0), 1.0).unwrap();
        assert!(b.w >= a.w && b.sigma > a.sigma);
    }

    #[test]
    fn infeasible_names_its_inequality() {
        let req = BufferRequest {
            delta: 1e-12,
            k_b: 0.05,
            interior_half_width: 4.0,
            dim: 2,
            dx: 0.125,
            sigma_hint: None,
        };
        match select_parameters(&req, 1.0) {
            Err(Error::Infeasible { inequality, .. }) => assert!(inequality.contains("sigma")),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn hint_is_kept() {
        let mut req = request(1e-6, 4.0);
        req.sigma_hint = Some(1.5);
        let p = select_parameters(&req, 2.0).unwrap();
        assert_eq!(p.sigma, 1.5);
        assert!(chi_tail(p.w, 1.5) <= 1e-6);
        req.sigma_hint = Some(0.2);
        assert!(select_parameters(&req, 2.0).is_err());
    }

    #[test]
    fn manual_rejects_and_warns() {
        let ctx = ParamContext {
            interior_half_width: 16.0,
            dim: 2,
            dx: 0.25,
        };
        assert!(manual_parameters(1e-6, 1.0, 0.0, 16.0, 1.5, ctx, 1.0).is_err());
        assert!(manual_parameters(0.0, 1.0, 1.0, 16.0, 1.5, ctx, 1.0).is_err());
        let p = manual_parameters(1e-6, 0.0, 1.0, 16.0, 1.5, ctx, 1.0).unwrap();
        assert_eq!(p.warnings[0], ParamWarning::ZeroFrequencyBuffer);
        assert!(matches!(p.warnings[1], ParamWarning::PlateauBelowOne { .. }));
        let p = manual_parameters(1e-6, 0.0, 1.0, 32.0, 1.5, ctx, 1.0).unwrap();
        assert_eq!(p.warnings, vec![ParamWarning::ZeroFrequencyBuffer]);
        // k_b = 1 with sigma = 1 violates the spreading bound
        let p = manual_parameters(1e-6, 1.0, 1.0, 16.0, 1.5, ctx, 1.0).unwrap();
        assert!(matches!(p.warnings[0], ParamWarning::SigmaBelowLowerBound { .. }));
        let p = manual_parameters(1e-6, 8.0, 1.0, 12.0, 5.0, ctx, 1.0).unwrap();
        assert!(p.warnings.contains(&ParamWarning::BufferNotPowerOfTwo { cells: 48.0 }));
        assert!(p.warnings.iter().any(|w| matches!(w, ParamWarning::StepTooLong { .. })));
    }

    #[test]
    fn buffer_for_fixed_sigma() {
        let w = buffer_width_for(1e-6, 1.0, 1, 0.1).unwrap();
        assert!(chi_tail(w, 1.0) <= 1e-6);
        assert!(plateau_defect(w, 1.0) <= 1e-6);
        assert!(plateau_defect(w / 2.0, 1.0) > 1e-6);
    }
}
