use std::sync::Arc;

use super::Propagator;
use crate::field::{FieldState, Representation};
use crate::filter::FilterOperator;
use crate::models::WaveModel;
use crate::{Error, Result};

/// Time grid and switches for [`propagate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunPlan {
    /// Interval between filter applications.
    pub t_step: f64,
    pub t_final: f64,
    /// Spacing of recorded norms (and observer calls).
    pub observe_every: f64,
    pub filters_enabled: bool,
}

/// Norms just before and after one application of all filters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterEvent {
    pub t: f64,
    pub norm_before: f64,
    pub norm_after: f64,
}

#[derive(Debug, Clone)]
pub struct RunRecord {
    pub times: Vec<f64>,
    pub l2_norms: Vec<f64>,
    pub filter_events: Vec<FilterEvent>,
    pub initial_norm: f64,
    /// Position-space solution at `t_final`.
    pub final_state: FieldState,
    pub warnings: Vec<String>,
}

/// Relative slack allowed for round-off when checking that a filter did not
/// increase the norm.
pub const NORM_GROWTH_TOLERANCE: f64 = 1e-12;

/// Times `0, dt, 2 dt, ..` up to `t_final`, plus `t_final` itself when it is
/// not a multiple.
pub fn observation_times(observe_every: f64, t_final: f64) -> Vec<f64> {
    let mut times = Vec::new();
    let mut i = 0u64;
    loop {
        let t = i as f64 * observe_every;
        if t > t_final * (1.0 + 1e-12) + 1e-12 {
            break;
        }
        times.push(t.min(t_final));
        i += 1;
    }
    if times.last().is_none_or(|&t| (t - t_final).abs() > 1e-9 * observe_every) {
        times.push(t_final);
    }
    times
}

#[derive(Debug, Clone, Copy)]
struct Event {
    t: f64,
    observe: bool,
    filter: bool,
}

fn schedule(plan: &RunPlan) -> Vec<Event> {
    let mut events: Vec<Event> = observation_times(plan.observe_every, plan.t_final)
        .into_iter()
        .map(|t| Event {
            t,
            observe: true,
            filter: false,
        })
        .collect();
    if plan.filters_enabled {
        let tol = 1e-9 * plan.t_step;
        let mut m = 1u64;
        loop {
            let t = m as f64 * plan.t_step;
            if t > plan.t_final + tol {
                break;
            }
            match events.iter_mut().find(|e| (e.t - t).abs() <= tol) {
                Some(e) => e.filter = true,
                None => events.push(Event {
                    t,
                    observe: false,
                    filter: true,
                }),
            }
            m += 1;
        }
    }
    events.sort_by(|a, b| a.t.total_cmp(&b.t));
    events
}

/// Fraction of the frequency-space norm within the outer eighth of the
/// lattice along some axis; large values mean the data is not band limited.
fn high_frequency_fraction(u_hat: &FieldState) -> f64 {
    let grid = u_hat.grid().clone();
    let dim = grid.dim();
    let edge = 0.875 * grid.kmax();
    let outer = u_hat.l2_norm_where(|p| {
        let k = grid.wavevector(p);
        k[..dim].iter().any(|v| v.abs() >= edge)
    });
    let total = u_hat.l2_norm();
    if total == 0.0 {
        0.0
    } else {
        outer / total
    }
}

/// Called at every observation time with the position-space solution.
pub type Observer<'a> = dyn FnMut(f64, &FieldState) -> Result<()> + 'a;

/// Runs the filtered scheme: exact propagation between filter times, all
/// filters applied at `m * t_step`.
///
/// The solution between filter times is always computed from the last
/// filtered state, so observation times need not line up with `t_step`.
/// Fails with [`Error::NormGrowth`] if a filter application ever increases
/// the norm.
pub fn propagate(
    model: &Arc<dyn WaveModel>,
    u0: &FieldState,
    filters: &[FilterOperator],
    plan: &RunPlan,
    mut observer: Option<&mut Observer<'_>>,
) -> Result<RunRecord> {
    if u0.representation() != Representation::Position {
        return Err(Error::Contract(
            "initial data must be in position representation".into(),
        ));
    }
    if !(plan.t_final >= 0.0) || !(plan.observe_every > 0.0) {
        return Err(Error::TimeMismatch(format!(
            "t_final = {} and observe_every = {} must be non-negative and positive",
            plan.t_final, plan.observe_every
        )));
    }
    if plan.filters_enabled && !(plan.t_step > 0.0) {
        return Err(Error::FilterParameter(format!(
            "T_step = {} must be positive",
            plan.t_step
        )));
    }
    let prop = Propagator::new(model.clone(), u0.grid().clone())?;
    let mut warnings = Vec::new();

    let mut base = u0.clone();
    base.forward_in_place()?;
    let leak = high_frequency_fraction(&base);
    if leak > 1e-6 {
        let msg = format!(
            "initial data may be under-resolved: {leak:.2e} of its norm lies within kmax/8 of the lattice edge"
        );
        log::warn!("{msg}");
        warnings.push(msg);
    }
    let initial_norm = base.l2_norm();
    let mut base_t = 0.0;
    let mut times = Vec::new();
    let mut l2_norms = Vec::new();
    let mut filter_events = Vec::new();
    let mut final_state = None;

    for event in schedule(plan) {
        let tau = event.t - base_t;
        let mut state = if tau == 0.0 {
            base.clone()
        } else {
            prop.apply(&base, tau)?
        };
        let mut position = None;
        if event.filter {
            let norm_before = state.l2_norm();
            state.inverse_in_place()?;
            // the product (1-P_1)..(1-P_n) acts right to left
            for f in filters.iter().rev() {
                f.apply_in_place(&mut state)?;
            }
            position = Some(state.clone());
            state.forward_in_place()?;
            let norm_after = state.l2_norm();
            if norm_after > norm_before * (1.0 + NORM_GROWTH_TOLERANCE) {
                return Err(Error::NormGrowth {
                    t: event.t,
                    before: norm_before,
                    after: norm_after,
                });
            }
            filter_events.push(FilterEvent {
                t: event.t,
                norm_before,
                norm_after,
            });
            base = state.clone();
            base_t = event.t;
        }
        let last = (event.t - plan.t_final).abs() <= 1e-12 * plan.t_final.max(1.0);
        if event.observe {
            times.push(event.t);
            l2_norms.push(state.l2_norm());
        }
        if (event.observe && observer.is_some()) || last {
            let pos = match position {
                Some(p) => p,
                None => {
                    let mut p = state;
                    p.inverse_in_place()?;
                    p
                }
            };
            if event.observe {
                if let Some(obs) = observer.as_mut() {
                    obs(event.t, &pos)?;
                }
            }
            if last {
                final_state = Some(pos);
            }
        }
    }

    Ok(RunRecord {
        times,
        l2_norms,
        filter_events,
        initial_norm,
        final_state: final_state.expect("t_final is always scheduled"),
        warnings,
    })
}
