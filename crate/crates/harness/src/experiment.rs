//! Building runs from configurations and executing them.

use std::path::Path;
use std::sync::Arc;

use psf_core::driver::{compute_vmax, propagate, relative_error, ReferenceSolution, RunPlan, RunRecord};
use psf_core::filter::{
    buffer_width_for, build_filters, manual_parameters, select_parameters, BufferRequest, FilterOperator, FilterParams,
    ParamContext,
};
use psf_core::models::WaveModel;
use psf_core::{snapshot, Error, FieldState, Grid};

use crate::config::RunConfig;
use crate::error::HarnessError;
use crate::initial::make_initial_condition;
use crate::output;

/// Everything a run needs, resolved from a configuration.
#[derive(Debug)]
pub struct Setup {
    pub config: RunConfig,
    pub model: Arc<dyn WaveModel>,
    pub grid: Arc<Grid>,
    pub params: FilterParams,
    pub vmax: f64,
    pub u0: FieldState,
}

/// Resolves `"auto"` buffer parameters. `vmax` does not depend on the
/// buffer, so it is computed on the bare lattice first.
pub fn resolve_parameters(cfg: &RunConfig, model: &dyn WaveModel) -> Result<(FilterParams, f64), HarnessError> {
    let dim = cfg.model.dim();
    let (points, dx) = (cfg.grid.points, cfg.grid.dx);
    let half = points as f64 * dx / 2.0;
    let probe = Grid::from_points(dim, points, dx, 0.0)?;
    let vmax = compute_vmax(model, &probe);
    let f = &cfg.filter;
    let ctx = |w: f64| ParamContext {
        interior_half_width: half - w,
        dim,
        dx,
    };
    let default_step = |w: f64| f.t_step.fixed().unwrap_or(w / (3.0 * vmax));

    let params = match (cfg.grid.buffer.fixed(), f.sigma.fixed()) {
        (Some(w), Some(sigma)) => manual_parameters(f.delta, f.k_b, sigma, w, default_step(w), ctx(w), vmax)?,
        (Some(_), None) => unreachable!("rejected by validation"),
        (None, sigma) => {
            let chosen = match sigma {
                Some(sigma) if f.k_b == 0.0 => {
                    let w = buffer_width_for(f.delta, sigma, dim, dx)?;
                    manual_parameters(f.delta, 0.0, sigma, w, w / (3.0 * vmax), ctx(w), vmax)?
                }
                _ => select_parameters(
                    &BufferRequest {
                        delta: f.delta,
                        k_b: f.k_b,
                        interior_half_width: half,
                        dim,
                        dx,
                        sigma_hint: sigma,
                    },
                    vmax,
                )?,
            };
            if chosen.w >= half {
                return Err(Error::Infeasible {
                    inequality: "spatial-tail upper bound on sigma",
                    detail: format!("buffer {} does not fit in a box of half width {half}", chosen.w),
                }
                .into());
            }
            match f.t_step.fixed() {
                Some(t) => manual_parameters(f.delta, f.k_b, chosen.sigma, chosen.w, t, ctx(chosen.w), vmax)?,
                None => chosen,
            }
        }
    };
    Ok((params, vmax))
}

pub fn prepare(cfg: &RunConfig) -> Result<Setup, HarnessError> {
    cfg.validate()?;
    let model = cfg.model.spec().build()?;
    let (params, vmax) = resolve_parameters(cfg, model.as_ref())?;
    let grid = Arc::new(Grid::from_points(
        cfg.model.dim(),
        cfg.grid.points,
        cfg.grid.dx,
        params.w,
    )?);
    let u0 = make_initial_condition(&cfg.initial, &grid, model.as_ref())?;
    Ok(Setup {
        config: cfg.clone(),
        model,
        grid,
        params,
        vmax,
        u0,
    })
}

impl Setup {
    pub fn filters(&self) -> Result<Vec<FilterOperator>, HarnessError> {
        if self.config.filter.enabled {
            Ok(build_filters(self.model.as_ref(), &self.grid, &self.params)?)
        } else {
            Ok(Vec::new())
        }
    }

    pub fn plan(&self) -> RunPlan {
        RunPlan {
            t_step: self.params.t_step,
            t_final: self.config.time.t_final,
            observe_every: self.config.time.observe_every,
            filters_enabled: self.config.filter.enabled,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub params: FilterParams,
    pub record: RunRecord,
    /// `(l2, linf)` interior errors against the reference at each
    /// observation time, when a reference was requested.
    pub errors: Option<Vec<(f64, f64)>>,
    pub warnings: Vec<String>,
}

impl RunOutcome {
    pub fn final_error(&self) -> Option<(f64, f64)> {
        self.errors.as_ref().and_then(|e| e.last().copied())
    }

    /// `(min, max)` of the recorded norms over the initial norm.
    pub fn norm_ratio_range(&self) -> (f64, f64) {
        let n0 = self.record.initial_norm;
        if n0 == 0.0 {
            return (1.0, 1.0);
        }
        self.record
            .l2_norms
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &n| {
                (lo.min(n / n0), hi.max(n / n0))
            })
    }

    pub fn summary(&self, run_id: &str) -> String {
        let (lo, hi) = self.norm_ratio_range();
        let err = match self.final_error() {
            Some((l2, _)) => format!("{l2:.3e}"),
            None => "n/a".to_string(),
        };
        format!("{run_id}: final rel L2 error {err}, norm ratio min {lo:.6} max {hi:.6}")
    }
}

fn matches_time(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(1.0)
}

/// Runs one configuration. With `out`, writes the CSV, snapshots, filter
/// dumps and a copy of the configuration into that directory.
pub fn run(cfg: &RunConfig, out: Option<&Path>) -> Result<RunOutcome, HarnessError> {
    let setup = prepare(cfg)?;
    let filters = setup.filters()?;
    let mut warnings: Vec<String> = setup.params.warnings.iter().map(|w| w.to_string()).collect();
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        output::write_config_echo(dir, &setup)?;
        if cfg.output.dump_filters {
            output::dump_filters(dir, &cfg.run_id, &filters)?;
        }
    }
    // the enlarged grid is only ever allocated here
    let reference = if cfg.reference.enabled {
        Some(ReferenceSolution::new(
            setup.model.clone(),
            &setup.u0,
            cfg.reference.enlargement_factor,
            cfg.time.t_final,
        )?)
    } else {
        None
    };

    let mut errors = Vec::new();
    let mut failure = None;
    let mut observer = |t: f64, u: &FieldState| -> psf_core::Result<()> {
        if let Some(r) = &reference {
            errors.push(relative_error(u, &r.at(t)?, &setup.u0)?);
        }
        if let Some(dir) = out {
            if cfg.output.snapshot_times.iter().any(|&s| matches_time(s, t)) {
                if let Err(e) = snapshot::save(output::snapshot_path(dir, &cfg.run_id, t), u, t) {
                    failure = Some(e);
                }
            }
        }
        Ok(())
    };
    let record = propagate(&setup.model, &setup.u0, &filters, &setup.plan(), Some(&mut observer))?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    warnings.extend(record.warnings.iter().cloned());
    let errors = reference.map(|_| errors);
    let outcome = RunOutcome {
        params: setup.params.clone(),
        record,
        errors,
        warnings,
    };
    if let Some(dir) = out {
        let name = cfg.output.csv.clone().unwrap_or_else(|| format!("{}.csv", cfg.run_id));
        output::write_run_csv(&dir.join(name), &outcome)?;
    }
    Ok(outcome)
}

/// Runs `f` over `items` on a pool of `jobs` workers (all cores when
/// `None`), keeping input order.
fn fan_out<T, R, F>(items: &[T], jobs: Option<usize>, f: F) -> Result<Vec<R>, HarnessError>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R, HarnessError> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.unwrap_or(0))
            .build()
            .map_err(|e| HarnessError::Config(format!("--jobs: {e}")))?;
        pool.install(|| items.par_iter().map(&f).collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        items.iter().map(f).collect()
    }
}

/// One sweep result. `w` is `None` when no buffer fits the box for this
/// `delta`; the errors are then NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub delta: f64,
    pub k: f64,
    pub w: Option<f64>,
    pub rel_err_l2: f64,
    pub rel_err_linf: f64,
}

impl SweepRow {
    pub fn is_feasible(&self) -> bool {
        self.w.is_some()
    }
}

fn with_reference(cfg: &RunConfig) -> RunConfig {
    let mut c = cfg.clone();
    c.reference.enabled = true;
    c.output = Default::default();
    // only the final time matters for sweeps
    c.time.observe_every = c.time.t_final.max(f64::MIN_POSITIVE);
    c
}

fn final_row(cfg: &RunConfig) -> Result<SweepRow, HarnessError> {
    let outcome = run(cfg, None)?;
    let (l2, linf) = outcome.final_error().expect("reference enabled");
    Ok(SweepRow {
        delta: cfg.filter.delta,
        k: cfg.initial.k(),
        w: Some(outcome.params.w),
        rel_err_l2: l2,
        rel_err_linf: linf,
    })
}

/// Final-time errors against the reference for each initial frequency.
pub fn sweep_k(cfg: &RunConfig, ks: &[f64], jobs: Option<usize>) -> Result<Vec<SweepRow>, HarnessError> {
    let base = with_reference(cfg);
    fan_out(ks, jobs, |&k| {
        let mut c = base.clone();
        c.initial.set_k(k);
        final_row(&c)
    })
}

/// Final-time errors over the full `(delta, k)` product, delta-major.
pub fn sweep_delta(
    cfg: &RunConfig,
    deltas: &[f64],
    ks: &[f64],
    jobs: Option<usize>,
) -> Result<Vec<SweepRow>, HarnessError> {
    let base = with_reference(cfg);
    let pairs: Vec<(f64, f64)> = deltas.iter().flat_map(|&d| ks.iter().map(move |&k| (d, k))).collect();
    fan_out(&pairs, jobs, |&(delta, k)| {
        let mut c = base.clone();
        c.filter.delta = delta;
        c.initial.set_k(k);
        match final_row(&c) {
            Err(HarnessError::Core(Error::Infeasible { inequality, detail })) => {
                log::warn!("delta = {delta:e}: {inequality}: {detail}");
                Ok(SweepRow {
                    delta,
                    k,
                    w: None,
                    rel_err_l2: f64::NAN,
                    rel_err_linf: f64::NAN,
                })
            }
            other => other,
        }
    })
}

/// Long run recording the norm at every filter time; fails with exit
/// status 2 if the norm ever increases.
pub fn stability(cfg: &RunConfig, t_final: f64) -> Result<Vec<(f64, f64)>, HarnessError> {
    let mut c = cfg.clone();
    c.time.t_final = t_final;
    c.reference.enabled = false;
    let setup = prepare(&c)?;
    let filters = setup.filters()?;
    let mut plan = setup.plan();
    plan.observe_every = setup.params.t_step;
    let record = propagate(&setup.model, &setup.u0, &filters, &plan, None)?;
    let rows: Vec<(f64, f64)> = record
        .times
        .iter()
        .copied()
        .zip(record.l2_norms.iter().copied())
        .collect();
    for pair in rows.windows(2) {
        let ((_, before), (t, after)) = (pair[0], pair[1]);
        if after > before * (1.0 + psf_core::driver::NORM_GROWTH_TOLERANCE) {
            return Err(HarnessError::NormIncrease { t, before, after });
        }
    }
    Ok(rows)
}

/// Interior relative `(L2, Linf)` difference of two snapshots, relative to
/// the second.
pub fn compare(a: &Path, b: &Path) -> Result<(f64, f64), HarnessError> {
    let sa = snapshot::load(a)?;
    let sb = snapshot::load(b)?;
    Ok(relative_error(&sa.field, &sb.field, &sb.field)?)
}
