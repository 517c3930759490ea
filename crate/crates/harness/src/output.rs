//! CSV tables, snapshot naming and filter dumps.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use psf_core::filter::FilterOperator;
use psf_core::{snapshot, Complex64, FieldState, Representation};

use crate::error::HarnessError;
use crate::experiment::{RunOutcome, Setup, SweepRow};

/// `{run_id}_{t:.4}.psf`
pub fn snapshot_path(dir: &Path, run_id: &str, t: f64) -> PathBuf {
    dir.join(format!("{run_id}_{t:.4}.psf"))
}

/// Columns `t, l2_norm` plus `rel_err_l2, rel_err_linf` when a reference
/// was run. One row per observation.
pub fn write_run_csv(path: &Path, outcome: &RunOutcome) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_path(path)?;
    let rec = &outcome.record;
    match &outcome.errors {
        Some(errors) => {
            w.write_record(["t", "l2_norm", "rel_err_l2", "rel_err_linf"])?;
            for ((t, n), (e2, einf)) in rec.times.iter().zip(&rec.l2_norms).zip(errors) {
                w.write_record([t, n, e2, einf].map(|v| format!("{v:e}")))?;
            }
        }
        None => {
            w.write_record(["t", "l2_norm"])?;
            for (t, n) in rec.times.iter().zip(&rec.l2_norms) {
                w.write_record([t, n].map(|v| format!("{v:e}")))?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_sweep_csv(path: &Path, rows: &[SweepRow]) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["delta", "k", "w", "rel_err_l2", "rel_err_linf"])?;
    for r in rows {
        let buffer = r.w.map_or_else(|| "infeasible".to_string(), |v| format!("{v:e}"));
        let [delta, k, l2, linf] = [r.delta, r.k, r.rel_err_l2, r.rel_err_linf].map(|v| format!("{v:e}"));
        w.write_record([delta, k, buffer, l2, linf])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_norms_csv(path: &Path, rows: &[(f64, f64)]) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["t", "l2_norm"])?;
    for (t, n) in rows {
        w.write_record([t, n].map(|v| format!("{v:e}")))?;
    }
    w.flush()?;
    Ok(())
}

/// The effective configuration with the resolved filter parameters as
/// leading comments.
pub fn write_config_echo(dir: &Path, setup: &Setup) -> Result<(), HarnessError> {
    let p = &setup.params;
    let mut text = format!(
        "# resolved: delta = {:e}, k_b = {}, sigma = {}, w = {}, t_step = {}, vmax = {}, L = {}\n",
        p.delta,
        p.k_b,
        p.sigma,
        p.w,
        p.t_step,
        setup.vmax,
        setup.grid.interior_half_width()
    );
    for w in &p.warnings {
        text.push_str(&format!("# warning: {w}\n"));
    }
    text.push_str(&setup.config.to_toml());
    std::fs::write(dir.join(format!("{}.toml", setup.config.run_id)), text)?;
    Ok(())
}

/// Per side: `{run_id}_filter_{side}.csv` with the smoothed branch weights
/// over the frequency lattice, and `{run_id}_chi_{side}.psf` with the
/// spatial cutoff.
pub fn dump_filters(dir: &Path, run_id: &str, filters: &[FilterOperator]) -> Result<(), HarnessError> {
    for f in filters {
        let side = f.side().to_string();
        let grid: &Arc<psf_core::Grid> = f.projection().grid();
        let dim = grid.dim();
        let mut w = csv::Writer::from_path(dir.join(format!("{run_id}_filter_{side}.csv")))?;
        let mut header: Vec<String> = (1..=dim).map(|a| format!("k{a}")).collect();
        header.extend(["branch".to_string(), "p".to_string()]);
        w.write_record(&header)?;
        for (branch, weights) in f.branch_weights().iter().enumerate() {
            for (p, v) in weights.iter().enumerate() {
                let k = grid.wavevector(p);
                let mut row: Vec<String> = k[..dim].iter().map(|x| format!("{x:e}")).collect();
                row.push(branch.to_string());
                row.push(format!("{v:e}"));
                w.write_record(&row)?;
            }
        }
        w.flush()?;
        let chi: Vec<Complex64> = f.chi().iter().map(|&c| Complex64::new(c, 0.0)).collect();
        let field = FieldState::from_components(grid.clone(), vec![chi], Representation::Position)?;
        snapshot::save(dir.join(format!("{run_id}_chi_{side}.psf")), &field, 0.0)?;
    }
    Ok(())
}
