mod common;

use std::process::Command;

use psf_harness::config::Setting;
use psf_harness::experiment::resolve_parameters;
use psf_harness::output::snapshot_path;
use psf_harness::{compare, presets, run, stability, sweep_delta, sweep_k, HarnessError};

#[test]
fn csv_has_one_row_per_observation() {
    let cfg = common::small_euler();
    let dir = tempfile::tempdir().unwrap();
    let outcome = run(&cfg, Some(dir.path())).unwrap();
    let n_obs = outcome.record.times.len();
    assert_eq!(n_obs, 9);
    let mut reader = csv::Reader::from_path(dir.path().join("small.csv")).unwrap();
    let headers = reader.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        ["t", "l2_norm", "rel_err_l2", "rel_err_linf"]
    );
    let rows: Vec<_> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), n_obs);
    let echo = std::fs::read_to_string(dir.path().join("small.toml")).unwrap();
    assert!(echo.contains("# resolved:"));
}

#[test]
fn reference_is_optional() {
    let mut cfg = common::small_euler();
    cfg.reference.enabled = false;
    let dir = tempfile::tempdir().unwrap();
    let outcome = run(&cfg, Some(dir.path())).unwrap();
    assert!(outcome.errors.is_none());
    assert!(outcome.final_error().is_none());
    let mut reader = csv::Reader::from_path(dir.path().join("small.csv")).unwrap();
    assert_eq!(reader.headers().unwrap().len(), 2);
}

#[test]
fn norm_never_grows() {
    let outcome = run(&common::small_euler(), None).unwrap();
    let (_, hi) = outcome.norm_ratio_range();
    assert!(hi <= 1.0 + 1e-12);
    let rows = stability(&common::small_euler(), 40.0).unwrap();
    assert!(rows.windows(2).all(|w| w[1].1 <= w[0].1 * (1.0 + 1e-12)));
    let ratio = rows.last().unwrap().1 / rows[0].1;
    // content below k_b is kept by design, so only most of the pulse leaves
    assert!(ratio < 0.1, "{ratio}");
}

#[test]
fn automatic_buffer_is_resolved() {
    let cfg = common::small_schrodinger();
    let model = cfg.model.spec().build().unwrap();
    let (params, vmax) = resolve_parameters(&cfg, model.as_ref()).unwrap();
    assert_eq!(params.w, 12.8);
    assert!((params.t_step - params.w / (3.0 * vmax)).abs() < 1e-12);
    let outcome = run(&cfg, None).unwrap();
    assert!(outcome.final_error().unwrap().0 < 1e-2);
}

#[test]
fn snapshots_compare_to_themselves() {
    let mut cfg = common::small_euler();
    cfg.output.snapshot_times = vec![1.0, 2.0];
    let dir = tempfile::tempdir().unwrap();
    run(&cfg, Some(dir.path())).unwrap();
    let a = snapshot_path(dir.path(), "small", 1.0);
    let b = snapshot_path(dir.path(), "small", 2.0);
    assert!(a.ends_with("small_1.0000.psf"));
    assert_eq!(compare(&a, &a).unwrap(), (0.0, 0.0));
    let (l2, _) = compare(&a, &b).unwrap();
    assert!(l2 > 0.1);
}

#[test]
fn filter_dumps_are_written() {
    let mut cfg = common::small_euler();
    cfg.output.dump_filters = true;
    let dir = tempfile::tempdir().unwrap();
    run(&cfg, Some(dir.path())).unwrap();
    let names: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert_eq!(names.iter().filter(|n| n.contains("_filter_")).count(), 4);
    assert_eq!(names.iter().filter(|n| n.contains("_chi_")).count(), 4);
}

#[test]
fn single_sweep_point_matches_a_run() {
    let cfg = common::small_euler();
    let rows = sweep_k(&cfg, &[4.0], Some(1)).unwrap();
    let mut single = cfg.clone();
    single.time.observe_every = cfg.time.t_final;
    let direct = run(&single, None).unwrap().final_error().unwrap();
    assert_eq!((rows[0].rel_err_l2, rows[0].rel_err_linf), direct);
    assert_eq!(rows[0].k, 4.0);
}

#[test]
fn sweeps_keep_input_order() {
    let cfg = common::small_euler();
    let rows = sweep_k(&cfg, &[6.0, 3.0, 5.0], Some(2)).unwrap();
    assert_eq!(rows.iter().map(|r| r.k).collect::<Vec<_>>(), [6.0, 3.0, 5.0]);
    let rows = sweep_delta(&common::small_schrodinger(), &[1e-1, 1e-2], &[2.0, 3.0], Some(2)).unwrap();
    let keys: Vec<_> = rows.iter().map(|r| (r.delta, r.k)).collect();
    assert_eq!(keys, [(1e-1, 2.0), (1e-1, 3.0), (1e-2, 2.0), (1e-2, 3.0)]);
}

#[test]
fn infeasible_tolerance_is_a_sweep_row() {
    let rows = sweep_delta(&common::small_schrodinger(), &[1e-2, 1e-12], &[3.0], Some(1)).unwrap();
    assert!(rows[0].is_feasible() && rows[0].rel_err_l2.is_finite());
    assert!(!rows[1].is_feasible() && rows[1].rel_err_l2.is_nan());
}

#[test]
fn exit_codes() {
    let mut cfg = common::small_schrodinger();
    cfg.filter.delta = 1e-12;
    let err = run(&cfg, None).unwrap_err();
    assert_eq!(err.exit_code(), 3, "{err}");
    assert_eq!(HarnessError::Config("x".into()).exit_code(), 1);
    assert_eq!(
        HarnessError::NormIncrease {
            t: 1.0,
            before: 1.0,
            after: 2.0
        }
        .exit_code(),
        2
    );
    let growth = psf_core::Error::NormGrowth {
        t: 1.0,
        before: 1.0,
        after: 2.0,
    };
    assert_eq!(HarnessError::from(growth).exit_code(), 2);
}

fn psf(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_psf")).args(args).output().unwrap()
}

#[test]
fn cli_exit_status() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();

    let bad = dir.path().join("bad.toml");
    let text = presets::preset("euler")
        .unwrap()
        .to_toml()
        .replace("points = 256", "points = 100");
    std::fs::write(&bad, text).unwrap();
    let status = psf(&["--config", bad.to_str().unwrap(), "--out", out, "run"]).status;
    assert_eq!(status.code(), Some(1));

    let mut cfg = common::small_schrodinger();
    cfg.filter.delta = 1e-12;
    let infeasible = dir.path().join("infeasible.toml");
    std::fs::write(&infeasible, cfg.to_toml()).unwrap();
    let status = psf(&["--config", infeasible.to_str().unwrap(), "--out", out, "run"]).status;
    assert_eq!(status.code(), Some(3));

    let mut cfg = common::small_euler();
    cfg.output.snapshot_times = vec![2.0];
    let good = dir.path().join("good.toml");
    std::fs::write(&good, cfg.to_toml()).unwrap();
    let result = psf(&["--config", good.to_str().unwrap(), "--out", out, "run"]);
    assert_eq!(
        result.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&result.stderr)
    );
    assert!(String::from_utf8_lossy(&result.stdout).contains("final rel L2 error"));

    let snap = snapshot_path(dir.path(), "small", 2.0);
    let snap = snap.to_str().unwrap();
    let result = psf(&["compare", snap, snap]);
    assert_eq!(
        result.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&result.stderr)
    );
}

#[test]
fn buffer_setting_is_echoed() {
    let mut cfg = common::small_schrodinger();
    cfg.grid.buffer = Setting::AUTO;
    let dir = tempfile::tempdir().unwrap();
    run(&cfg, Some(dir.path())).unwrap();
    let echo = std::fs::read_to_string(dir.path().join("small_schro.toml")).unwrap();
    assert!(echo.contains("buffer = \"auto\""));
    assert!(
        echo.lines().any(|l| l.starts_with("# resolved:") && l.contains("w")),
        "{echo}"
    );
}
