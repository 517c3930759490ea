mod common;

use std::sync::Arc;

use psf_core::driver::{propagate, Propagator, ReferenceSolution, RunPlan};
use psf_core::filter::{build_filters, manual_parameters, ParamContext};
use psf_core::models::{euler_model, schrodinger_model, WaveModel};
use psf_core::{Complex64, Error, FieldState, Grid};

use common::{branch_packet, centroid, max_abs_diff};

/// Exact periodic solution of `u_t = i u_xx` from
/// `exp(i k0 x) exp(-x^2 / (2 a))`, summed over enough periodic images.
fn gaussian_exact(x: f64, t: f64, a: f64, k0: f64, period: f64) -> Complex64 {
    let z = Complex64::new(a, 2.0 * t);
    let amp = (Complex64::new(a, 0.0) / z).sqrt();
    (-3..=3)
        .map(|m| {
            let y = x + m as f64 * period;
            let shift = y - 2.0 * k0 * t;
            amp * Complex64::from_polar(1.0, k0 * y - k0 * k0 * t) * (-(shift * shift) / (2.0 * z)).exp()
        })
        .sum()
}

#[test]
fn free_gaussian_matches_closed_form() {
    let grid = Arc::new(Grid::from_points(1, 1024, 0.1, 0.0).unwrap());
    let period = 102.4;
    let (a, k0) = (4.0, 1.5);
    let u0 = FieldState::sample(grid.clone(), 1, |x| vec![gaussian_exact(x[0], 0.0, a, k0, period)]);
    let prop = Propagator::new(schrodinger_model(), grid.clone()).unwrap();
    let mut u = u0.clone();
    u.forward_in_place().unwrap();
    let mut u = prop.apply(&u, 5.0).unwrap();
    u.inverse_in_place().unwrap();
    let exact = FieldState::sample(grid.clone(), 1, |x| vec![gaussian_exact(x[0], 5.0, a, k0, period)]);
    let rel = u.difference(&exact).unwrap().l2_norm() / exact.l2_norm();
    assert!(rel < 1e-10, "relative error {rel:e}");
    assert!((u.l2_norm() / u0.l2_norm() - 1.0).abs() < 1e-12);
}

#[test]
fn packets_travel_at_group_velocity() {
    let grid = Arc::new(Grid::from_points(2, 128, 0.25, 0.0).unwrap());
    let model = euler_model(0.5).unwrap();
    let prop = Propagator::new(model.clone(), grid.clone()).unwrap();
    let k0 = [3.0, 2.0];
    let t = 5.0;
    for branch in 0..3 {
        let u0 = branch_packet(model.as_ref(), &grid, branch, &[-2.0, -2.0], &k0, 2.5);
        let mut u = u0.clone();
        u.forward_in_place().unwrap();
        let mut u = prop.apply(&u, t).unwrap();
        u.inverse_in_place().unwrap();
        let (c0, c1) = (centroid(&u0), centroid(&u));
        let v = model.grad_omega(&k0, branch);
        let moved = [(c1[0] - c0[0]) / t, (c1[1] - c0[1]) / t];
        let err = ((moved[0] - v[0]).powi(2) + (moved[1] - v[1]).powi(2)).sqrt();
        let speed = (v[0] * v[0] + v[1] * v[1]).sqrt();
        assert!(
            err <= 0.05 * speed.max(0.5),
            "branch {branch}: moved {moved:?}, expected {v:?}"
        );
    }
}

fn euler_setup() -> (
    Arc<dyn WaveModel>,
    Arc<Grid>,
    Vec<psf_core::filter::FilterOperator>,
    f64,
) {
    let grid = Arc::new(Grid::from_points(2, 128, 0.25, 8.0).unwrap());
    let model = euler_model(0.5).unwrap();
    let ctx = ParamContext {
        interior_half_width: grid.interior_half_width(),
        dim: 2,
        dx: grid.dx(),
    };
    let p = manual_parameters(1e-6, 1.0, 1.0, 8.0, 1.5, ctx, 1.515).unwrap();
    let filters = build_filters(model.as_ref(), &grid, &p).unwrap();
    (model, grid, filters, p.t_step)
}

fn ring(grid: &Arc<Grid>, center: f64, k: f64) -> FieldState {
    FieldState::sample(grid.clone(), 3, |x| {
        let r2 = (x[0] - center).powi(2) + x[1] * x[1];
        let v = r2 * (-r2 / 2.0).exp() * (k * r2.sqrt()).cos();
        vec![Complex64::new(v, 0.0), Complex64::default(), Complex64::default()]
    })
}

#[test]
fn norms_never_grow_with_filters() {
    let (model, grid, filters, t_step) = euler_setup();
    let u0 = ring(&grid, 3.0, 4.0);
    let plan = RunPlan {
        t_step,
        t_final: 60.0,
        observe_every: 0.5,
        filters_enabled: true,
    };
    let rec = propagate(&model, &u0, &filters, &plan, None).unwrap();
    assert!(rec.warnings.is_empty(), "{:?}", rec.warnings);
    assert_eq!(rec.filter_events.len(), 40);
    for e in &rec.filter_events {
        assert!(e.norm_after <= e.norm_before * (1.0 + 1e-12));
    }
    for w in rec.l2_norms.windows(2) {
        assert!(w[1] <= w[0] * (1.0 + 1e-12));
    }
    // the pulse has left by now
    assert!(rec.l2_norms.last().unwrap() / rec.initial_norm < 0.05);
}

#[test]
fn runs_are_bit_identical() {
    let (model, grid, filters, t_step) = euler_setup();
    let u0 = ring(&grid, 3.0, 4.0);
    let plan = RunPlan {
        t_step,
        t_final: 7.3,
        observe_every: 0.25,
        filters_enabled: true,
    };
    let a = propagate(&model, &u0, &filters, &plan, None).unwrap();
    let b = propagate(&model, &u0, &filters, &plan, None).unwrap();
    assert_eq!(a.times, b.times);
    assert_eq!(a.l2_norms, b.l2_norms);
    assert_eq!(a.final_state.components(), b.final_state.components());
}

#[test]
fn zero_data_stays_zero() {
    let (model, grid, filters, t_step) = euler_setup();
    let u0 = FieldState::sample(grid.clone(), 3, |_| vec![Complex64::default(); 3]);
    let plan = RunPlan {
        t_step,
        t_final: 5.0,
        observe_every: 1.0,
        filters_enabled: true,
    };
    let rec = propagate(&model, &u0, &filters, &plan, None).unwrap();
    assert!(rec.l2_norms.iter().all(|&n| n == 0.0));
    assert_eq!(rec.final_state.linf_norm(), 0.0);
}

#[test]
fn disabled_filters_give_exact_propagation() {
    let (model, grid, filters, t_step) = euler_setup();
    let u0 = ring(&grid, 0.0, 4.0);
    let plan = RunPlan {
        t_step,
        t_final: 10.0,
        observe_every: 2.5,
        filters_enabled: false,
    };
    let rec = propagate(&model, &u0, &filters, &plan, None).unwrap();
    assert!(rec.filter_events.is_empty());
    let prop = Propagator::new(model.clone(), grid.clone()).unwrap();
    let mut hat = u0.clone();
    hat.forward_in_place().unwrap();
    let mut exact = prop.apply(&hat, 10.0).unwrap();
    exact.inverse_in_place().unwrap();
    assert!(max_abs_diff(&rec.final_state, &exact) < 1e-12 * u0.linf_norm());
    for n in &rec.l2_norms {
        assert!((n / rec.initial_norm - 1.0).abs() < 1e-12);
    }
}

#[test]
fn filters_are_invisible_before_waves_reach_the_buffer() {
    let (model, grid, filters, t_step) = euler_setup();
    let u0 = ring(&grid, 0.0, 4.0);
    // support radius ~4, interior half width 8, speed <= 1.5
    let plan = RunPlan {
        t_step,
        t_final: 2.0,
        observe_every: 0.5,
        filters_enabled: true,
    };
    let rec = propagate(&model, &u0, &filters, &plan, None).unwrap();
    assert!(rec.warnings.is_empty(), "{:?}", rec.warnings);
    let reference = ReferenceSolution::new(model.clone(), &u0, 2, 2.0)
        .unwrap()
        .at(2.0)
        .unwrap();
    let diff = rec.final_state.difference(&reference).unwrap().l2_norm();
    assert!(diff <= 1e-6 * u0.l2_norm(), "{diff:e}");
}

#[test]
fn reference_restriction_at_time_zero_is_the_data() {
    let (model, grid, _, _) = euler_setup();
    let u0 = ring(&grid, 2.0, 3.0);
    let r = ReferenceSolution::new(model, &u0, 4, 10.0).unwrap();
    assert!(max_abs_diff(&r.at(0.0).unwrap(), &u0) < 1e-13);
}

#[test]
fn reference_box_must_be_large_enough() {
    let (model, grid, _, _) = euler_setup();
    let u0 = ring(&grid, 2.0, 3.0);
    let err = ReferenceSolution::new(model, &u0, 2, 100.0).unwrap_err();
    assert!(matches!(err, Error::ReferenceTooSmall(_)));
}
