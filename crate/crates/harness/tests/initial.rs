use std::sync::Arc;

use psf_core::{Grid, Representation};
use psf_harness::initial::{gaussian_1d, ring_pulse_2d};

#[test]
fn ring_vanishes_at_its_centre() {
    let grid = Arc::new(Grid::from_points(2, 128, 0.25, 4.0).unwrap());
    let u = ring_pulse_2d(&grid, 3, 0, 10.0, [8.0, 0.0], 3.0);
    let p = (0..grid.len())
        .find(|&p| {
            let x = grid.position(p);
            (x[0] - 8.0).abs() < 1e-12 && x[1].abs() < 1e-12
        })
        .unwrap();
    assert_eq!(u.component(0)[p].norm(), 0.0);
    assert!(u.component(1).iter().chain(u.component(2)).all(|v| v.norm() == 0.0));
}

#[test]
fn ring_spectrum_centres_on_its_frequency() {
    let grid = Arc::new(Grid::from_points(2, 256, 0.125, 4.0).unwrap());
    let mut u = ring_pulse_2d(&grid, 3, 0, 10.0, [0.0, 0.0], 3.0);
    u.forward_in_place().unwrap();
    let (mut num, mut den) = (0.0, 0.0);
    for (p, v) in u.component(0).iter().enumerate() {
        let k = grid.wavevector(p);
        let w = v.norm_sqr();
        num += w * k[0].hypot(k[1]);
        den += w;
    }
    let mean = num / den;
    assert!((mean - 10.0).abs() <= 1.0, "mean |k| = {mean}");
}

#[test]
fn gaussian_at_rest_is_real_and_positive() {
    let grid = Arc::new(Grid::from_points(1, 512, 0.1, 4.0).unwrap());
    let u = gaussian_1d(&grid, 0.0, 0.0, 7.0);
    assert_eq!(u.representation(), Representation::Position);
    assert!(u.component(0).iter().all(|v| v.im == 0.0 && v.re > 0.0));
    let peak = u.component(0).iter().map(|v| v.re).fold(0.0, f64::max);
    assert!((peak - 1.0 / (2.0 * 7f64.sqrt())).abs() < 1e-15);
}

#[test]
fn gaussian_carries_its_frequency() {
    let grid = Arc::new(Grid::from_points(1, 1024, 0.1, 4.0).unwrap());
    let mut u = gaussian_1d(&grid, 5.0, 0.0, 7.0);
    u.forward_in_place().unwrap();
    let (p, _) = u
        .component(0)
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .unwrap();
    assert!((grid.wavevector(p)[0] - 5.0).abs() < 0.07);
}
