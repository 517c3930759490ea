#![allow(dead_code)]

use std::sync::Arc;

use psf_core::field::apply_symbol;
use psf_core::linalg::Mat;
use psf_core::models::WaveModel;
use psf_core::{Complex64, FieldState, Grid, Representation, SymbolField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_field(grid: &Arc<Grid>, n: usize, seed: u64) -> FieldState {
    let mut r = rng(seed);
    let comps = (0..n)
        .map(|_| {
            (0..grid.len())
                .map(|_| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
                .collect()
        })
        .collect();
    FieldState::from_components(grid.clone(), comps, Representation::Position).unwrap()
}

/// Projector onto branch `j`, `D^† e_j e_j^T D`, at every frequency.
pub fn branch_projector(model: &dyn WaveModel, grid: &Arc<Grid>, branch: usize) -> SymbolField {
    let n = model.n_components();
    let dim = grid.dim();
    SymbolField::from_fn(grid.clone(), n, |p| {
        let k = grid.wavevector(p);
        let d = model.diagonalizer(&k[..dim]);
        let mut e = vec![Complex64::default(); n];
        e[branch] = Complex64::new(1.0, 0.0);
        Mat::conjugate_diag(&d, &e)
    })
}

/// Gaussian packet `exp(-|x - x0|^2 / (2 s^2)) exp(i k0.x)` projected exactly
/// onto one dispersion branch.
pub fn branch_packet(
    model: &dyn WaveModel,
    grid: &Arc<Grid>,
    branch: usize,
    x0: &[f64],
    k0: &[f64],
    s: f64,
) -> FieldState {
    let n = model.n_components();
    let raw = FieldState::sample(grid.clone(), n, |x| {
        let r2: f64 = x.iter().zip(x0).map(|(a, b)| (a - b) * (a - b)).sum();
        let phase: f64 = x.iter().zip(k0).map(|(a, b)| a * b).sum();
        let v = Complex64::from_polar((-r2 / (2.0 * s * s)).exp(), phase);
        (0..n).map(|_| v).collect()
    });
    let mut hat = raw;
    hat.forward_in_place().unwrap();
    let mut out = apply_symbol(&hat, &branch_projector(model, grid, branch)).unwrap();
    out.inverse_in_place().unwrap();
    out
}

/// Intensity-weighted mean position.
pub fn centroid(u: &FieldState) -> Vec<f64> {
    let grid = u.grid();
    let dim = grid.dim();
    let mut acc = vec![0.0; dim];
    let mut mass = 0.0;
    for p in 0..grid.len() {
        let w: f64 = u.components().iter().map(|c| c[p].norm_sqr()).sum();
        let x = grid.position(p);
        for a in 0..dim {
            acc[a] += w * x[a];
        }
        mass += w;
    }
    acc.iter().map(|v| v / mass).collect()
}

pub fn max_abs_diff(a: &FieldState, b: &FieldState) -> f64 {
    a.components()
        .iter()
        .zip(b.components())
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).norm()))
        .fold(0.0, f64::max)
}
