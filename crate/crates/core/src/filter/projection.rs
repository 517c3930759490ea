use std::sync::Arc;

use num_complex::Complex64;

use super::{build_velocity_set, Side};
use crate::fft::{fft_nd, Direction};
use crate::field::SymbolField;
use crate::grid::Grid;
use crate::linalg::{Mat, MAX_COMPONENTS};
use crate::models::WaveModel;
use crate::{par, Error, Result};

/// `exp(-|k|^2 sigma^2)` on the frequency lattice in DFT order, normalized
/// to unit sum. Lattice differences are taken cyclically, which is exactly
/// what circular convolution by FFT computes.
pub fn gaussian_kernel(grid: &Grid, sigma: f64) -> Vec<f64> {
    let dim = grid.dim();
    let raw = par::map_range(grid.len(), |p| {
        let k = grid.wavevector(p);
        let k2: f64 = k[..dim].iter().map(|v| v * v).sum();
        (-k2 * sigma * sigma).exp()
    });
    let total = par::sum_range(raw.len(), |p| raw[p]);
    raw.into_iter().map(|v| v / total).collect()
}

/// Discrete convolution of the indicator of `mask` with [`gaussian_kernel`],
/// clamped to `[0, 1]`.
pub fn smooth_indicator(grid: &Grid, mask: &[bool], sigma: f64) -> Vec<f64> {
    let n = grid.points_per_dim();
    let dim = grid.dim();
    if mask.iter().all(|&m| !m) {
        return vec![0.0; mask.len()];
    }
    let mut a: Vec<Complex64> = mask
        .iter()
        .map(|&m| Complex64::new(f64::from(u8::from(m)), 0.0))
        .collect();
    let mut g: Vec<Complex64> = gaussian_kernel(grid, sigma)
        .into_iter()
        .map(|v| Complex64::new(v, 0.0))
        .collect();
    fft_nd(&mut a, n, dim, Direction::Forward);
    fft_nd(&mut g, n, dim, Direction::Forward);
    let scale = 1.0 / a.len() as f64;
    par::for_each_chunk_mut(&mut a, par::CHUNK, |start, chunk| {
        for (i, v) in chunk.iter_mut().enumerate() {
            *v *= g[start + i] * scale;
        }
    });
    fft_nd(&mut a, n, dim, Direction::Inverse);
    a.into_iter().map(|v| v.re.clamp(0.0, 1.0)).collect()
}

/// Smoothed outgoing indicators `P_j(k)` for every branch of `model`, and the
/// conjugated projection `D(k)^† diag(P(k)) D(k)`.
///
/// The Gaussian in frequency must decay to `delta` well inside the lattice,
/// `sigma kmax >= sqrt(ln(1/delta))`, or the circular convolution wraps
/// visibly.
pub fn build_projection(
    model: &dyn WaveModel,
    grid: &Arc<Grid>,
    side: Side,
    k_b: f64,
    sigma: f64,
    delta: f64,
) -> Result<(Vec<Vec<f64>>, SymbolField)> {
    if !(sigma > 0.0) {
        return Err(Error::FilterParameter(format!("sigma = {sigma} must be positive")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::FilterParameter(format!("delta = {delta} must lie in (0, 1)")));
    }
    let needed = (1.0 / delta).ln().sqrt();
    if sigma * grid.kmax() < needed {
        return Err(Error::FilterParameter(format!(
            "sigma * kmax = {} is below sqrt(ln(1/delta)) = {needed}; the frequency \
             smoothing would wrap around the lattice",
            sigma * grid.kmax()
        )));
    }
    let dim = grid.dim();
    let nc = model.n_components();
    let weights: Vec<Vec<f64>> = (0..nc)
        .map(|branch| {
            let set = build_velocity_set(model, grid, side, branch, k_b);
            smooth_indicator(grid, &set, sigma)
        })
        .collect();
    let symbol = SymbolField::from_fn(grid.clone(), nc, |p| {
        let k = grid.wavevector(p);
        let d: Mat = model.diagonalizer(&k[..dim]);
        let mut diag = [Complex64::default(); MAX_COMPONENTS];
        for (j, w) in weights.iter().enumerate() {
            diag[j] = Complex64::new(w[p], 0.0);
        }
        Mat::conjugate_diag(&d, &diag[..nc])
    });
    Ok((weights, symbol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::Sign;
    use crate::models::schrodinger_model;

    #[test]
    fn full_and_empty_indicators() {
        let grid = Grid::from_points(2, 16, 0.5, 1.0).unwrap();
        let ones = smooth_indicator(&grid, &vec![true; grid.len()], 0.7);
        assert!(ones.iter().all(|v| (v - 1.0).abs() < 1e-14));
        let zeros = smooth_indicator(&grid, &vec![false; grid.len()], 0.7);
        assert!(zeros.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn half_line_step_is_symmetric_about_its_edge() {
        // P(k) for {k > 0}: complementary pairs around the midpoint k = dk/2
        let grid = Arc::new(Grid::from_points(1, 256, 0.1, 3.2).unwrap());
        let m = schrodinger_model();
        let (w, _) = build_projection(m.as_ref(), &grid, Side::new(0, Sign::Plus), 0.0, 1.0, 1e-6).unwrap();
        let p = &w[0];
        let n = grid.points_per_dim();
        for i in 1..20 {
            // k = i dk and k = (1 - i) dk mirror each other about dk/2
            let mirror = (n + 1 - i) % n;
            assert!((p[i] + p[mirror] - 1.0).abs() < 1e-12, "i = {i}");
        }
    }

    #[test]
    fn matches_direct_summation() {
        let grid = Grid::from_points(1, 64, 0.25, 2.0).unwrap();
        let sigma = 0.9;
        let mask: Vec<bool> = grid.k_values().iter().map(|&k| k > 0.3).collect();
        let got = smooth_indicator(&grid, &mask, sigma);
        let n = grid.points_per_dim();
        let dk = grid.dk();
        // periodic lattice distance between indices
        let kernel = |d: usize| {
            let m = d.min(n - d) as f64 * dk;
            (-m * m * sigma * sigma).exp()
        };
        let total: f64 = (0..n).map(kernel).sum();
        for p in 0..n {
            let s: f64 = (0..n)
                .filter(|&q| mask[q])
                .map(|q| kernel((p + n - q) % n))
                .sum::<f64>()
                / total;
            assert!((got[p] - s).abs() < 1e-13);
        }
    }

    #[test]
    fn refuses_wraparound() {
        let grid = Arc::new(Grid::from_points(1, 64, 1.0, 4.0).unwrap());
        let m = schrodinger_model();
        let err = build_projection(m.as_ref(), &grid, Side::new(0, Sign::Plus), 0.0, 0.5, 1e-12);
        assert!(matches!(err, Err(Error::FilterParameter(_))));
    }
}
