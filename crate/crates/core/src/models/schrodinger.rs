use num_complex::Complex64;

use super::WaveModel;
use crate::linalg::Mat;
use crate::MAX_DIM;

/// Free Schrödinger equation in one dimension, `H = i d^2/dx^2`.
///
/// `H(k) = -i k^2`, so `omega(k) = k^2` and a packet at `k` moves with
/// velocity `2k`. The diagonalizer is the scalar 1.
#[derive(Debug, Clone, Copy, Default)]
pub struct Schrodinger;

impl WaveModel for Schrodinger {
    fn name(&self) -> &'static str {
        "schrodinger"
    }

    fn dim(&self) -> usize {
        1
    }

    fn n_components(&self) -> usize {
        1
    }

    fn omega(&self, k: &[f64], _branch: usize) -> f64 {
        k[0] * k[0]
    }

    fn grad_omega(&self, k: &[f64], _branch: usize) -> [f64; MAX_DIM] {
        [2.0 * k[0], 0.0, 0.0]
    }

    fn diagonalizer(&self, _k: &[f64]) -> Mat {
        Mat::identity(1)
    }

    fn symbol(&self, k: &[f64]) -> Mat {
        Mat::diag(&[Complex64::new(0.0, -k[0] * k[0])])
    }

    fn component_labels(&self) -> &'static [&'static str] {
        &["psi"]
    }
}
