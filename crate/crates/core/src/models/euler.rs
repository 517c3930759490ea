use num_complex::Complex64;

use super::{norm, WaveModel};
use crate::linalg::Mat;
use crate::{Error, Result, MAX_DIM};

/// Two-dimensional Euler equations linearized about a uniform jet moving in
/// the `+x_1` direction at Mach number `M`, with state `(pressure, v_1, v_2)`.
///
/// The symbol is `H(k) = -i S(k)` with the real symmetric
///
/// ```text
///        [ M k1   -k1    -k2  ]
/// S(k) = [ -k1    M k1    0   ]
///        [ -k2     0     M k1 ]
/// ```
///
/// whose eigenvalues are the branches `M k1 + |k|`, `M k1 - |k|` (acoustic)
/// and `M k1` (vorticity, advected downstream at speed `M`).
#[derive(Debug, Clone, Copy)]
pub struct LinearizedEuler {
    mach: f64,
}

impl LinearizedEuler {
    pub fn new(mach: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&mach) {
            return Err(Error::ModelParameter(format!("Mach number {mach} outside [0, 1)")));
        }
        Ok(Self { mach })
    }

    pub fn mach(&self) -> f64 {
        self.mach
    }
}

impl WaveModel for LinearizedEuler {
    fn name(&self) -> &'static str {
        "euler"
    }

    fn dim(&self) -> usize {
        2
    }

    fn n_components(&self) -> usize {
        3
    }

    fn omega(&self, k: &[f64], branch: usize) -> f64 {
        let adv = self.mach * k[0];
        match branch {
            0 => adv + norm(k),
            1 => adv - norm(k),
            2 => adv,
            _ => panic!("euler has 3 branches, got {branch}"),
        }
    }

    fn grad_omega(&self, k: &[f64], branch: usize) -> [f64; MAX_DIM] {
        let r = norm(k);
        let m = self.mach;
        match branch {
            // the acoustic branches are not differentiable at k = 0
            0 | 1 if r == 0.0 => [0.0; MAX_DIM],
            0 => [m + k[0] / r, k[1] / r, 0.0],
            1 => [m - k[0] / r, -k[1] / r, 0.0],
            2 => [m, 0.0, 0.0],
            _ => panic!("euler has 3 branches, got {branch}"),
        }
    }

    fn diagonalizer(&self, k: &[f64]) -> Mat {
        let r = norm(k);
        if r == 0.0 {
            return Mat::identity(3);
        }
        let s = 1.0 / (2f64.sqrt() * r);
        let (k1, k2) = (k[0], k[1]);
        Mat::from_real_rows(&[
            &[-r * s, k1 * s, k2 * s],
            &[r * s, k1 * s, k2 * s],
            // unit vector orthogonal to the two acoustic rows
            &[0.0, -k2 / r, k1 / r],
        ])
    }

    fn symbol(&self, k: &[f64]) -> Mat {
        let (k1, k2) = (k[0], k[1]);
        let m = self.mach;
        Mat::from_real_rows(&[&[m * k1, -k1, -k2], &[-k1, m * k1, 0.0], &[-k2, 0.0, m * k1]])
            .scale(Complex64::new(0.0, -1.0))
    }

    fn component_labels(&self) -> &'static [&'static str] {
        &["p", "v1", "v2"]
    }

    fn parameters(&self) -> Vec<(&'static str, f64)> {
        vec![("mach", self.mach)]
    }
}
