use num_complex::Complex64;

use super::WaveModel;
use crate::linalg::Mat;
use crate::{Error, Result, MAX_DIM};

/// Reduced two-dimensional Maxwell system in an orthotropic medium with
/// in-plane permittivity coupling `b`.
///
/// The `z`-independent equations split into two uncoupled triples. This model
/// keeps the anisotropic one, `(B_z, E_1', E_2')`, where the primed fields are
/// the symmetrized electric components. With
///
/// ```text
/// f = (sqrt(1+b) + sqrt(1-b)) / 2,   g = (sqrt(1-b) - sqrt(1+b)) / 2
/// a(k) = (f k2 - g k1, g k2 - f k1)
/// ```
///
/// the symbol is `H(k) = -i [[0, a^T], [a, 0]]` and the branches are
/// `+E(k)`, `-E(k)`, `0` with `E(k) = |a(k)| = sqrt((f^2+g^2)|k|^2 - 4 f g k1 k2)`.
///
/// `c` (the out-of-plane permittivity) only enters the discarded isotropic
/// triple; it is validated and kept for reporting.
#[derive(Debug, Clone, Copy)]
pub struct OrthotropicMaxwell {
    b: f64,
    c: f64,
    f: f64,
    g: f64,
}

impl OrthotropicMaxwell {
    pub fn new(b: f64, c: f64) -> Result<Self> {
        if !(b.abs() < 1.0) {
            return Err(Error::ModelParameter(format!(
                "anisotropy b = {b} must satisfy |b| < 1"
            )));
        }
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::ModelParameter(format!("permittivity c = {c} must be positive")));
        }
        let (p, m) = ((1.0 + b).sqrt(), (1.0 - b).sqrt());
        Ok(Self {
            b,
            c,
            f: 0.5 * (p + m),
            g: 0.5 * (m - p),
        })
    }

    pub fn f(&self) -> f64 {
        self.f
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    fn coupling(&self, k: &[f64]) -> (f64, f64) {
        (self.f * k[1] - self.g * k[0], self.g * k[1] - self.f * k[0])
    }

    /// `E(k)`
    pub fn speed_term(&self, k: &[f64]) -> f64 {
        let (a1, a2) = self.coupling(k);
        (a1 * a1 + a2 * a2).sqrt()
    }
}

impl WaveModel for OrthotropicMaxwell {
    fn name(&self) -> &'static str {
        "maxwell"
    }

    fn dim(&self) -> usize {
        2
    }

    fn n_components(&self) -> usize {
        3
    }

    fn omega(&self, k: &[f64], branch: usize) -> f64 {
        match branch {
            0 => self.speed_term(k),
            1 => -self.speed_term(k),
            2 => 0.0,
            _ => panic!("maxwell has 3 branches, got {branch}"),
        }
    }

    fn grad_omega(&self, k: &[f64], branch: usize) -> [f64; MAX_DIM] {
        let e = self.speed_term(k);
        if branch == 2 || e == 0.0 {
            return [0.0; MAX_DIM];
        }
        let s = self.f * self.f + self.g * self.g;
        let t = 2.0 * self.f * self.g;
        let grad = [(s * k[0] - t * k[1]) / e, (s * k[1] - t * k[0]) / e];
        match branch {
            0 => [grad[0], grad[1], 0.0],
            1 => [-grad[0], -grad[1], 0.0],
            _ => panic!("maxwell has 3 branches, got {branch}"),
        }
    }

    fn diagonalizer(&self, k: &[f64]) -> Mat {
        let e = self.speed_term(k);
        if e == 0.0 {
            return Mat::identity(3);
        }
        let (a1, a2) = self.coupling(k);
        let (n1, n2) = (a1 / e, a2 / e);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Mat::from_real_rows(&[&[-h, -h * n1, -h * n2], &[h, -h * n1, -h * n2], &[0.0, -n2, n1]])
    }

    fn symbol(&self, k: &[f64]) -> Mat {
        let (a1, a2) = self.coupling(k);
        Mat::from_real_rows(&[&[0.0, a1, a2], &[a1, 0.0, 0.0], &[a2, 0.0, 0.0]]).scale(Complex64::new(0.0, -1.0))
    }

    fn component_labels(&self) -> &'static [&'static str] {
        &["Bz", "E1", "E2"]
    }

    fn parameters(&self) -> Vec<(&'static str, f64)> {
        vec![("b", self.b), ("c", self.c)]
    }
}
