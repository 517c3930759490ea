//! Built-in wave systems `u_t = H u` with constant coefficients.
//!
//! Plane waves are written `exp(i (k.x - omega_j(k) t)) d_j(k)`. Every model
//! exposes the Fourier symbol `H(k)` (the generator acting on frequency
//! components), its eigenvalues `-i omega_j(k)`, and a unitary diagonalizer
//! `D(k)` whose rows are the eigenvectors, so that
//! `D H D^† = diag(-i omega_j)` and the exact propagator is
//! `D^† exp(diag(-i omega_j) t) D`. With this convention a narrow packet on
//! branch `j` near `k` moves with velocity `grad omega_j(k)`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::linalg::{Mat, MAX_COMPONENTS};
use crate::{Error, Result, MAX_DIM};

mod euler;
mod maxwell;
mod schrodinger;

pub use euler::LinearizedEuler;
pub use maxwell::OrthotropicMaxwell;
pub use schrodinger::Schrodinger;

pub trait WaveModel: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;
    fn dim(&self) -> usize;
    fn n_components(&self) -> usize;

    /// Dispersion branch `omega_branch(k)`; real for every `k`.
    fn omega(&self, k: &[f64], branch: usize) -> f64;

    /// `grad_k omega_branch(k)`, the group velocity. Unused trailing entries
    /// are zero.
    fn grad_omega(&self, k: &[f64], branch: usize) -> [f64; MAX_DIM];

    /// Unitary `D(k)` with eigenvector rows ordered like the branches.
    fn diagonalizer(&self, k: &[f64]) -> Mat;

    /// Fourier symbol `H(k)`, with eigenvalues `-i omega_j(k)`.
    fn symbol(&self, k: &[f64]) -> Mat;

    fn component_labels(&self) -> &'static [&'static str];

    /// Component a scalar initial pulse is placed in.
    fn source_component(&self) -> usize {
        0
    }

    fn parameters(&self) -> Vec<(&'static str, f64)> {
        Vec::new()
    }

    /// All branches at once.
    fn omegas(&self, k: &[f64]) -> [f64; MAX_COMPONENTS] {
        let mut w = [0.0; MAX_COMPONENTS];
        for (j, slot) in w.iter_mut().enumerate().take(self.n_components()) {
            *slot = self.omega(k, j);
        }
        w
    }
}

/// Model selection as it appears in configuration files.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelSpec {
    Schrodinger,
    Euler { mach: f64 },
    Maxwell { b: f64, c: f64 },
}

impl ModelSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ModelSpec::Schrodinger => "schrodinger",
            ModelSpec::Euler { .. } => "euler",
            ModelSpec::Maxwell { .. } => "maxwell",
        }
    }

    pub fn build(&self) -> Result<Arc<dyn WaveModel>> {
        Ok(match *self {
            ModelSpec::Schrodinger => schrodinger_model(),
            ModelSpec::Euler { mach } => euler_model(mach)?,
            ModelSpec::Maxwell { b, c } => maxwell_model(b, c)?,
        })
    }
}

pub fn schrodinger_model() -> Arc<dyn WaveModel> {
    Arc::new(Schrodinger)
}

pub fn euler_model(mach: f64) -> Result<Arc<dyn WaveModel>> {
    let m = LinearizedEuler::new(mach)?;
    verify_diagonalizer(&m, 32, 25.0)?;
    Ok(Arc::new(m))
}

pub fn maxwell_model(b: f64, c: f64) -> Result<Arc<dyn WaveModel>> {
    let m = OrthotropicMaxwell::new(b, c)?;
    verify_diagonalizer(&m, 32, 25.0)?;
    Ok(Arc::new(m))
}

/// Returns `H(k)`.
pub fn model_symbol(model: &dyn WaveModel, k: &[f64]) -> Mat {
    model.symbol(k)
}

/// Deterministic spread of sample wavevectors with `0.1 <= |k| <= kmax`.
pub fn sample_wavevectors(dim: usize, count: usize, kmax: f64) -> Vec<[f64; MAX_DIM]> {
    const GOLDEN: f64 = 0.618_033_988_749_894_8;
    (0..count)
        .map(|i| {
            let frac = ((i as f64 + 0.5) * GOLDEN).fract();
            let r = 0.1 + (kmax - 0.1) * frac;
            let mut k = [0.0; MAX_DIM];
            match dim {
                1 => k[0] = if i % 2 == 0 { r } else { -r },
                2 => {
                    let a = i as f64 * 2.399_963_229_728_653 + 0.3;
                    k[0] = r * a.cos();
                    k[1] = r * a.sin();
                }
                _ => {
                    // Fibonacci sphere
                    let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
                    let s = (1.0 - z * z).sqrt();
                    let a = i as f64 * 2.399_963_229_728_653;
                    k[0] = r * s * a.cos();
                    k[1] = r * s * a.sin();
                    k[2] = r * z;
                }
            }
            k
        })
        .collect()
}

/// `D H D^† - diag(-i omega)` at `k`.
pub fn diagonalization_residual(model: &dyn WaveModel, k: &[f64]) -> Mat {
    let n = model.n_components();
    let d = model.diagonalizer(k);
    let h = model.symbol(k);
    let omegas = model.omegas(k);
    let target: Vec<Complex64> = omegas[..n].iter().map(|&w| Complex64::new(0.0, -w)).collect();
    (d * h * d.adjoint()).sub(&Mat::diag(&target))
}

/// Checks `D(k)` against the symbol at `count` sample wavevectors: `D` must
/// be unitary and `D H D^†` must equal `diag(-i omega_j)`, both within 1e-10.
/// Reports the first offending entry.
pub fn verify_diagonalizer(model: &dyn WaveModel, count: usize, kmax: f64) -> Result<()> {
    let n = model.n_components();
    for kv in sample_wavevectors(model.dim(), count, kmax) {
        let k = &kv[..model.dim()];
        let d = model.diagonalizer(k);
        let gram = (d * d.adjoint()).sub(&Mat::identity(n));
        let resid = diagonalization_residual(model, k);
        for (m, label) in [(gram, "D D^†"), (resid, "D H D^†")] {
            for row in 0..n {
                for col in 0..n {
                    if m[(row, col)].norm() > 1e-10 {
                        let expected = if label == "D D^†" {
                            if row == col { "1" } else { "0" }.to_string()
                        } else if row == col {
                            format!("-i*{}", model.omega(k, row))
                        } else {
                            "0".to_string()
                        };
                        return Err(Error::Diagonalizer {
                            model: format!("{} ({label})", model.name()),
                            k: k.to_vec(),
                            row,
                            col,
                            expected,
                            found: format!("deviation {}", m[(row, col)]),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn norm(k: &[f64]) -> f64 {
    k.iter().map(|v| v * v).sum::<f64>().sqrt()
}
