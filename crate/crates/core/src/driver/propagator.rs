use std::sync::Arc;

use num_complex::Complex64;

use crate::field::{FieldState, Representation, SymbolField};
use crate::grid::Grid;
use crate::linalg::{Mat, MAX_COMPONENTS};
use crate::models::WaveModel;
use crate::{par, Error, Result};

/// Exact solution operator `D(k)^† exp(diag(-i omega(k)) t) D(k)` of a model
/// on a grid. Matrices are rebuilt per frequency on every call instead of
/// being stored, which keeps memory at one field per call.
#[derive(Debug, Clone)]
pub struct Propagator {
    model: Arc<dyn WaveModel>,
    grid: Arc<Grid>,
}

impl Propagator {
    pub fn new(model: Arc<dyn WaveModel>, grid: Arc<Grid>) -> Result<Self> {
        if model.dim() != grid.dim() {
            return Err(Error::Dimension(format!(
                "{} is {}-dimensional, grid is {}-dimensional",
                model.name(),
                model.dim(),
                grid.dim()
            )));
        }
        Ok(Self { model, grid })
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn model(&self) -> &Arc<dyn WaveModel> {
        &self.model
    }

    /// The propagator matrix at lattice point `p` for time `t`.
    pub fn matrix_at(&self, p: usize, t: f64) -> Mat {
        let dim = self.grid.dim();
        let k = self.grid.wavevector(p);
        let k = &k[..dim];
        let n = self.model.n_components();
        let mut phases = [Complex64::default(); MAX_COMPONENTS];
        for (j, ph) in phases.iter_mut().enumerate().take(n) {
            *ph = Complex64::from_polar(1.0, -self.model.omega(k, j) * t);
        }
        Mat::conjugate_diag(&self.model.diagonalizer(k), &phases[..n])
    }

    /// `U(t) u_hat` for a frequency-space field.
    pub fn apply(&self, u_hat: &FieldState, t: f64) -> Result<FieldState> {
        if u_hat.representation() != Representation::Frequency {
            return Err(Error::Contract("the propagator acts on frequency-space fields".into()));
        }
        if !self.grid.same_lattice(u_hat.grid()) || u_hat.n_components() != self.model.n_components() {
            return Err(Error::Dimension("field does not match the propagator".into()));
        }
        let n = self.model.n_components();
        let mut out = FieldState::zeros(u_hat.grid().clone(), n, Representation::Frequency);
        let src = u_hat.components();
        par::zip_chunks_mut(out.components_mut(), par::CHUNK, |start, parts| {
            for i in 0..parts[0].len() {
                let p = start + i;
                let m = self.matrix_at(p, t);
                for r in 0..n {
                    let mut acc = Complex64::default();
                    for (c, comp) in src.iter().enumerate() {
                        acc += m[(r, c)] * comp[p];
                    }
                    parts[r][i] = acc;
                }
            }
        });
        Ok(out)
    }
}

/// The propagator for a fixed time as a stored symbol field.
pub fn build_propagator(model: &Arc<dyn WaveModel>, grid: &Arc<Grid>, t: f64) -> Result<SymbolField> {
    let prop = Propagator::new(model.clone(), grid.clone())?;
    Ok(SymbolField::from_fn(grid.clone(), model.n_components(), |p| {
        prop.matrix_at(p, t)
    }))
}

/// `1.01 * max |group velocity|` over the lattice frequencies with
/// `|k| <= kmax` and all branches.
pub fn compute_vmax(model: &dyn WaveModel, grid: &Grid) -> f64 {
    let dim = grid.dim();
    let kmax = grid.kmax();
    let n = model.n_components();
    let fastest = par::max_range(grid.len(), |p| {
        let k = grid.wavevector(p);
        let k = &k[..dim];
        let r2: f64 = k.iter().map(|v| v * v).sum();
        if r2 > kmax * kmax * (1.0 + 1e-12) {
            return 0.0;
        }
        (0..n)
            .map(|j| {
                let v = model.grad_omega(k, j);
                v[..dim].iter().map(|c| c * c).sum::<f64>().sqrt()
            })
            .fold(0.0, f64::max)
    });
    1.01 * fastest
}
