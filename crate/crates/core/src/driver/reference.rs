use std::sync::Arc;

use num_complex::Complex64;

use super::{compute_vmax, Propagator};
use crate::field::{FieldState, Representation};
use crate::grid::Grid;
use crate::models::WaveModel;
use crate::{Error, Result, MAX_DIM};

/// Unfiltered exact propagation on a box `factor` times wider than the
/// working grid, sampled back onto the working grid.
///
/// Nothing can wrap around the enlarged periodic box before `t_max`, so on
/// the working grid this is the free-space solution to round-off.
#[derive(Debug)]
pub struct ReferenceSolution {
    small: Arc<Grid>,
    large: Arc<Grid>,
    offset: usize,
    initial_hat: FieldState,
    propagator: Propagator,
}

impl ReferenceSolution {
    pub fn new(model: Arc<dyn WaveModel>, u0: &FieldState, factor: usize, t_max: f64) -> Result<Self> {
        if u0.representation() != Representation::Position {
            return Err(Error::Contract(
                "initial data must be in position representation".into(),
            ));
        }
        let small = u0.grid().clone();
        let large = Arc::new(small.enlarged(factor)?);
        // a signal leaving the working box must travel around the enlarged
        // box before re-entering it
        let clearance = 2.0 * (large.half_extent() - small.half_extent());
        let vmax = compute_vmax(model.as_ref(), &large);
        if vmax * t_max >= clearance {
            return Err(Error::ReferenceTooSmall(format!(
                "vmax * t = {:.3} reaches around the enlarged box (clearance {clearance:.3}); \
                 use a larger enlargement factor than {factor}",
                vmax * t_max
            )));
        }
        let n = small.points_per_dim();
        let offset = (large.points_per_dim() - n) / 2;
        let dim = small.dim();
        let mut components = Vec::with_capacity(u0.n_components());
        for c in u0.components() {
            let mut big = vec![Complex64::default(); large.len()];
            for (p, &v) in c.iter().enumerate() {
                big[large.ravel(&shifted(&small.unravel(p), offset, dim))] = v;
            }
            components.push(big);
        }
        let mut initial_hat = FieldState::from_components(large.clone(), components, Representation::Position)?;
        initial_hat.forward_in_place()?;
        let propagator = Propagator::new(model, large.clone())?;
        Ok(Self {
            small,
            large,
            offset,
            initial_hat,
            propagator,
        })
    }

    pub fn enlarged_grid(&self) -> &Arc<Grid> {
        &self.large
    }

    /// Exact solution at time `t`, restricted to the working grid.
    pub fn at(&self, t: f64) -> Result<FieldState> {
        let mut big = self.propagator.apply(&self.initial_hat, t)?;
        big.inverse_in_place()?;
        let dim = self.small.dim();
        let components = big
            .components()
            .iter()
            .map(|c| {
                (0..self.small.len())
                    .map(|p| c[self.large.ravel(&shifted(&self.small.unravel(p), self.offset, dim))])
                    .collect()
            })
            .collect();
        FieldState::from_components(self.small.clone(), components, Representation::Position)
    }
}

fn shifted(idx: &[usize; MAX_DIM], offset: usize, dim: usize) -> [usize; MAX_DIM] {
    let mut out = [0; MAX_DIM];
    for axis in 0..dim {
        out[axis] = idx[axis] + offset;
    }
    out
}

/// Interior errors of `u` against `reference`, relative to the initial data:
/// `(||u - ref||_2 / ||u0||_2, ||u - ref||_inf / ||u0||_inf)` with the error
/// norms taken over `[-L, L]^d` only.
pub fn relative_error(u: &FieldState, reference: &FieldState, u0: &FieldState) -> Result<(f64, f64)> {
    let diff = u.difference(reference)?;
    if diff.representation() != Representation::Position {
        return Err(Error::Contract("errors are measured in position space".into()));
    }
    let grid = diff.grid().clone();
    let l2 = diff.l2_norm_where(|p| grid.is_interior(p));
    let linf = diff.linf_norm_where(|p| grid.is_interior(p));
    let (n2, ninf) = (u0.l2_norm(), u0.linf_norm());
    if n2 == 0.0 {
        return Err(Error::Contract("relative error of zero initial data".into()));
    }
    Ok((l2 / n2, linf / ninf))
}
