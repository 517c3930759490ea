use std::sync::Arc;

use super::{build_chi, build_projection, FilterParams, Side};
use crate::field::{apply_symbol_in_place, FieldState, Representation, SymbolField};
use crate::grid::Grid;
use crate::models::WaveModel;
use crate::{par, Error, Result};

/// `P_out = chi D^† P D chi` for one side of the box.
#[derive(Debug, Clone)]
pub struct FilterOperator {
    side: Side,
    grid: Arc<Grid>,
    chi: Vec<f64>,
    branch_weights: Vec<Vec<f64>>,
    projection: SymbolField,
}

impl FilterOperator {
    pub fn build(model: &dyn WaveModel, grid: &Arc<Grid>, side: Side, params: &FilterParams) -> Result<Self> {
        if side.axis >= grid.dim() {
            return Err(Error::Dimension(format!("side {side} on a {}-d grid", grid.dim())));
        }
        if model.dim() != grid.dim() {
            return Err(Error::Dimension(format!(
                "{} is {}-dimensional, grid is {}-dimensional",
                model.name(),
                model.dim(),
                grid.dim()
            )));
        }
        if (params.w - grid.buffer_width()).abs() > 1e-9 * params.w {
            return Err(Error::Contract(format!(
                "filter built for w = {} on a grid with buffer {}",
                params.w,
                grid.buffer_width()
            )));
        }
        let chi = build_chi(grid, side, params.sigma)?;
        let (branch_weights, projection) = build_projection(model, grid, side, params.k_b, params.sigma, params.delta)?;
        Ok(Self {
            side,
            grid: grid.clone(),
            chi,
            branch_weights,
            projection,
        })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn chi(&self) -> &[f64] {
        &self.chi
    }

    /// Smoothed outgoing indicator of each branch over the frequency lattice.
    pub fn branch_weights(&self) -> &[Vec<f64>] {
        &self.branch_weights
    }

    pub fn projection(&self) -> &SymbolField {
        &self.projection
    }

    /// `P_out u` for a position-space field.
    pub fn outgoing_part(&self, u: &FieldState) -> Result<FieldState> {
        self.check(u)?;
        let mut v = u.clone();
        v.multiply_real(&self.chi)?;
        v.forward_in_place()?;
        apply_symbol_in_place(&mut v, &self.projection)?;
        v.inverse_in_place()?;
        v.multiply_real(&self.chi)?;
        Ok(v)
    }

    /// `u <- (1 - P_out) u`.
    pub fn apply_in_place(&self, u: &mut FieldState) -> Result<()> {
        let out = self.outgoing_part(u)?;
        for (a, b) in u.components_mut().iter_mut().zip(out.components()) {
            par::for_each_chunk_mut(a, par::CHUNK, |start, chunk| {
                for (i, v) in chunk.iter_mut().enumerate() {
                    *v -= b[start + i];
                }
            });
        }
        Ok(())
    }

    fn check(&self, u: &FieldState) -> Result<()> {
        if u.representation() != Representation::Position {
            return Err(Error::Contract("filters act on position-space fields".into()));
        }
        if !self.grid.same_lattice(u.grid()) {
            return Err(Error::Dimension("filter and field live on different grids".into()));
        }
        if u.n_components() != self.projection.n() {
            return Err(Error::Dimension(format!(
                "filter is for {} components, field has {}",
                self.projection.n(),
                u.n_components()
            )));
        }
        Ok(())
    }
}

/// One filter per side, in the order of [`Side::all`].
pub fn build_filters(model: &dyn WaveModel, grid: &Arc<Grid>, params: &FilterParams) -> Result<Vec<FilterOperator>> {
    Side::all(grid.dim())
        .into_iter()
        .map(|side| FilterOperator::build(model, grid, side, params))
        .collect()
}

/// `(1 - P_out) u`.
pub fn apply_filter(u: &FieldState, filter: &FilterOperator) -> Result<FieldState> {
    let mut v = u.clone();
    filter.apply_in_place(&mut v)?;
    Ok(v)
}
