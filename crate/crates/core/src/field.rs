//! Multi-component complex fields and per-frequency matrix symbols.

use std::sync::Arc;

use num_complex::Complex64;

use crate::fft::{fft_nd, Direction};
use crate::grid::Grid;
use crate::linalg::Mat;
use crate::{par, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Position,
    Frequency,
}

/// An `n`-component complex field sampled on a [`Grid`], stored as one
/// contiguous array per component.
///
/// The frequency representation uses the unitary DFT, so the discrete `L^2`
/// norm `sqrt(dx^d sum |u|^2)` is the same number in both representations.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    grid: Arc<Grid>,
    components: Vec<Vec<Complex64>>,
    representation: Representation,
}

impl FieldState {
    pub fn zeros(grid: Arc<Grid>, n_components: usize, representation: Representation) -> Self {
        let len = grid.len();
        Self {
            grid,
            components: vec![vec![Complex64::default(); len]; n_components],
            representation,
        }
    }

    pub fn from_components(
        grid: Arc<Grid>,
        components: Vec<Vec<Complex64>>,
        representation: Representation,
    ) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Dimension("a field needs at least one component".into()));
        }
        if let Some(bad) = components.iter().position(|c| c.len() != grid.len()) {
            return Err(Error::Dimension(format!(
                "component {bad} has {} samples, grid has {}",
                components[bad].len(),
                grid.len()
            )));
        }
        Ok(Self {
            grid,
            components,
            representation,
        })
    }

    /// Samples `f(x) -> [u_0, .., u_{n-1}]` at every lattice point.
    pub fn sample<F>(grid: Arc<Grid>, n_components: usize, f: F) -> Self
    where
        F: Fn(&[f64]) -> Vec<Complex64> + Sync + Send,
    {
        let dim = grid.dim();
        let values = par::map_range(grid.len(), |p| {
            let x = grid.position(p);
            f(&x[..dim])
        });
        let mut components = vec![Vec::with_capacity(grid.len()); n_components];
        for v in values {
            assert_eq!(v.len(), n_components, "sampler returned wrong component count");
            for (c, val) in components.iter_mut().zip(v) {
                c.push(val);
            }
        }
        Self {
            grid,
            components,
            representation: Representation::Position,
        }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    pub fn component(&self, c: usize) -> &[Complex64] {
        &self.components[c]
    }

    pub fn component_mut(&mut self, c: usize) -> &mut [Complex64] {
        &mut self.components[c]
    }

    pub fn components(&self) -> &[Vec<Complex64>] {
        &self.components
    }

    pub(crate) fn components_mut(&mut self) -> &mut [Vec<Complex64>] {
        &mut self.components
    }

    pub fn into_components(self) -> Vec<Vec<Complex64>> {
        self.components
    }

    fn expect(&self, repr: Representation, op: &str) -> Result<()> {
        if self.representation != repr {
            return Err(Error::Contract(format!(
                "{op} expects a field in {repr:?} representation, got {:?}",
                self.representation
            )));
        }
        Ok(())
    }

    fn transform_in_place(&mut self, dir: Direction) {
        let n = self.grid.points_per_dim();
        let dim = self.grid.dim();
        let scale = 1.0 / (self.grid.len() as f64).sqrt();
        for comp in &mut self.components {
            fft_nd(comp, n, dim, dir);
            par::for_each_chunk_mut(comp, par::CHUNK, |_, chunk| {
                for v in chunk {
                    *v *= scale;
                }
            });
        }
    }

    /// Position to frequency representation, in place.
    pub fn forward_in_place(&mut self) -> Result<()> {
        self.expect(Representation::Position, "to_frequency")?;
        self.transform_in_place(Direction::Forward);
        self.representation = Representation::Frequency;
        Ok(())
    }

    /// Frequency to position representation, in place.
    pub fn inverse_in_place(&mut self) -> Result<()> {
        self.expect(Representation::Frequency, "to_position")?;
        self.transform_in_place(Direction::Inverse);
        self.representation = Representation::Position;
        Ok(())
    }

    /// Discrete `L^2` norm, `sqrt(dx^d sum_c sum_p |u_c(p)|^2)`.
    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_where(|_| true)
    }

    /// `L^2` norm restricted to lattice points where `keep(flat)` holds.
    pub fn l2_norm_where<F>(&self, keep: F) -> f64
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        let comps = &self.components;
        let sum = par::sum_range(self.grid.len(), |p| {
            if keep(p) {
                comps.iter().map(|c| c[p].norm_sqr()).sum()
            } else {
                0.0
            }
        });
        (sum * self.grid.cell_volume()).sqrt()
    }

    /// Largest complex magnitude over all components and points.
    pub fn linf_norm(&self) -> f64 {
        self.linf_norm_where(|_| true)
    }

    pub fn linf_norm_where<F>(&self, keep: F) -> f64
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        let comps = &self.components;
        par::max_range(self.grid.len(), |p| {
            if keep(p) {
                comps.iter().map(|c| c[p].norm()).fold(0.0, f64::max)
            } else {
                0.0
            }
        })
    }

    /// `self - other` in the same representation on the same grid.
    pub fn difference(&self, other: &FieldState) -> Result<FieldState> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (a, b) in out.components.iter_mut().zip(&other.components) {
            par::for_each_chunk_mut(a, par::CHUNK, |start, chunk| {
                for (i, v) in chunk.iter_mut().enumerate() {
                    *v -= b[start + i];
                }
            });
        }
        Ok(out)
    }

    /// `a * self + b * other`.
    pub fn linear_combination(&self, a: Complex64, other: &FieldState, b: Complex64) -> Result<FieldState> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (x, y) in out.components.iter_mut().zip(&other.components) {
            par::for_each_chunk_mut(x, par::CHUNK, |start, chunk| {
                for (i, v) in chunk.iter_mut().enumerate() {
                    *v = a * *v + b * y[start + i];
                }
            });
        }
        Ok(out)
    }

    /// Multiplies every component pointwise by a real field.
    pub fn multiply_real(&mut self, weights: &[f64]) -> Result<()> {
        if weights.len() != self.grid.len() {
            return Err(Error::Dimension(format!(
                "weight field has {} samples, grid has {}",
                weights.len(),
                self.grid.len()
            )));
        }
        for comp in &mut self.components {
            par::for_each_chunk_mut(comp, par::CHUNK, |start, chunk| {
                for (i, v) in chunk.iter_mut().enumerate() {
                    *v *= weights[start + i];
                }
            });
        }
        Ok(())
    }

    pub fn check_compatible(&self, other: &FieldState) -> Result<()> {
        if !self.grid.same_lattice(&other.grid) {
            return Err(Error::Dimension("fields live on different grids".into()));
        }
        if self.n_components() != other.n_components() {
            return Err(Error::Dimension(format!(
                "{} vs {} components",
                self.n_components(),
                other.n_components()
            )));
        }
        if self.representation != other.representation {
            return Err(Error::Contract("fields are in different representations".into()));
        }
        Ok(())
    }
}

/// Returns the frequency representation of a position-space field.
pub fn to_frequency(f: &FieldState) -> Result<FieldState> {
    let mut out = f.clone();
    out.forward_in_place()?;
    Ok(out)
}

/// Returns the position representation of a frequency-space field.
pub fn to_position(f: &FieldState) -> Result<FieldState> {
    let mut out = f.clone();
    out.inverse_in_place()?;
    Ok(out)
}

/// One `n x n` complex matrix per frequency lattice point, stored as `n^2`
/// arrays over the lattice (entry `(i, j)` lives in array `i * n + j`).
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolField {
    grid: Arc<Grid>,
    n: usize,
    entries: Vec<Vec<Complex64>>,
}

impl SymbolField {
    /// Evaluates `f(flat_index)` at every lattice point.
    pub fn from_fn<F>(grid: Arc<Grid>, n: usize, f: F) -> Self
    where
        F: Fn(usize) -> Mat + Sync + Send,
    {
        let len = grid.len();
        let mut entries = vec![vec![Complex64::default(); len]; n * n];
        par::zip_chunks_mut(&mut entries, par::CHUNK, |start, parts| {
            let chunk_len = parts[0].len();
            for i in 0..chunk_len {
                let m = f(start + i);
                debug_assert_eq!(m.n(), n);
                for r in 0..n {
                    for c in 0..n {
                        parts[r * n + c][i] = m[(r, c)];
                    }
                }
            }
        });
        Self { grid, n, entries }
    }

    pub fn identity(grid: Arc<Grid>, n: usize) -> Self {
        Self::from_fn(grid, n, |_| Mat::identity(n))
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Matrix at lattice point `flat`.
    pub fn at(&self, flat: usize) -> Mat {
        let mut m = Mat::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                m[(r, c)] = self.entries[r * self.n + c][flat];
            }
        }
        m
    }

    /// Array of entry `(i, j)` over the lattice.
    pub fn entry(&self, i: usize, j: usize) -> &[Complex64] {
        &self.entries[i * self.n + j]
    }
}

/// Returns `S(k) u(k)` at every frequency.
pub fn apply_symbol(f: &FieldState, s: &SymbolField) -> Result<FieldState> {
    let mut out = f.clone();
    apply_symbol_in_place(&mut out, s)?;
    Ok(out)
}

pub fn apply_symbol_in_place(f: &mut FieldState, s: &SymbolField) -> Result<()> {
    f.expect(Representation::Frequency, "apply_symbol")?;
    if s.n != f.n_components() {
        return Err(Error::Dimension(format!(
            "symbol is {0}x{0}, field has {1} components",
            s.n,
            f.n_components()
        )));
    }
    if !s.grid.same_lattice(&f.grid) {
        return Err(Error::Dimension("symbol and field live on different grids".into()));
    }
    let n = s.n;
    let entries = &s.entries;
    par::zip_chunks_mut(f.components_mut(), par::CHUNK, |start, parts| {
        let mut v = [Complex64::default(); crate::linalg::MAX_COMPONENTS];
        for i in 0..parts[0].len() {
            let p = start + i;
            for c in 0..n {
                v[c] = parts[c][i];
            }
            for r in 0..n {
                let row = &entries[r * n..(r + 1) * n];
                let mut acc = Complex64::default();
                for c in 0..n {
                    acc += row[c][p] * v[c];
                }
                parts[r][i] = acc;
            }
        }
    });
    Ok(())
}
