use std::f64::consts::PI;

use crate::{Error, Result, MAX_DIM};

/// Uniform periodic lattice over `[-L-w, L+w)^dim` and its dual frequency
/// lattice.
///
/// Positions are `x_i = -(L + w) + i dx`. Angular frequencies follow the
/// standard DFT ordering `2 pi / (N dx) * [0, 1, .., N/2-1, -N/2, .., -1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    dim: usize,
    interior_half_width: f64,
    buffer_width: f64,
    dx: f64,
    points: usize,
    k_values: Vec<f64>,
}

impl Grid {
    /// Builds a grid from the interior half width `L`, the buffer width `w`
    /// and the spacing. `2 (L + w) / dx` must be a power of two.
    pub fn new(dim: usize, interior_half_width: f64, buffer_width: f64, dx: f64) -> Result<Self> {
        if !(dx > 0.0) || !(interior_half_width > 0.0) || !(buffer_width >= 0.0) {
            return Err(Error::Grid(format!(
                "lengths must be positive (L = {interior_half_width}, w = {buffer_width}, dx = {dx})"
            )));
        }
        let ratio = 2.0 * (interior_half_width + buffer_width) / dx;
        let points = ratio.round();
        if (ratio - points).abs() > 1e-9 * ratio.max(1.0) || points < 2.0 {
            return Err(Error::Grid(format!(
                "2(L + w)/dx = {ratio} is not an integer number of points"
            )));
        }
        Self::from_points(dim, points as usize, dx, buffer_width)
    }

    /// Builds a grid from the number of points per dimension, the spacing and
    /// the buffer width. The interior half width is `N dx / 2 - w`.
    pub fn from_points(dim: usize, points: usize, dx: f64, buffer_width: f64) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Grid(format!("dimension {dim} not in 1..={MAX_DIM}")));
        }
        if !points.is_power_of_two() || points < 2 {
            return Err(Error::Grid(format!(
                "{points} points per dimension is not a power of two"
            )));
        }
        if !(dx > 0.0) {
            return Err(Error::Grid(format!("spacing {dx} must be positive")));
        }
        let half = points as f64 * dx / 2.0;
        let interior_half_width = half - buffer_width;
        if !(buffer_width >= 0.0) || !(interior_half_width > 0.0) {
            return Err(Error::Grid(format!(
                "buffer width {buffer_width} leaves no interior in a box of half width {half}"
            )));
        }
        let dk = 2.0 * PI / (points as f64 * dx);
        let k_values = (0..points)
            .map(|i| {
                let m = if i < points / 2 {
                    i as f64
                } else {
                    i as f64 - points as f64
                };
                m * dk
            })
            .collect();
        Ok(Self {
            dim,
            interior_half_width,
            buffer_width,
            dx,
            points,
            k_values,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `L`
    pub fn interior_half_width(&self) -> f64 {
        self.interior_half_width
    }

    /// `w`
    pub fn buffer_width(&self) -> f64 {
        self.buffer_width
    }

    /// `L + w`
    pub fn half_extent(&self) -> f64 {
        self.points as f64 * self.dx / 2.0
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn points_per_dim(&self) -> usize {
        self.points
    }

    /// Total number of lattice points, `N^dim`.
    pub fn len(&self) -> usize {
        self.points.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Angular frequencies along one axis in DFT order.
    pub fn k_values(&self) -> &[f64] {
        &self.k_values
    }

    pub fn dk(&self) -> f64 {
        2.0 * PI / (self.points as f64 * self.dx)
    }

    /// Largest resolved frequency, `pi / dx`.
    pub fn kmax(&self) -> f64 {
        PI / self.dx
    }

    /// Measure of one lattice cell, `dx^dim`.
    pub fn cell_volume(&self) -> f64 {
        self.dx.powi(self.dim as i32)
    }

    pub fn x_value(&self, i: usize) -> f64 {
        -self.half_extent() + i as f64 * self.dx
    }

    pub fn x_values(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.x_value(i)).collect()
    }

    /// Per-axis indices of flat index `flat` (axis 0 slowest).
    pub fn unravel(&self, mut flat: usize) -> [usize; MAX_DIM] {
        let mut idx = [0; MAX_DIM];
        for axis in (0..self.dim).rev() {
            idx[axis] = flat % self.points;
            flat /= self.points;
        }
        idx
    }

    pub fn ravel(&self, idx: &[usize]) -> usize {
        idx[..self.dim].iter().fold(0, |acc, &i| acc * self.points + i)
    }

    /// Position of lattice point `flat`.
    pub fn position(&self, flat: usize) -> [f64; MAX_DIM] {
        let idx = self.unravel(flat);
        let mut x = [0.0; MAX_DIM];
        for axis in 0..self.dim {
            x[axis] = self.x_value(idx[axis]);
        }
        x
    }

    /// Frequency vector of lattice point `flat`.
    pub fn wavevector(&self, flat: usize) -> [f64; MAX_DIM] {
        let idx = self.unravel(flat);
        let mut k = [0.0; MAX_DIM];
        for axis in 0..self.dim {
            k[axis] = self.k_values[idx[axis]];
        }
        k
    }

    /// True when the position is inside the closed interior box `[-L, L]^d`.
    pub fn is_interior(&self, flat: usize) -> bool {
        let x = self.position(flat);
        let l = self.interior_half_width * (1.0 + 1e-12);
        x[..self.dim].iter().all(|v| v.abs() <= l)
    }

    /// Grid with the same spacing over a box `factor` times wider. `factor`
    /// must be a power of two so the lattice stays a power of two and the
    /// original points embed exactly.
    pub fn enlarged(&self, factor: usize) -> Result<Grid> {
        if factor == 0 || !factor.is_power_of_two() {
            return Err(Error::Grid(format!(
                "enlargement factor {factor} must be a power of two"
            )));
        }
        let points = self.points * factor;
        let buffer = points as f64 * self.dx / 2.0 - self.interior_half_width;
        Grid::from_points(self.dim, points, self.dx, buffer)
    }

    /// Grids describe the same lattice (buffer split aside).
    pub fn same_lattice(&self, other: &Grid) -> bool {
        self.dim == other.dim && self.points == other.points && (self.dx - other.dx).abs() <= 1e-14 * self.dx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fine_euler_box() {
        let g = Grid::new(2, 16.0, 16.0, 0.125).unwrap();
        assert_eq!(g.points_per_dim(), 512);
        assert!((g.kmax() - 25.132741228718345).abs() < 1e-12);
        assert!((g.points_per_dim() as f64 * g.dx() - 2.0 * (16.0 + 16.0)).abs() < 1e-12);
    }

    #[test]
    fn k_values_are_the_dual_lattice() {
        let g = Grid::from_points(1, 8, 0.5, 1.0).unwrap();
        let dk = 2.0 * PI / 4.0;
        let expected = [0.0, 1.0, 2.0, 3.0, -4.0, -3.0, -2.0, -1.0].map(|m| m * dk);
        for (a, b) in g.k_values().iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!((g.k_values()[4].abs() - g.kmax()).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_power_of_two() {
        assert!(Grid::new(1, 1.0, 0.5, 0.1).is_err());
        assert!(Grid::from_points(2, 12, 0.1, 0.1).is_err());
        assert!(Grid::from_points(2, 16, 0.1, 5.0).is_err());
    }

    #[test]
    fn ravel_round_trip_and_enlarge() {
        let g = Grid::from_points(2, 16, 0.25, 0.5).unwrap();
        for flat in [0, 5, 17, 255] {
            assert_eq!(g.ravel(&g.unravel(flat)), flat);
        }
        let big = g.enlarged(4).unwrap();
        assert_eq!(big.points_per_dim(), 64);
        assert_eq!(big.interior_half_width(), g.interior_half_width());
        assert!(g.enlarged(3).is_err());
    }
}
