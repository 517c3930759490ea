//! Fixed-capacity complex matrices for per-frequency symbols.

use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

/// Largest component count a [`Mat`] can hold.
pub const MAX_COMPONENTS: usize = 4;

/// Dense `n x n` complex matrix with `n <= MAX_COMPONENTS`, stored inline.
#[derive(Clone, Copy, PartialEq)]
pub struct Mat {
    n: usize,
    a: [Complex64; MAX_COMPONENTS * MAX_COMPONENTS],
}

impl Mat {
    pub fn zeros(n: usize) -> Self {
        assert!(n <= MAX_COMPONENTS, "matrix size {n} exceeds {MAX_COMPONENTS}");
        Self {
            n,
            a: [Complex64::default(); MAX_COMPONENTS * MAX_COMPONENTS],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let mut m = Self::zeros(rows.len());
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), rows.len());
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = Complex64::new(v, 0.0);
            }
        }
        m
    }

    pub fn diag(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut m = *self;
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] *= s;
            }
        }
        m
    }

    pub fn sub(&self, other: &Mat) -> Self {
        assert_eq!(self.n, other.n);
        let mut m = *self;
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] -= other[(i, j)];
            }
        }
        m
    }

    pub fn frobenius(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                s += self[(i, j)].norm_sqr();
            }
        }
        s.sqrt()
    }

    /// `D^† diag(p) D`, the conjugation used by projections and propagators.
    pub fn conjugate_diag(d: &Mat, p: &[Complex64]) -> Self {
        let n = d.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::default();
                for (l, &pl) in p.iter().enumerate().take(n) {
                    acc += d[(l, i)].conj() * pl * d[(l, j)];
                }
                m[(i, j)] = acc;
            }
        }
        m
    }

    /// Largest `|a_ij - a_ji^*|`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.n && j < self.n);
        &self.a[i * MAX_COMPONENTS + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.n && j < self.n);
        &mut self.a[i * MAX_COMPONENTS + j]
    }
}

impl Mul for Mat {
    type Output = Mat;
    fn mul(self, rhs: Mat) -> Mat {
        assert_eq!(self.n, rhs.n);
        let mut m = Mat::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = Complex64::default();
                for l in 0..self.n {
                    acc += self[(i, l)] * rhs[(l, j)];
                }
                m[(i, j)] = acc;
            }
        }
        m
    }
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<Complex64>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)]).collect())
            .collect();
        f.debug_struct("Mat").field("rows", &rows).finish()
    }
}
