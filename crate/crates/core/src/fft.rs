//! Unnormalized multi-dimensional complex FFTs on cubic lattices.
//!
//! Data is row-major with axis 0 slowest. Lines along the contiguous axis
//! are transformed in place; other axes go through an out-of-place
//! transpose so that every 1D transform sees contiguous memory.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Direction {
    Forward,
    Inverse,
}

struct Plans {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

fn plans(n: usize) -> Arc<Plans> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Plans>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("fft plan cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            Arc::new(Plans {
                forward: planner.plan_fft_forward(n),
                inverse: planner.plan_fft_inverse(n),
            })
        })
        .clone()
}

/// Transforms every contiguous line of length `n` in `data`.
fn transform_lines(data: &mut [Complex64], n: usize, fft: &Arc<dyn Fft<f64>>) {
    let lines = data.len() / n;
    // a few lines per task keeps scratch allocation amortized
    let per_task = (par::CHUNK / n).clamp(1, lines.max(1));
    par::for_each_chunk_mut(data, per_task * n, |_, block| {
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        fft.process_with_scratch(block, &mut scratch);
    });
}

/// `dst[c][r] = src[r][c]` for a `rows x cols` row-major `src`.
fn transpose(src: &[Complex64], dst: &mut [Complex64], rows: usize, cols: usize) {
    par::for_each_chunk_mut(dst, rows, |start, out_row| {
        let c = start / rows;
        for (r, v) in out_row.iter_mut().enumerate() {
            *v = src[r * cols + c];
        }
    });
}

/// In-place unnormalized DFT over all `dim` axes of an `n^dim` array.
pub(crate) fn fft_nd(data: &mut [Complex64], n: usize, dim: usize, dir: Direction) {
    debug_assert_eq!(data.len(), n.pow(dim as u32));
    if n <= 1 {
        return;
    }
    let p = plans(n);
    let fft = match dir {
        Direction::Forward => &p.forward,
        Direction::Inverse => &p.inverse,
    };
    // contiguous axis
    transform_lines(data, n, fft);
    if dim == 1 {
        return;
    }
    let mut buf = vec![Complex64::default(); data.len()];
    for axis in 0..dim - 1 {
        let inner = n.pow((dim - 1 - axis) as u32);
        let block = n * inner;
        for (src, tmp) in data.chunks_mut(block).zip(buf.chunks_mut(block)) {
            transpose(src, tmp, n, inner);
            transform_lines(tmp, n, fft);
            transpose(tmp, src, inner, n);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn naive_dft_2d(input: &[Complex64], n: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::default(); n * n];
        for a in 0..n {
            for b in 0..n {
                let mut acc = Complex64::default();
                for i in 0..n {
                    for j in 0..n {
                        let phase = -2.0 * PI * ((a * i + b * j) as f64) / n as f64;
                        acc += input[i * n + j] * Complex64::from_polar(1.0, phase);
                    }
                }
                out[a * n + b] = acc;
            }
        }
        out
    }

    #[test]
    fn matches_direct_sum_in_two_dims() {
        let n = 8;
        let input: Vec<Complex64> = (0..n * n)
            .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 1.3).cos()))
            .collect();
        let expected = naive_dft_2d(&input, n);
        let mut data = input.clone();
        fft_nd(&mut data, n, 2, Direction::Forward);
        for (a, b) in data.iter().zip(&expected) {
            assert!((a - b).norm() < 1e-12);
        }
        fft_nd(&mut data, n, 2, Direction::Inverse);
        for (a, b) in data.iter().zip(&input) {
            assert!((a / (n * n) as f64 - b).norm() < 1e-14);
        }
    }

    #[test]
    fn three_dims_round_trip() {
        let n = 4;
        let input: Vec<Complex64> = (0..n * n * n)
            .map(|i| Complex64::new(i as f64, -(i as f64).sqrt()))
            .collect();
        let mut data = input.clone();
        fft_nd(&mut data, n, 3, Direction::Forward);
        // DC bin is the plain sum
        let sum: Complex64 = input.iter().sum();
        assert!((data[0] - sum).norm() < 1e-10);
        fft_nd(&mut data, n, 3, Direction::Inverse);
        for (a, b) in data.iter().zip(&input) {
            assert!((a / (n * n * n) as f64 - b).norm() < 1e-12);
        }
    }
}
