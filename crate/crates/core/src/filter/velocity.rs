//! Outgoing frequency sets and their erosion by the turning-set margin.
//!
//! Sets are boolean arrays over the frequency lattice in DFT order. Erosion
//! works in sorted ("centered") index space where neighbouring indices are
//! neighbouring frequencies; the lattice is not treated as periodic.

use super::Side;
use crate::grid::Grid;
use crate::models::WaveModel;
use crate::{par, MAX_DIM};

/// Lattices up to this many points are eroded by exhaustive neighbourhood
/// search; larger ones use an exact Euclidean distance transform.
pub const BRUTE_FORCE_LIMIT: usize = 1 << 14;

/// Frequencies where `branch` moves out through `side`.
pub fn raw_velocity_set(model: &dyn WaveModel, grid: &Grid, side: Side, branch: usize) -> Vec<bool> {
    let dim = grid.dim();
    let s = side.sign.factor();
    par::map_range(grid.len(), |p| {
        let k = grid.wavevector(p);
        s * model.grad_omega(&k[..dim], branch)[side.axis] > 0.0
    })
}

/// Lattice points `k` whose every lattice neighbour within distance `k_b`
/// (including `k` itself) is in the raw outgoing set.
pub fn build_velocity_set(model: &dyn WaveModel, grid: &Grid, side: Side, branch: usize, k_b: f64) -> Vec<bool> {
    let raw = raw_velocity_set(model, grid, side, branch);
    if k_b <= 0.0 {
        return raw;
    }
    if grid.len() <= BRUTE_FORCE_LIMIT {
        erode_brute_force(grid, &raw, k_b)
    } else {
        erode_distance_transform(grid, &raw, k_b)
    }
}

/// Squared erosion radius in lattice units.
fn radius_sq(grid: &Grid, k_b: f64) -> f64 {
    let r = k_b / grid.dk();
    r * r
}

fn centered(i: usize, n: usize) -> usize {
    (i + n / 2) % n
}

pub fn erode_brute_force(grid: &Grid, raw: &[bool], k_b: f64) -> Vec<bool> {
    let dim = grid.dim();
    let n = grid.points_per_dim() as i64;
    let r2 = radius_sq(grid, k_b);
    let reach = r2.sqrt().floor() as i64;
    let mut offsets: Vec<[i64; MAX_DIM]> = Vec::new();
    let span = -reach..=reach;
    let mut push = |o: [i64; MAX_DIM]| {
        let d2: i64 = o.iter().map(|v| v * v).sum();
        if d2 as f64 <= r2 {
            offsets.push(o);
        }
    };
    match dim {
        1 => span.for_each(|a| push([a, 0, 0])),
        2 => {
            for a in span.clone() {
                for b in span.clone() {
                    push([a, b, 0]);
                }
            }
        }
        _ => {
            for a in span.clone() {
                for b in span.clone() {
                    for c in span.clone() {
                        push([a, b, c]);
                    }
                }
            }
        }
    }
    par::map_range(grid.len(), |p| {
        if !raw[p] {
            return false;
        }
        let idx = grid.unravel(p);
        let mut s = [0i64; MAX_DIM];
        for axis in 0..dim {
            s[axis] = centered(idx[axis], n as usize) as i64;
        }
        'offsets: for o in &offsets {
            let mut q = [0usize; MAX_DIM];
            for axis in 0..dim {
                let t = s[axis] + o[axis];
                if t < 0 || t >= n {
                    continue 'offsets;
                }
                // centered() is an involution for even n
                q[axis] = centered(t as usize, n as usize);
            }
            if !raw[grid.ravel(&q)] {
                return false;
            }
        }
        true
    })
}

/// Lower envelope of parabolas: `out[q] = min_p (q - p)^2 + f[p]`, with
/// `None` meaning +infinity.
fn distance_1d(f: &[Option<i64>], out: &mut [Option<i64>]) {
    let n = f.len();
    let mut v: Vec<usize> = Vec::with_capacity(n);
    let mut z: Vec<f64> = Vec::with_capacity(n + 1);
    let value = |q: usize| f[q].map(|fq| fq + (q * q) as i64);
    for q in 0..n {
        let Some(hq) = value(q) else { continue };
        loop {
            match v.last() {
                None => {
                    v.push(q);
                    z.clear();
                    z.push(f64::NEG_INFINITY);
                    break;
                }
                Some(&p) => {
                    let hp = value(p).unwrap();
                    let s = (hq - hp) as f64 / (2.0 * (q as f64 - p as f64));
                    if s <= *z.last().unwrap() {
                        v.pop();
                        z.pop();
                        continue;
                    }
                    v.push(q);
                    z.push(s);
                    break;
                }
            }
        }
    }
    if v.is_empty() {
        out.iter_mut().for_each(|o| *o = None);
        return;
    }
    let mut j = 0;
    for (q, o) in out.iter_mut().enumerate() {
        while j + 1 < v.len() && z[j + 1] < q as f64 {
            j += 1;
        }
        let p = v[j];
        let d = q as i64 - p as i64;
        *o = Some(d * d + f[p].unwrap());
    }
}

/// Same result as [`erode_brute_force`], via separable squared distance
/// transforms to the complement set.
pub fn erode_distance_transform(grid: &Grid, raw: &[bool], k_b: f64) -> Vec<bool> {
    let dim = grid.dim();
    let n = grid.points_per_dim();
    let len = grid.len();
    // squared distance to the nearest point outside the set, centered layout
    let mut dist: Vec<Option<i64>> = vec![None; len];
    for (p, &inside) in raw.iter().enumerate() {
        let idx = grid.unravel(p);
        let mut s = [0usize; MAX_DIM];
        for axis in 0..dim {
            s[axis] = centered(idx[axis], n);
        }
        dist[grid.ravel(&s)] = if inside { None } else { Some(0) };
    }
    let mut line_in = vec![None; n];
    let mut line_out = vec![None; n];
    for axis in 0..dim {
        let stride = n.pow((dim - 1 - axis) as u32);
        for start in 0..len {
            // visit each line once, from its first element
            if !(start / stride).is_multiple_of(n) {
                continue;
            }
            for i in 0..n {
                line_in[i] = dist[start + i * stride];
            }
            distance_1d(&line_in, &mut line_out);
            for i in 0..n {
                dist[start + i * stride] = line_out[i];
            }
        }
    }
    let r2 = radius_sq(grid, k_b);
    (0..len)
        .map(|p| {
            if !raw[p] {
                return false;
            }
            let idx = grid.unravel(p);
            let mut s = [0usize; MAX_DIM];
            for axis in 0..dim {
                s[axis] = centered(idx[axis], n);
            }
            match dist[grid.ravel(&s)] {
                None => true,
                Some(d2) => d2 as f64 > r2,
            }
        })
        .collect()
}
