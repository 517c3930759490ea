//! Thin switch between rayon and sequential iteration.
//!
//! Every helper splits work into fixed chunks whose boundaries do not depend
//! on the thread count, so floating point results are identical in both
//! builds.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Chunk length used for reductions and per-point loops.
pub(crate) const CHUNK: usize = 4096;

pub(crate) fn for_each_chunk_mut<T, F>(data: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    let chunk = chunk.max(1);
    #[cfg(feature = "parallel")]
    data.par_chunks_mut(chunk)
        .enumerate()
        .for_each(|(i, c)| f(i * chunk, c));
    #[cfg(not(feature = "parallel"))]
    data.chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i * chunk, c));
}

pub(crate) fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    return (0..n).into_par_iter().map(f).collect();
    #[cfg(not(feature = "parallel"))]
    return (0..n).map(f).collect();
}

/// Sum of `f(i)` over `0..n`, accumulated per fixed chunk and then in order.
pub(crate) fn sum_range<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    let chunks = n.div_ceil(CHUNK);
    map_range(chunks, |c| {
        let lo = c * CHUNK;
        let hi = (lo + CHUNK).min(n);
        (lo..hi).map(&f).sum::<f64>()
    })
    .into_iter()
    .sum()
}

/// Max of `f(i)` over `0..n` (0 for an empty range).
pub(crate) fn max_range<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    let chunks = n.div_ceil(CHUNK);
    map_range(chunks, |c| {
        let lo = c * CHUNK;
        let hi = (lo + CHUNK).min(n);
        (lo..hi).map(&f).fold(0.0, f64::max)
    })
    .into_iter()
    .fold(0.0, f64::max)
}

/// Runs `f(start, parts)` over aligned chunks of several equally long arrays,
/// where `parts[c]` is the chunk of array `c`.
pub(crate) fn zip_chunks_mut<T, F>(arrays: &mut [Vec<T>], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [&mut [T]]) + Sync + Send,
{
    let chunk = chunk.max(1);
    let len = arrays.first().map_or(0, Vec::len);
    let n_chunks = len.div_ceil(chunk);
    let mut grouped: Vec<Vec<&mut [T]>> = (0..n_chunks).map(|_| Vec::new()).collect();
    for array in arrays.iter_mut() {
        debug_assert_eq!(array.len(), len);
        for (slot, part) in grouped.iter_mut().zip(array.chunks_mut(chunk)) {
            slot.push(part);
        }
    }
    #[cfg(feature = "parallel")]
    grouped
        .into_par_iter()
        .enumerate()
        .for_each(|(i, mut parts)| f(i * chunk, &mut parts));
    #[cfg(not(feature = "parallel"))]
    grouped
        .into_iter()
        .enumerate()
        .for_each(|(i, mut parts)| f(i * chunk, &mut parts));
}
