//! Scalar entropy helpers and the parallel/serial execution shim.
//!
//! Everything downstream that fans out over independent work items
//! (grid points, suite samples, optimizer restarts) goes through
//! [`map_indexed`], which uses rayon when the `parallel` feature is
//! enabled and plain iteration otherwise. Results are always collected
//! in index order, so the two paths produce identical output.

/// Binary entropy H2(x) in bits, with 0 log 0 = 0.
pub fn binary_entropy(x: f64) -> f64 {
    -xlog2(x) - xlog2(1.0 - x)
}

/// x log2(x), continuously extended by 0 at x <= 0.
pub fn xlog2(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

/// Shannon entropy in bits of a nonnegative vector. Entries <= 0
/// contribute nothing (round-off negatives are treated as exact zeros).
pub fn shannon_bits(p: &[f64]) -> f64 {
    let s: f64 = p.iter().map(|&x| xlog2(x)).sum();
    (-s).max(0.0)
}

/// Derives an independent stream seed for work item `index` (splitmix64).
pub(crate) fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add((index.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Evaluates `f(0..n)` and collects results in index order, in parallel
/// when the `parallel` feature is on.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Sequential twin of [`map_indexed`], kept available under every feature
/// set so benchmarks can compare the two paths.
pub fn map_indexed_serial<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}
