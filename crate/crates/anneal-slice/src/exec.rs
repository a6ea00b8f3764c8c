//! Execution helpers: indexed map with an optional rayon backend, and
//! deterministic seed derivation for independent work items.
//!
//! Every parallel loop in this crate routes through [`map_indexed`] so that
//! results are assembled in index order and are bit-identical to the
//! sequential fallback (`--no-default-features` disables rayon entirely).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..n`, collecting results in index order.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    map_indexed_seq(n, f)
}

/// Sequential reference path, always available. Benchmarks use it to compare
/// against the rayon-backed [`map_indexed`].
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    (0..n).map(f).collect()
}

/// Derives a child seed from a base seed and a list of tags (read index,
/// generation number, slice index, ...) by chaining a SplitMix64 step per tag.
/// Work items keyed this way are order-independent: the same tags always yield
/// the same stream no matter which thread runs them.
pub fn derive_seed(base: u64, tags: &[u64]) -> u64 {
    let mut state = splitmix64(base ^ 0x9e37_79b9_7f4a_7c15);
    for &t in tags {
        state = splitmix64(state ^ splitmix64(t));
    }
    state
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
