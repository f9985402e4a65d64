//! Shared fixtures for the criterion benchmarks.

use tourmap_core::generators::{child_seed, gen_uniform};
use tourmap_core::Tournament;

/// Seeded uniform tournaments, stable across runs so numbers compare.
pub fn uniform_set(n: usize, count: usize) -> Vec<Tournament> {
    (0..count as u64)
        .map(|i| gen_uniform(n, child_seed(0xBE7C4, "bench", i)).unwrap())
        .collect()
}

/// Consecutive disjoint pairs from [`uniform_set`].
pub fn uniform_pairs(n: usize, count: usize) -> Vec<(Tournament, Tournament)> {
    let ts = uniform_set(n, 2 * count);
    ts.chunks_exact(2).map(|c| (c[0].clone(), c[1].clone())).collect()
}
