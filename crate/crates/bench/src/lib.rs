//! Shared fixtures for the benchmarks.

use lazycops::graph::{gen_gnp, gen_named};
use lazycops::Graph;

pub fn named(kind: &str, sizes: &[usize]) -> Graph {
    gen_named(kind, sizes, 0).expect("fixture family")
}

/// `G(n, n^-alpha)` at a fixed seed.
pub fn gnp(n: usize, alpha: f64) -> Graph {
    gen_gnp(n, (n as f64).powf(-alpha), 1).expect("fixture probability")
}
