//! Shared fixtures for the benchmarks.

use domroots::{Graph, Rational, RationalInterval};
use domroots::IntPoly;

/// The Petersen graph, order 10.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edges(10, &edges).expect("valid edges")
}

/// Deterministic pseudo-random graph of order `n <= 11`.
pub fn pseudo_random(n: usize, seed: u64) -> Graph {
    let pairs = n * (n - 1) / 2;
    let mut x = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    x ^= x >> 29;
    let mask = if pairs == 64 { u64::MAX } else { (1u64 << pairs) - 1 };
    Graph::from_edge_code(n, x & mask).expect("order within edge-code range")
}

/// The window `[-B, 0]` for the root bound `B` of `p`.
pub fn negative_window(p: &IntPoly) -> RationalInterval {
    let b = Rational::from_integer(p.root_bound());
    RationalInterval::new(-b, Rational::from_integer(0.into())).expect("ordered")
}
