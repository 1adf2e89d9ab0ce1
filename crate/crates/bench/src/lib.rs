//! Fixed inputs for the criterion benchmarks, built once so the timed loops
//! measure only the kernel under test.

use rankforge::constructions::{construct_b, construct_c};
use rankforge::{Graph, IntMatrix};

/// The extremal non-bipartite graph of rank `r`.
pub fn c_graph(r: usize) -> Graph {
    construct_c(r).expect("rank in range").graph
}

/// The extremal bipartite graph of rank `2k`.
pub fn b_graph(k: usize) -> Graph {
    construct_b(k).expect("k in range")
}

/// A dense symmetric integer matrix with small entries from a fixed
/// linear congruential sequence.
pub fn pseudo_random_matrix(n: usize, seed: u64) -> IntMatrix {
    let mut state = seed;
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let x = (state >> 33) as i128 % 7 - 3;
            m[(i, j)] = x;
            m[(j, i)] = x;
        }
    }
    m
}
