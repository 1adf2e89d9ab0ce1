//! Oracles and generators shared by the integration test targets.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use rankforge::{BinaryCode, Graph, IntMatrix};

/// Rank by Gauss-Jordan elimination over arbitrary-precision rationals.
pub fn rational_rank(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigRational>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in 0..a.len() {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[rank][c];
                let pivot = a[rank].clone();
                for (x, y) in a[i].iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn gf2_rank(m: &IntMatrix) -> usize {
    let mut rows: Vec<u64> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .enumerate()
                .filter(|(_, &x)| x.rem_euclid(2) == 1)
                .fold(0, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        if let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> c & 1 == 1) {
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && *row >> c & 1 == 1 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
    }
    rank
}

pub fn graph_from_bits(n: usize, bits: impl IntoIterator<Item = bool>) -> Graph {
    let mut g = Graph::new(n).unwrap();
    let mut bits = bits.into_iter();
    for j in 0..n {
        for i in 0..j {
            if bits.next().unwrap_or(false) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, density: f64) -> Graph {
    let bits: Vec<bool> = (0..n * (n - 1) / 2).map(|_| rng.random_bool(density)).collect();
    graph_from_bits(n, bits)
}

/// `count` reduced graphs on 2 to `max_n` vertices, from reducing random
/// graphs of varied density.
pub fn reduced_corpus<R: Rng>(rng: &mut R, count: usize, max_n: usize) -> Vec<Graph> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(2..=max_n);
        let density = rng.random_range(0.15..0.85);
        let g = random_graph(rng, n, density).reduce();
        if g.order() >= 2 {
            out.push(g);
        }
    }
    out
}

/// A code of length `n` on the hyperplane `w . x = 1` with distance at
/// least 2, built greedily from `order`.
pub fn hyperplane_code(n: usize, w: &[i64], order: &[u64]) -> Option<BinaryCode> {
    let mut words: Vec<u64> = Vec::new();
    for &x in order {
        let x = x & ((1 << n) - 1);
        let dot: i64 = (0..n).filter(|&i| x >> i & 1 == 1).map(|i| w[i]).sum();
        if dot == 1 && words.iter().all(|&y| (x ^ y).count_ones() >= 2) {
            words.push(x);
        }
    }
    (words.len() >= 2).then(|| BinaryCode::new(n, words).unwrap())
}

/// Whether a code attaining the Singleton bound for its minimum distance
/// `d` is one of the extremal families, decided from the words alone.
pub fn is_singleton_family(n: usize, words: &[u64], d: usize) -> bool {
    let full = words.len() == 1 << n;
    let half = words.len() == 1 << (n - 1);
    let parity = |odd: u32| words.iter().all(|w| w.count_ones() % 2 == odd);
    let antipodal = words.len() == 2 && d == n;
    full || (half && (parity(0) || parity(1))) || antipodal
}
