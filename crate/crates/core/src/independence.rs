//! Maximum independent sets by branch and bound over bitmask candidate sets.
//!
//! Branching picks a maximum-degree vertex of the candidate set; the bound is
//! the size of a greedy clique cover of the remaining candidates, since an
//! independent set meets every clique at most once.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Default cap on the number of maximum independent sets collected.
pub const DEFAULT_SET_CAP: usize = 100_000;

/// `alpha(G)` together with one maximum independent set.
pub fn independence_number(g: &Graph) -> (usize, VertexSet) {
    let mut best = (0, VertexSet::EMPTY);
    let mut search = MaxSearch { rows: g.rows(), best: &mut best };
    search.expand(g.vertices().bits(), 0);
    best
}

struct MaxSearch<'a> {
    rows: &'a [u64],
    best: &'a mut (usize, VertexSet),
}

impl MaxSearch<'_> {
    fn expand(&mut self, mut cand: u64, mut cur: u64) {
        // Vertices of degree <= 1 inside `cand` can always be taken.
        loop {
            let mut forced = None;
            for v in VertexSet::from_bits(cand) {
                if (self.rows[v] & cand).count_ones() <= 1 {
                    forced = Some(v);
                    break;
                }
            }
            match forced {
                Some(v) => {
                    cur |= 1 << v;
                    cand &= !((1 << v) | self.rows[v]);
                }
                None => break,
            }
        }
        let size = cur.count_ones() as usize;
        if cand == 0 {
            if size > self.best.0 {
                *self.best = (size, VertexSet::from_bits(cur));
            }
            return;
        }
        if size + clique_cover(self.rows, cand) <= self.best.0 {
            return;
        }
        let v = max_degree_vertex(self.rows, cand);
        self.expand(cand & !((1 << v) | self.rows[v]), cur | (1 << v));
        self.expand(cand & !(1 << v), cur);
    }
}

fn max_degree_vertex(rows: &[u64], cand: u64) -> usize {
    VertexSet::from_bits(cand)
        .iter()
        .max_by_key(|&v| ((rows[v] & cand).count_ones(), std::cmp::Reverse(v)))
        .expect("cand is non-empty")
}

/// Number of cliques in a greedy cover of `cand`.
fn clique_cover(rows: &[u64], mut cand: u64) -> usize {
    let mut count = 0;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let mut common = rows[v] & cand;
        cand &= !(1 << v);
        while common != 0 {
            let w = common.trailing_zeros() as usize;
            cand &= !(1 << w);
            common &= rows[w];
        }
        count += 1;
    }
    count
}

/// Every independent set of size `alpha(G)`, sorted lexicographically by
/// their ascending vertex lists. Fails once more than `cap` sets are found.
pub fn maximum_independent_sets(g: &Graph, cap: usize) -> Result<Vec<VertexSet>> {
    let (alpha, _) = independence_number(g);
    let mut all = AllSearch {
        rows: g.rows(),
        target: alpha,
        cap,
        found: Vec::new(),
    };
    all.expand(g.vertices().bits(), 0)?;
    let mut sets = all.found;
    sets.sort_by_key(|s| s.to_vec());
    Ok(sets)
}

struct AllSearch<'a> {
    rows: &'a [u64],
    target: usize,
    cap: usize,
    found: Vec<VertexSet>,
}

impl AllSearch<'_> {
    fn expand(&mut self, cand: u64, cur: u64) -> Result<()> {
        let size = cur.count_ones() as usize;
        if size == self.target {
            if self.found.len() == self.cap {
                return Err(Error::CapExceeded {
                    cap: self.cap,
                    found: self.found.len() + 1,
                });
            }
            self.found.push(VertexSet::from_bits(cur));
            return Ok(());
        }
        if cand == 0 || size + clique_cover(self.rows, cand) < self.target {
            return Ok(());
        }
        let v = cand.trailing_zeros() as usize;
        self.expand(cand & !((1 << v) | self.rows[v]), cur | (1 << v))?;
        self.expand(cand & !(1 << v), cur)
    }
}
