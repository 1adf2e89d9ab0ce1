//! Completion of a nonsingular core to reduced graphs of the same rank.
//!
//! If `A` is the adjacency matrix of a core on `r` vertices and a graph of
//! rank `r` contains it as an induced subgraph, every other vertex is fixed
//! by its neighbourhood `b` in the core: the bordered matrix keeps rank `r`
//! only if the entry between two outside vertices equals `b^T A^-1 b'`. So
//! `b^T A^-1 b` must vanish and `b^T A^-1 b'` must be 0 or 1. With `adj(A)`
//! and `det A` in place of the inverse everything stays integral.
//!
//! A reduced completion uses distinct non-zero vectors that are not rows of
//! the core, which turns the search for large completions into a clique
//! search on the compatibility graph of the candidates.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};
use crate::linalg::graph_rank;
use crate::vertex_set::VertexSet;

use super::cores::Core;
use super::GraphClass;

/// A neighbourhood vector `b` into the core with `y = adj(A) b` and
/// `b . y = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionCandidate {
    pub b: VertexSet,
    pub y: Vec<i128>,
}

impl ExtensionCandidate {
    fn new(core: &Core, b: VertexSet) -> Self {
        let r = core.rank();
        let y = (0..r)
            .map(|i| b.iter().map(|j| core.adjugate[(i, j)]).sum())
            .collect();
        ExtensionCandidate { b, y }
    }

    /// `b^T adj(A) b'`.
    fn pairing(&self, other: &ExtensionCandidate) -> i128 {
        other.b.iter().map(|j| self.y[j]).sum()
    }
}

/// Every admissible extension vector of `core`, ascending by bitmask.
pub fn candidates(core: &Core) -> Vec<ExtensionCandidate> {
    let r = core.rank();
    let rows = core.graph.rows();
    (1u64..1 << r)
        .filter(|b| !rows.contains(b))
        .map(|b| ExtensionCandidate::new(core, VertexSet::from_bits(b)))
        .filter(|c| c.pairing(c) == 0)
        .collect()
}

/// The forced adjacency between two extension vertices, or `None` when no
/// rank-preserving completion contains both.
pub fn compatible(core: &Core, a: &ExtensionCandidate, b: &ExtensionCandidate) -> Option<bool> {
    let v = a.pairing(b);
    if v == 0 {
        Some(false)
    } else if v == core.det {
        Some(true)
    } else {
        None
    }
}

/// The core together with one vertex per vector in `ext`, joined as forced.
pub fn complete(core: &Core, ext: &[VertexSet]) -> Result<Graph> {
    let cands: Vec<_> = ext.iter().map(|&b| ExtensionCandidate::new(core, b)).collect();
    let mut g = core.graph.clone();
    for (i, c) in cands.iter().enumerate() {
        if c.pairing(c) != 0 {
            return Err(Error::Internal(format!("vector {} is not admissible", c.b)));
        }
        let mut nbrs = c.b;
        for (j, d) in cands[..i].iter().enumerate() {
            match compatible(core, c, d) {
                Some(true) => nbrs.insert(core.rank() + j),
                Some(false) => {}
                None => {
                    return Err(Error::Internal(format!(
                        "vectors {} and {} are incompatible",
                        c.b, d.b
                    )))
                }
            }
        }
        g.add_vertex(nbrs)?;
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Every completion of the largest order.
    Max,
    /// Every completion with order in `min_order..=max_order`.
    Collect { min_order: usize, max_order: usize },
}

#[derive(Debug, Clone)]
pub struct ExtensionOutcome {
    /// Largest order of a completion in the class, or 0 if there is none.
    pub max_order: usize,
    /// Canonical forms of the recorded completions, sorted.
    pub graphs: Vec<CanonicalForm>,
    /// The extension vectors of every recorded completion.
    pub sets: Vec<Vec<VertexSet>>,
    pub candidates: usize,
    pub nodes: u64,
}

pub fn max_extension(core: &Core, class: GraphClass) -> Result<ExtensionOutcome> {
    extend_core(core, class, SearchMode::Max)
}

pub fn extend_core(core: &Core, class: GraphClass, mode: SearchMode) -> Result<ExtensionOutcome> {
    let r = core.rank();
    let rows = core.graph.rows().to_vec();
    let triangle_free = class.core_needs_triangle_free();
    let cands: Vec<ExtensionCandidate> = candidates(core)
        .into_iter()
        .filter(|c| !triangle_free || core.graph.is_independent(c.b))
        .filter(|c| class != GraphClass::Bipartite || bipartite_with(&rows, c.b.bits()))
        .collect();
    let k = cands.len();
    let mut compat = vec![FixedBitSet::with_capacity(k); k];
    let mut adj = vec![FixedBitSet::with_capacity(k); k];
    for i in 0..k {
        for j in i + 1..k {
            let forced = compatible(core, &cands[i], &cands[j]);
            let ok = match forced {
                None => false,
                Some(false) => true,
                // Two adjacent extensions with a common core neighbour
                // close a triangle.
                Some(true) => !triangle_free || (cands[i].b & cands[j].b).is_empty(),
            };
            if ok {
                compat[i].insert(j);
                compat[j].insert(i);
                if forced == Some(true) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
    }
    let mut search = Search {
        r,
        class,
        mode,
        cand_b: cands.iter().map(|c| c.b.bits()).collect(),
        compat,
        adj,
        chosen: Vec::new(),
        rows,
        best: 0,
        sets: Vec::new(),
        nodes: 0,
    };
    let mut root = FixedBitSet::with_capacity(k);
    root.insert_range(..);
    search.expand(root)?;

    let mut forms = BTreeSet::new();
    let mut sets = Vec::with_capacity(search.sets.len());
    for set in &search.sets {
        let bs: Vec<VertexSet> = set.iter().map(|&i| VertexSet::from_bits(search.cand_b[i])).collect();
        let g = complete(core, &bs)?;
        check_emitted(&g, r, class)?;
        forms.insert(canonical_form(&g));
        sets.push(bs);
    }
    Ok(ExtensionOutcome {
        max_order: search.best,
        graphs: forms.into_iter().collect(),
        sets,
        candidates: k,
        nodes: search.nodes,
    })
}

/// Every graph leaving the search must be reduced, of rank `r` and in the
/// class.
pub(crate) fn check_emitted(g: &Graph, r: usize, class: GraphClass) -> Result<()> {
    let rank = graph_rank(g);
    if rank != r || !g.is_reduced() || !class.contains(g) {
        return Err(Error::Internal(format!(
            "emitted graph {} has rank {rank}, reduced = {}, in class = {}",
            crate::graph6::to_graph6(g),
            g.is_reduced(),
            class.contains(g)
        )));
    }
    Ok(())
}

struct Search {
    r: usize,
    class: GraphClass,
    mode: SearchMode,
    cand_b: Vec<u64>,
    compat: Vec<FixedBitSet>,
    adj: Vec<FixedBitSet>,
    chosen: Vec<usize>,
    rows: Vec<u64>,
    best: usize,
    sets: Vec<Vec<usize>>,
    nodes: u64,
}

impl Search {
    fn order(&self) -> usize {
        self.rows.len()
    }

    /// Row of candidate `c` against the core and the chosen extensions.
    fn row_of(&self, c: usize) -> u64 {
        let mut row = self.cand_b[c];
        for (j, &a) in self.chosen.iter().enumerate() {
            if self.adj[a].contains(c) {
                row |= 1 << (self.r + j);
            }
        }
        row
    }

    fn push(&mut self, c: usize) -> Result<()> {
        let v = self.rows.len();
        if v >= MAX_ORDER {
            return Err(Error::Capacity { requested: v + 1 });
        }
        let row = self.row_of(c);
        for u in VertexSet::from_bits(row) {
            self.rows[u] |= 1 << v;
        }
        self.rows.push(row);
        self.chosen.push(c);
        Ok(())
    }

    fn pop(&mut self) {
        let row = self.rows.pop().expect("pushed before");
        let v = self.rows.len();
        for u in VertexSet::from_bits(row) {
            self.rows[u] &= !(1 << v);
        }
        self.chosen.pop();
    }

    fn visit(&mut self) {
        let order = self.order();
        let valid = match self.class {
            GraphClass::TriangleFreeNonBipartite => !bipartite_with(&self.rows, 0),
            _ => true,
        };
        match self.mode {
            SearchMode::Max => {
                if !valid || order < self.best {
                    return;
                }
                if order > self.best {
                    self.best = order;
                    self.sets.clear();
                }
                self.sets.push(self.chosen.clone());
            }
            SearchMode::Collect { min_order, max_order } => {
                if valid {
                    self.best = self.best.max(order);
                    if (min_order..=max_order).contains(&order) {
                        self.sets.push(self.chosen.clone());
                    }
                }
            }
        }
    }

    /// Number of colour classes in a greedy colouring of the complement of
    /// the compatibility graph on `p`; no feasible set takes two vertices
    /// of one class.
    fn colour_bound(&self, p: &FixedBitSet) -> usize {
        let mut rest = p.clone();
        let mut colours = 0;
        while rest.minimum().is_some() {
            let mut avail = rest.clone();
            while let Some(u) = avail.minimum() {
                rest.set(u, false);
                avail.set(u, false);
                avail.difference_with(&self.compat[u]);
            }
            colours += 1;
        }
        colours
    }

    fn expand(&mut self, mut p: FixedBitSet) -> Result<()> {
        self.nodes += 1;
        self.visit();
        let order = self.order();
        if let SearchMode::Collect { max_order, .. } = self.mode {
            if order >= max_order {
                return Ok(());
            }
        }
        while let Some(v) = p.minimum() {
            let floor = match self.mode {
                SearchMode::Max => self.best,
                SearchMode::Collect { min_order, .. } => min_order,
            };
            if order + self.colour_bound(&p) < floor {
                return Ok(());
            }
            p.set(v, false);
            let mut next = p.clone();
            next.intersect_with(&self.compat[v]);
            if self.class.core_needs_triangle_free() {
                for &a in &self.chosen {
                    if self.adj[a].contains(v) {
                        let mut closing = self.adj[v].clone();
                        closing.intersect_with(&self.adj[a]);
                        next.difference_with(&closing);
                    }
                }
            }
            self.push(v)?;
            if self.class == GraphClass::Bipartite {
                let keep: Vec<usize> = next
                    .ones()
                    .filter(|&d| bipartite_with(&self.rows, self.row_of(d)))
                    .collect();
                next.clear();
                next.extend(keep);
            }
            self.expand(next)?;
            self.pop();
        }
        Ok(())
    }
}

/// Whether the graph on `rows`, plus one extra vertex with neighbourhood
/// `extra` when `extra != 0`, is bipartite.
fn bipartite_with(rows: &[u64], extra: u64) -> bool {
    let n = rows.len() + usize::from(extra != 0);
    let row = |v: usize| -> u64 {
        if v < rows.len() {
            let mut r = rows[v];
            if extra >> v & 1 == 1 {
                r |= 1 << rows.len();
            }
            r
        } else {
            extra
        }
    };
    let mut side = [0u64; 2];
    let mut seen = 0u64;
    for root in 0..n {
        if seen >> root & 1 == 1 {
            continue;
        }
        let mut frontier = 1u64 << root;
        let mut s = 0;
        seen |= frontier;
        side[0] |= frontier;
        while frontier != 0 {
            let mut next = 0u64;
            for v in VertexSet::from_bits(frontier) {
                next |= row(v);
            }
            s ^= 1;
            if next & side[1 - s] != 0 {
                return false;
            }
            next &= !seen;
            seen |= next;
            side[s] |= next;
            frontier = next;
        }
    }
    true
}
