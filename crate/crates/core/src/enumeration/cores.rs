//! Nonsingular cores: graphs on exactly `r` vertices with invertible
//! adjacency matrix, one per isomorphism class, generated by canonical
//! augmentation.

use std::collections::HashSet;

use crate::canon::{canonical_form, canonical_labeling};
use crate::error::Result;
use crate::graph::Graph;
use crate::linalg::{adjugate, det_exact, IntMatrix};
use crate::vertex_set::VertexSet;

use super::GraphClass;

/// A graph on `r` vertices of rank `r`, with `det` and the adjugate of its
/// adjacency matrix so that `A * adjugate = det * I`.
#[derive(Debug, Clone)]
pub struct Core {
    pub graph: Graph,
    pub det: i128,
    pub adjugate: IntMatrix,
}

impl Core {
    pub fn new(graph: Graph) -> Result<Option<Core>> {
        let a = IntMatrix::adjacency(&graph);
        if det_exact(&a)? == 0 {
            return Ok(None);
        }
        let (det, adjugate) = adjugate(&a)?;
        Ok(Some(Core {
            graph,
            det,
            adjugate,
        }))
    }

    pub fn rank(&self) -> usize {
        self.graph.order()
    }
}

/// All graphs on `n` vertices in the hereditary class `class` (every class
/// is closed under induced subgraphs once non-bipartiteness is dropped),
/// one per isomorphism class, in generation order.
pub fn graphs_up_to_isomorphism(n: usize, class: GraphClass) -> Vec<Graph> {
    let mut level = vec![Graph::new(0).expect("empty graph")];
    for k in 0..n {
        let mut next = Vec::new();
        for parent in &level {
            let mut seen = HashSet::new();
            for mask in 0..1u64 << k {
                let nbrs = VertexSet::from_bits(mask);
                if class.core_needs_triangle_free() && !parent.is_independent(nbrs) {
                    continue;
                }
                let mut child = parent.clone();
                let v = child.add_vertex(nbrs).expect("order below 64");
                if class == GraphClass::Bipartite && !child.is_bipartite() {
                    continue;
                }
                // Keep the child only if the new vertex is equivalent to the
                // vertex the canonical labelling puts last.
                let labeling = canonical_labeling(&child);
                let last = *labeling.order.last().expect("child is non-empty");
                if labeling.orbits[v] != labeling.orbits[last] {
                    continue;
                }
                if seen.insert(labeling.into_form()) {
                    next.push(child);
                }
            }
        }
        level = next;
    }
    level
}

/// Nonsingular graphs on `r` vertices whose class permits them as an
/// induced subgraph of a class member.
pub fn gen_cores(r: usize, class: GraphClass) -> Result<Vec<Core>> {
    let mut cores = Vec::new();
    for g in graphs_up_to_isomorphism(r, class) {
        if let Some(core) = Core::new(g)? {
            cores.push(core);
        }
    }
    // Generation order depends only on the augmentation rule; sorting by
    // certificate makes the core index stable for sharding.
    cores.sort_by_cached_key(|c| canonical_form(&c.graph));
    Ok(cores)
}
