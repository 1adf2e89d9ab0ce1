//! Simple undirected graphs on at most 64 vertices, one bit row per vertex.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Widest graph representable: every neighbourhood is a single `u64`.
pub const MAX_ORDER: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::Capacity { requested: n });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::AdjacentOrEqual { u, v });
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Build from neighbourhood rows. Rows must be symmetric with a zero diagonal.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_ORDER {
            return Err(Error::Capacity { requested: n });
        }
        let mask = VertexSet::full(n).bits();
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 || (row >> v) & 1 == 1 {
                return Err(Error::Internal(format!("row {v} has invalid bits")));
            }
            for u in VertexSet::from_bits(row) {
                if (rows[u] >> v) & 1 == 0 {
                    return Err(Error::Internal(format!("rows {u},{v} not symmetric")));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Graph::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        }
    }

    pub fn check_set(&self, s: VertexSet) -> Result<()> {
        match (s - self.vertices()).first() {
            None => Ok(()),
            Some(v) => Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            }),
        }
    }

    /// Raw neighbourhood rows.
    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_bits(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.adj[u] >> v) & 1 == 1
    }

    /// Panics if either endpoint is out of range or `u == v`.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u}, {v})");
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "bad edge ({u}, {v})");
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    /// Append a vertex adjacent to `nbrs`; returns its index.
    pub fn add_vertex(&mut self, nbrs: VertexSet) -> Result<usize> {
        if self.n == MAX_ORDER {
            return Err(Error::Capacity {
                requested: self.n + 1,
            });
        }
        self.check_set(nbrs)?;
        let v = self.n;
        self.n += 1;
        self.adj.push(nbrs.bits());
        for u in nbrs {
            self.adj[u] |= 1 << v;
        }
        Ok(v)
    }

    /// Append a twin of `v` (same open neighbourhood, not adjacent to `v`).
    pub fn duplicate_vertex(&mut self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        self.add_vertex(self.neighbors(v))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet::from_bits(self.adj[u] & !((2u64 << u).wrapping_sub(1)))
                .iter()
                .map(move |v| (u, v))
        })
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    /// `N(u) △ N(v)`.
    pub fn symmetric_difference(&self, u: usize, v: usize) -> Result<VertexSet> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.neighbors(u) ^ self.neighbors(v))
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges()
            .all(|(u, v)| self.adj[u] & self.adj[v] == 0)
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v] & s.bits() == 0)
    }

    /// BFS 2-colouring. Parts are returned as `(first, second)`; the
    /// lowest-indexed vertex of every component (and every isolated vertex)
    /// lands in `first`.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        self.two_colouring().ok()
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_colouring().is_ok()
    }

    /// An odd closed walk, as a vertex sequence whose last vertex is adjacent
    /// to the first, or `None` if the graph is bipartite.
    pub fn odd_cycle(&self) -> Option<Vec<usize>> {
        self.two_colouring().err()
    }

    fn two_colouring(&self) -> std::result::Result<(VertexSet, VertexSet), Vec<usize>> {
        let mut colour = vec![u8::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut first = VertexSet::EMPTY;
        let mut second = VertexSet::EMPTY;
        for root in 0..self.n {
            if colour[root] != u8::MAX {
                continue;
            }
            colour[root] = 0;
            first.insert(root);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if colour[w] == u8::MAX {
                        colour[w] = 1 - colour[u];
                        parent[w] = u;
                        if colour[w] == 0 {
                            first.insert(w);
                        } else {
                            second.insert(w);
                        }
                        queue.push_back(w);
                    } else if colour[w] == colour[u] {
                        return Err(odd_walk(&parent, u, w));
                    }
                }
            }
        }
        Ok((first, second))
    }

    /// BFS distances from `source`; `usize::MAX` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Maximal classes (size >= 2) of vertices with equal open neighbourhoods,
    /// sorted by smallest member.
    pub fn duplication_classes(&self) -> Vec<VertexSet> {
        self.classes_within(self.vertices())
    }

    /// Duplication classes among the vertices of `within`, comparing full
    /// neighbourhoods.
    pub(crate) fn classes_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut classes = Vec::new();
        for u in within {
            if seen.contains(u) {
                continue;
            }
            let class: VertexSet = within
                .iter()
                .filter(|&w| self.adj[w] == self.adj[u])
                .collect();
            seen = seen | class;
            if class.len() >= 2 {
                classes.push(class);
            }
        }
        classes
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        (0..self.n).filter(|&v| self.adj[v] == 0).collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.isolated_vertices().is_empty() && self.duplication_classes().is_empty()
    }

    /// Delete isolated vertices and all but the smallest-indexed member of
    /// each duplication class, repeating until nothing changes.
    pub fn reduce(&self) -> Graph {
        let mut g = self.clone();
        loop {
            let mut drop = g.isolated_vertices();
            for class in g.duplication_classes() {
                let keep = class.first().expect("classes are non-empty");
                drop = drop | (class - VertexSet::singleton(keep));
            }
            if drop.is_empty() {
                return g;
            }
            g = g.induced_subgraph(g.vertices() - drop);
        }
    }

    /// Subgraph induced on `keep`, with vertices renumbered in ascending
    /// order of their original index.
    pub fn induced_subgraph(&self, keep: VertexSet) -> Graph {
        let keep = keep & self.vertices();
        let index: Vec<usize> = keep.to_vec();
        let adj = index
            .iter()
            .map(|&v| compress(self.adj[v], keep.bits()))
            .collect();
        Graph {
            n: index.len(),
            adj,
        }
    }

    /// `G - X`.
    pub fn remove_vertices(&self, x: VertexSet) -> Graph {
        self.induced_subgraph(self.vertices() - x)
    }

    /// Relabel so that old vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            let mut row = 0u64;
            for w in self.neighbors(u) {
                row |= 1 << perm[w];
            }
            adj[perm[u]] = row;
        }
        Graph { n: self.n, adj }
    }

    /// Disjoint union; vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(Error::Capacity { requested: n });
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|r| r << self.n));
        Ok(Graph { n, adj })
    }
}

/// Pack the bits of `row` selected by `mask` into the low bits.
fn compress(row: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    for (k, v) in VertexSet::from_bits(mask).into_iter().enumerate() {
        if (row >> v) & 1 == 1 {
            out |= 1 << k;
        }
    }
    out
}

/// Closed walk through the BFS tree closing the same-colour edge `u`–`w`.
fn odd_walk(parent: &[usize], u: usize, w: usize) -> Vec<usize> {
    let chain = |mut x: usize| {
        let mut c = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            c.push(x);
        }
        c
    };
    let cu = chain(u);
    let cw = chain(w);
    // Trim the common tail above the lowest common ancestor.
    let mut i = cu.len();
    let mut j = cw.len();
    while i > 1 && j > 1 && cu[i - 2] == cw[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut walk: Vec<usize> = cu[..i].to_vec();
    walk.extend(cw[..j - 1].iter().rev());
    walk
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", crate::graph6::to_graph6(self))
    }
}
