//! Canonical labelling by equitable partition refinement and
//! individualization, with automorphism pruning.
//!
//! The search tree is explored depth first. Leaves are compared by their
//! relabelled adjacency rows and the largest one is canonical. Two leaves with
//! equal rows yield an automorphism, which is used both to skip children that
//! lie in the same orbit of the current pointwise stabilizer and to abandon a
//! subtree that is an automorphic image of one already explored.

use std::fmt;

use num_bigint::BigUint;

use crate::graph::Graph;
use crate::graph6::to_graph6;
use crate::vertex_set::VertexSet;

/// Relabelling-invariant certificate of a graph.
#[derive(Clone)]
pub struct CanonicalForm {
    n: usize,
    rows: Vec<u64>,
    group_size: BigUint,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.n
    }

    /// Upper triangle of the canonical adjacency matrix, column by column,
    /// as a string of `0`/`1`.
    pub fn cert(&self) -> String {
        let mut s = String::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for j in 1..self.n {
            for i in 0..j {
                s.push(if (self.rows[i] >> j) & 1 == 1 { '1' } else { '0' });
            }
        }
        s
    }

    /// The canonically labelled graph.
    pub fn graph(&self) -> Graph {
        Graph::from_rows(self.rows.clone()).expect("canonical rows are a valid graph")
    }

    pub fn graph6(&self) -> String {
        to_graph6(&self.graph())
    }

    pub fn automorphism_group_size(&self) -> &BigUint {
        &self.group_size
    }
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows
    }
}

impl Eq for CanonicalForm {}

impl std::hash::Hash for CanonicalForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.rows.hash(state);
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, &self.rows).cmp(&(other.n, &other.rows))
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({}, |Aut| = {})", self.graph6(), self.group_size)
    }
}

/// Full output of the canonical labelling search.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `order[i]` is the vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    /// Smallest vertex of each vertex's automorphism orbit.
    pub orbits: Vec<usize>,
    /// Automorphisms found during the search; they generate the group.
    pub generators: Vec<Vec<usize>>,
    pub group_size: BigUint,
    rows: Vec<u64>,
}

impl Labeling {
    pub fn form(&self) -> CanonicalForm {
        CanonicalForm {
            n: self.order.len(),
            rows: self.rows.clone(),
            group_size: self.group_size.clone(),
        }
    }

    pub fn into_form(self) -> CanonicalForm {
        CanonicalForm {
            n: self.order.len(),
            rows: self.rows,
            group_size: self.group_size,
        }
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).into_form()
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order()
        && a.edge_count() == b.edge_count()
        && canonical_form(a) == canonical_form(b)
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    let n = g.order();
    let mut search = Search {
        g,
        first: None,
        best: None,
        autos: Vec::new(),
        group_size: BigUint::from(1u32),
    };
    let mut root: Partition = if n == 0 { Vec::new() } else { vec![(0..n).collect()] };
    refine(g, &mut root);
    search.node(&root, &mut Vec::new());

    let best = search.best.expect("the search visits at least one leaf");
    let mut uf = UnionFind::new(n);
    for a in &search.autos {
        for (v, &w) in a.iter().enumerate() {
            uf.union(v, w);
        }
    }
    Labeling {
        order: best.perm,
        orbits: (0..n).map(|v| uf.min_of(v)).collect(),
        generators: search.autos,
        group_size: search.group_size,
        rows: best.rows,
    }
}

type Partition = Vec<Vec<usize>>;

/// Refine to the coarsest equitable partition finer than `p`. Cells are split
/// by neighbour counts into each splitter cell, fragments in ascending count
/// order, which keeps the procedure label-invariant.
fn refine(g: &Graph, p: &mut Partition) {
    let rows = g.rows();
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < p.len() {
            let splitter: u64 = p[s].iter().fold(0, |m, &v| m | (1 << v));
            let mut next: Partition = Vec::with_capacity(p.len());
            let mut split_here = false;
            for cell in p.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = cell
                    .iter()
                    .map(|&v| ((rows[v] & splitter).count_ones(), v))
                    .collect();
                if keyed.iter().all(|k| k.0 == keyed[0].0) {
                    next.push(cell.clone());
                    continue;
                }
                keyed.sort_unstable();
                split_here = true;
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|k| k.1).collect());
                        start = i;
                    }
                }
            }
            if split_here {
                *p = next;
                changed = true;
            }
            s += 1;
        }
        if !changed {
            return;
        }
    }
}

struct Leaf {
    path: Vec<usize>,
    perm: Vec<usize>,
    rows: Vec<u64>,
}

struct Search<'g> {
    g: &'g Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
    group_size: BigUint,
}

impl Search<'_> {
    /// Returns `Some(level)` to abandon every node deeper than `level` and
    /// resume with the next child at `level`.
    fn node(&mut self, p: &Partition, path: &mut Vec<usize>) -> Option<usize> {
        let depth = path.len();
        if p.iter().all(|c| c.len() == 1) {
            return self.leaf(p, path);
        }
        let target = p
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .max_by_key(|(i, c)| (c.len(), std::cmp::Reverse(*i)))
            .map(|(i, _)| i)
            .expect("non-discrete partition has a non-singleton cell");
        let cell = p[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        let mut orbit_cache: Option<(usize, UnionFind)> = None;
        for &v in &cell {
            if !explored.is_empty() {
                if orbit_cache.as_ref().map(|c| c.0) != Some(self.autos.len()) {
                    orbit_cache = Some((self.autos.len(), self.stabilizer_orbits(path)));
                }
                let uf = &mut orbit_cache.as_mut().expect("just filled").1;
                if explored.iter().any(|&u| uf.find(u) == uf.find(v)) {
                    continue;
                }
            }
            explored.push(v);
            let mut child: Partition = Vec::with_capacity(p.len() + 1);
            for (i, c) in p.iter().enumerate() {
                if i == target {
                    child.push(vec![v]);
                    child.push(c.iter().copied().filter(|&w| w != v).collect());
                } else {
                    child.push(c.clone());
                }
            }
            refine(self.g, &mut child);
            path.push(v);
            let jump = self.node(&child, path);
            path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        let on_first_path = self
            .first
            .as_ref()
            .is_some_and(|f| f.path.starts_with(path));
        if on_first_path {
            let mut uf = self.stabilizer_orbits(path);
            let lead = cell[0];
            let orbit = cell.iter().filter(|&&u| uf.find(u) == uf.find(lead)).count();
            self.group_size *= BigUint::from(orbit);
        }
        None
    }

    fn leaf(&mut self, p: &Partition, path: &[usize]) -> Option<usize> {
        let perm: Vec<usize> = p.iter().map(|c| c[0]).collect();
        let rows = relabelled_rows(self.g, &perm);
        let leaf = Leaf {
            path: path.to_vec(),
            perm,
            rows,
        };
        let Some(first) = &self.first else {
            self.first = Some(Leaf {
                path: leaf.path.clone(),
                perm: leaf.perm.clone(),
                rows: leaf.rows.clone(),
            });
            self.best = Some(leaf);
            return None;
        };
        if leaf.rows == first.rows {
            let level = divergence(&leaf.path, &first.path);
            let auto = automorphism(&first.perm, &leaf.perm);
            self.autos.push(auto);
            return Some(level);
        }
        let best = self.best.as_ref().expect("set with first");
        match leaf.rows.cmp(&best.rows) {
            std::cmp::Ordering::Equal => {
                let level = divergence(&leaf.path, &best.path);
                let auto = automorphism(&best.perm, &leaf.perm);
                self.autos.push(auto);
                Some(level)
            }
            std::cmp::Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Less => None,
        }
    }

    /// Orbits of the group generated by the known automorphisms that fix
    /// every vertex of `path`.
    fn stabilizer_orbits(&self, path: &[usize]) -> UnionFind {
        let mut uf = UnionFind::new(self.g.order());
        for a in &self.autos {
            if path.iter().all(|&v| a[v] == v) {
                for (v, &w) in a.iter().enumerate() {
                    uf.union(v, w);
                }
            }
        }
        uf
    }
}

fn relabelled_rows(g: &Graph, perm: &[usize]) -> Vec<u64> {
    let n = perm.len();
    let mut pos = vec![0usize; n];
    for (i, &v) in perm.iter().enumerate() {
        pos[v] = i;
    }
    perm.iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .fold(0u64, |row, w| row | (1 << pos[w]))
        })
        .collect()
}

/// The permutation sending `from[i]` to `to[i]`.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut a = vec![0; from.len()];
    for (&f, &t) in from.iter().zip(to) {
        a[f] = t;
    }
    a
}

fn divergence(a: &[usize], b: &[usize]) -> usize {
    a.iter()
        .zip(b)
        .position(|(x, y)| x != y)
        .unwrap_or_else(|| a.len().min(b.len()))
}

/// Orbit partition of the vertex set under the automorphisms in `labeling`,
/// as a list of vertex sets ordered by smallest member.
pub fn orbit_sets(labeling: &Labeling) -> Vec<VertexSet> {
    let n = labeling.orbits.len();
    let mut sets: Vec<VertexSet> = Vec::new();
    for v in 0..n {
        if labeling.orbits[v] == v {
            sets.push((0..n).filter(|&w| labeling.orbits[w] == v).collect());
        }
    }
    sets
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the smaller index as root so `find` yields the orbit minimum.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn min_of(&mut self, x: usize) -> usize {
        self.find(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn brute_aut_count(g: &Graph) -> usize {
        all_permutations(g.order())
            .iter()
            .filter(|p| g.permute(p) == *g)
            .count()
    }

    #[test]
    fn five_cycle_is_relabelling_invariant() {
        let c5 = Graph::cycle(5).unwrap();
        let cert = canonical_form(&c5);
        for p in all_permutations(5) {
            assert_eq!(canonical_form(&c5.permute(&p)), cert);
        }
        assert_eq!(cert.automorphism_group_size(), &BigUint::from(10u32));
    }

    #[test]
    fn distinguishes_path_and_cycle() {
        let p = canonical_form(&Graph::path(5).unwrap());
        let c = canonical_form(&Graph::cycle(5).unwrap());
        assert_ne!(p, c);
        assert_ne!(p.cert(), c.cert());
    }

    #[test]
    fn group_sizes_match_brute_force() {
        let graphs = [
            Graph::new(5).unwrap(),
            Graph::complete(5).unwrap(),
            Graph::path(6).unwrap(),
            Graph::star(4).unwrap(),
            Graph::cycle(6).unwrap(),
            Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).unwrap(),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap(),
            Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (5, 6)]).unwrap(),
        ];
        for g in graphs {
            let l = canonical_labeling(&g);
            assert_eq!(
                l.group_size,
                BigUint::from(brute_aut_count(&g)),
                "{g:?}"
            );
            for a in &l.generators {
                assert_eq!(g.permute(a), g);
            }
        }
    }

    #[test]
    fn orbits_of_path() {
        let l = canonical_labeling(&Graph::path(5).unwrap());
        assert_eq!(l.orbits, vec![0, 1, 2, 1, 0]);
        let sets = orbit_sets(&l);
        assert_eq!(sets.len(), 3);
    }

    #[test]
    fn canonical_graph_is_isomorphic_to_input() {
        let g = Graph::from_edges(6, &[(0, 3), (3, 5), (5, 1), (1, 4), (2, 4)]).unwrap();
        let l = canonical_labeling(&g);
        let mut pos = vec![0; 6];
        for (i, &v) in l.order.iter().enumerate() {
            pos[v] = i;
        }
        assert_eq!(g.permute(&pos), l.form().graph());
    }

    #[test]
    fn empty_and_trivial_graphs() {
        assert_eq!(canonical_form(&Graph::new(0).unwrap()).cert(), "");
        assert_eq!(canonical_form(&Graph::new(1).unwrap()).order(), 1);
        let e = canonical_form(&Graph::new(12).unwrap());
        assert_eq!(e.automorphism_group_size(), &BigUint::from(479_001_600u64));
    }
}
