//! Rank drops under vertex deletion, and the structure of a largest induced
//! subgraph whose rank falls below that of a reduced host.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::graph_rank;
use crate::vertex_set::VertexSet;

/// Largest host order accepted by the exhaustive subgraph search.
pub const MAX_STRUCTURE_ORDER: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankDrop {
    pub lhs: usize,
    pub rhs: i64,
    pub holds: bool,
}

impl RankDrop {
    fn new(lhs: usize, rank_g: usize) -> Self {
        let rhs = rank_g as i64 - 2;
        RankDrop {
            lhs,
            rhs,
            holds: (lhs as i64) <= rhs,
        }
    }
}

fn require_reduced(g: &Graph) -> Result<()> {
    if g.is_reduced() {
        Ok(())
    } else {
        Err(Error::NotReduced)
    }
}

/// `rank(G - N(v))` against `rank(G) - 2`.
pub fn rank_drop_neighborhood(g: &Graph, v: usize) -> Result<RankDrop> {
    g.check_vertex(v)?;
    require_reduced(g)?;
    let lhs = graph_rank(&g.remove_vertices(g.neighbors(v)));
    Ok(RankDrop::new(lhs, graph_rank(g)))
}

/// `rank(G - (N(u) △ N(v)))` against `rank(G) - 2` for distinct
/// non-adjacent `u`, `v`.
pub fn rank_drop_symdiff(g: &Graph, u: usize, v: usize) -> Result<RankDrop> {
    let diff = g.symmetric_difference(u, v)?;
    if u == v || g.has_edge(u, v) {
        return Err(Error::AdjacentOrEqual { u, v });
    }
    require_reduced(g)?;
    let lhs = graph_rank(&g.remove_vertices(diff));
    Ok(RankDrop::new(lhs, graph_rank(g)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    fn fail(witness: String) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
        }
    }

    fn check(ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Verdict::pass()
        } else {
            Verdict::fail(witness())
        }
    }
}

/// A largest induced subgraph `H` with `rank(H) <= rank(G) - gap`, its
/// duplication pairs, isolated vertices and the split of the deleted
/// vertices into `t1` and `t2`, with each structural property checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub host: Graph,
    pub gap: usize,
    pub h_vertices: VertexSet,
    pub rank_h: usize,
    pub rank_g: usize,
    /// `(v, v')` with `v` on the side of `t1`.
    pub duplication_pairs: Vec<(usize, usize)>,
    /// Duplication classes of `H` with three or more members.
    pub oversized_classes: Vec<VertexSet>,
    pub isolated_count: usize,
    pub t1: VertexSet,
    pub t2: VertexSet,
    pub verdicts: BTreeMap<String, Verdict>,
}

impl StructureReport {
    pub fn deleted(&self) -> VertexSet {
        self.host.vertices() - self.h_vertices
    }

    pub fn all_hold(&self) -> bool {
        self.verdicts.values().all(|v| v.holds)
    }
}

fn check_structure_input(g: &Graph, gap: usize) -> Result<usize> {
    if !(1..=2).contains(&gap) {
        return Err(Error::OutOfRange {
            what: "gap",
            value: gap as i64,
            allowed: "1..=2",
        });
    }
    if g.order() > MAX_STRUCTURE_ORDER {
        return Err(Error::OutOfRange {
            what: "order",
            value: g.order() as i64,
            allowed: "<= 14",
        });
    }
    require_reduced(g)?;
    let rank_g = graph_rank(g);
    if rank_g < gap {
        return Err(Error::OutOfRange {
            what: "rank",
            value: rank_g as i64,
            allowed: ">= gap",
        });
    }
    Ok(rank_g)
}

/// Subsets of `universe` of size `k` in lexicographic order of their
/// ascending element lists.
fn combinations(universe: &[usize], k: usize, mut visit: impl FnMut(VertexSet) -> bool) {
    fn rec(
        universe: &[usize],
        k: usize,
        start: usize,
        cur: VertexSet,
        visit: &mut dyn FnMut(VertexSet) -> bool,
    ) -> bool {
        if k == 0 {
            return visit(cur);
        }
        for i in start..=universe.len() - k {
            let mut next = cur;
            next.insert(universe[i]);
            if !rec(universe, k - 1, i + 1, next, visit) {
                return false;
            }
        }
        true
    }
    if k <= universe.len() {
        rec(universe, k, 0, VertexSet::EMPTY, &mut visit);
    }
}

/// Every smallest deletion set `T` with `rank(G - T) <= rank(G) - gap`,
/// in lexicographic order.
pub fn minimum_deletions(g: &Graph, gap: usize) -> Result<Vec<VertexSet>> {
    let rank_g = check_structure_input(g, gap)?;
    let verts = g.vertices().to_vec();
    for k in 0..=verts.len() {
        let mut found = Vec::new();
        combinations(&verts, k, |t| {
            if graph_rank(&g.remove_vertices(t)) + gap <= rank_g {
                found.push(t);
            }
            true
        });
        if !found.is_empty() {
            return Ok(found);
        }
    }
    Err(Error::Internal("deleting every vertex gives rank 0".into()))
}

/// The largest induced subgraph `H` of the reduced graph `g` with
/// `rank(H) <= rank(g) - gap`, found exhaustively by increasing deletion
/// size. Ties go to the lexicographically smallest deletion set.
pub fn max_subgraph_below_rank(g: &Graph, gap: usize) -> Result<StructureReport> {
    let rank_g = check_structure_input(g, gap)?;
    let verts = g.vertices().to_vec();
    for k in 0..=verts.len() {
        let mut hit = None;
        combinations(&verts, k, |t| {
            if graph_rank(&g.remove_vertices(t)) + gap <= rank_g {
                hit = Some(t);
                false
            } else {
                true
            }
        });
        if let Some(t) = hit {
            return structure_report(g, g.vertices() - t, gap);
        }
    }
    Err(Error::Internal("deleting every vertex gives rank 0".into()))
}

/// Decomposes `H = G[h_vertices]` and evaluates every property claimed for
/// a largest subgraph of rank at most `rank(G) - gap`. The caller is
/// responsible for `H` being such a subgraph.
pub fn structure_report(g: &Graph, h_vertices: VertexSet, gap: usize) -> Result<StructureReport> {
    g.check_set(h_vertices)?;
    let rank_g = graph_rank(g);
    let h = g.induced_subgraph(h_vertices);
    let rank_h = graph_rank(&h);
    let index = h_vertices.to_vec();
    let deleted = g.vertices() - h_vertices;
    let lift = |s: VertexSet| -> VertexSet { s.iter().map(|i| index[i]).collect() };

    let isolated = lift(h.isolated_vertices());
    let classes: Vec<VertexSet> = h
        .duplication_classes()
        .into_iter()
        .map(lift)
        .filter(|c| !c.is_subset(isolated))
        .collect();
    let oversized: Vec<VertexSet> = classes.iter().copied().filter(|c| c.len() > 2).collect();

    let mut verdicts = BTreeMap::new();
    let floor = rank_g as i64 - gap as i64 - 1;
    verdicts.insert(
        "rank_lower_bound".to_string(),
        Verdict::check(rank_h as i64 >= floor, || {
            format!("rank(H) = {rank_h} < {floor}")
        }),
    );
    if gap == 1 {
        let reduced = h.is_reduced();
        verdicts.insert(
            "equality_when_not_reduced".to_string(),
            Verdict::check(reduced || rank_h + 2 == rank_g, || {
                format!("H is not reduced but rank(H) = {rank_h}, rank(G) = {rank_g}")
            }),
        );
    }

    let mut min_measure = (usize::MAX, String::new());
    for u in g.vertices() {
        if g.degree(u) < min_measure.0 {
            min_measure = (g.degree(u), format!("|N({u})| = {}", g.degree(u)));
        }
        for v in u + 1..g.order() {
            let d = (g.neighbors(u) ^ g.neighbors(v)).len();
            if d < min_measure.0 {
                min_measure = (d, format!("|N({u}) △ N({v})| = {d}"));
            }
        }
    }
    verdicts.insert(
        "deletion_size".to_string(),
        Verdict::check(deleted.len() <= min_measure.0, || {
            format!("{} vertices deleted but {}", deleted.len(), min_measure.1)
        }),
    );

    let bad_isolated = isolated.iter().find(|&w| g.neighbors(w) != deleted);
    verdicts.insert(
        "isolated_neighborhood".to_string(),
        Verdict::check(bad_isolated.is_none(), || {
            let w = bad_isolated.unwrap();
            format!("N({w}) = {} but the deleted set is {deleted}", g.neighbors(w))
        }),
    );

    verdicts.insert(
        "classes_are_pairs".to_string(),
        Verdict::check(oversized.is_empty() && isolated.len() <= 1, || {
            if let Some(c) = oversized.first() {
                format!("duplication class {c} has {} members", c.len())
            } else {
                format!("{} isolated vertices {isolated}", isolated.len())
            }
        }),
    );

    let labeling = label_pairs(g, &classes, deleted);
    let (pairs, t1, t2) = match &labeling {
        Ok(l) => l.clone(),
        Err(_) => (
            classes
                .iter()
                .filter(|c| c.len() == 2)
                .map(|c| {
                    let v = c.to_vec();
                    (v[0], v[1])
                })
                .collect(),
            VertexSet::EMPTY,
            VertexSet::EMPTY,
        ),
    };
    verdicts.insert(
        "pair_labeling".to_string(),
        match labeling {
            Ok(_) => Verdict::pass(),
            Err(w) => Verdict::fail(w),
        },
    );

    Ok(StructureReport {
        host: g.clone(),
        gap,
        h_vertices,
        rank_h,
        rank_g,
        duplication_pairs: pairs,
        oversized_classes: oversized,
        isolated_count: isolated.len(),
        t1,
        t2,
        verdicts,
    })
}

type PairLabeling = (Vec<(usize, usize)>, VertexSet, VertexSet);

/// Orients each duplication pair `{v, v'}` so that one set `t1` of deleted
/// vertices sees every `v` and not `v'`, and the rest `t2` see every `v'`
/// and not `v`. The smallest deleted vertex goes to `t1`.
fn label_pairs(g: &Graph, classes: &[VertexSet], deleted: VertexSet) -> Result<PairLabeling, String> {
    let Some(anchor) = deleted.first() else {
        let pairs = classes
            .iter()
            .map(|c| {
                let v = c.to_vec();
                (v[0], v[1])
            })
            .collect();
        return Ok((pairs, VertexSet::EMPTY, VertexSet::EMPTY));
    };
    let mut pairs = Vec::new();
    let mut t1 = deleted;
    let mut first_class: Option<VertexSet> = None;
    for &class in classes {
        if class.len() != 2 {
            return Err(format!("class {class} is not a pair"));
        }
        let members = class.to_vec();
        for t in deleted {
            if (g.neighbors(t) & class).len() != 1 {
                return Err(format!("deleted vertex {t} is adjacent to {} members of {class}", (g.neighbors(t) & class).len()));
            }
        }
        let (v, vp) = if g.has_edge(anchor, members[0]) {
            (members[0], members[1])
        } else {
            (members[1], members[0])
        };
        let side: VertexSet = deleted.iter().filter(|&t| g.has_edge(t, v)).collect();
        match first_class {
            None => {
                t1 = side;
                first_class = Some(class);
            }
            Some(prev) if side != t1 => {
                let t = (side ^ t1).first().expect("sides differ");
                return Err(format!(
                    "deleted vertices {anchor} and {t} agree on {prev} but not on {class}"
                ));
            }
            Some(_) => {}
        }
        pairs.push((v, vp));
    }
    Ok((pairs, t1, deleted - t1))
}

/// Searches for two duplication pairs `{a, a'}`, `{b, b'}` and two deleted
/// vertices `t`, `t'` with `t ~ a, b` and `t' ~ a, b'` (each avoiding the
/// other member of both pairs). Such a principal submatrix would push the
/// rank of `H` four below that of the host. Returns `true` when no such
/// configuration exists.
pub fn validate_lov_matrix_obstruction(report: &StructureReport) -> bool {
    let g = &report.host;
    let deleted = report.deleted();
    let sees = |t: usize, x: usize, y: usize| g.has_edge(t, x) && !g.has_edge(t, y);
    let pairs = &report.duplication_pairs;
    for (i, &(a, ap)) in pairs.iter().enumerate() {
        for &(b, bp) in &pairs[i + 1..] {
            for t in deleted {
                for tp in deleted {
                    if t == tp {
                        continue;
                    }
                    for (x, xp) in [(a, ap), (ap, a)] {
                        for (y, yp) in [(b, bp), (bp, b)] {
                            if sees(t, x, xp) && sees(tp, x, xp) && sees(t, y, yp) && sees(tp, yp, y) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{construct_c, Role};

    #[test]
    fn neighborhood_deletion_examples() {
        let c5 = Graph::cycle(5).unwrap();
        let d = rank_drop_neighborhood(&c5, 0).unwrap();
        assert_eq!((d.lhs, d.rhs, d.holds), (2, 3, true));
        let c8 = construct_c(8).unwrap();
        assert!(rank_drop_neighborhood(&c8.graph, c8.vertex(Role::Y)).unwrap().holds);
        assert!(rank_drop_neighborhood(&Graph::path(5).unwrap(), 0).unwrap().holds);
        let star = Graph::star(3).unwrap();
        assert_eq!(rank_drop_neighborhood(&star, 0), Err(Error::NotReduced));
    }

    #[test]
    fn symdiff_deletion_examples() {
        let p5 = Graph::path(5).unwrap();
        assert!(rank_drop_symdiff(&p5, 0, 2).unwrap().holds);
        let c6 = construct_c(6).unwrap().graph;
        for u in 0..c6.order() {
            for v in u + 1..c6.order() {
                if !c6.has_edge(u, v) {
                    assert!(rank_drop_symdiff(&c6, u, v).unwrap().holds);
                }
            }
        }
        assert!(rank_drop_symdiff(&Graph::cycle(5).unwrap(), 0, 2).unwrap().holds);
        assert_eq!(rank_drop_symdiff(&p5, 0, 1), Err(Error::AdjacentOrEqual { u: 0, v: 1 }));
        assert_eq!(rank_drop_symdiff(&p5, 2, 2), Err(Error::AdjacentOrEqual { u: 2, v: 2 }));
    }

    #[test]
    fn five_path_gap_one() {
        let p5 = Graph::path(5).unwrap();
        let rep = max_subgraph_below_rank(&p5, 1).unwrap();
        assert_eq!(rep.h_vertices, VertexSet::from_iter([0, 2, 3, 4]));
        assert_eq!((rep.rank_h, rep.rank_g, rep.isolated_count), (2, 4, 1));
        assert!(rep.all_hold(), "{:?}", rep.verdicts);
        assert_eq!(p5.neighbors(0), rep.deleted());
        assert!(validate_lov_matrix_obstruction(&rep));
    }

    #[test]
    fn five_cycle_gap_one() {
        // Every single deletion leaves a 4-path of full rank 4, and deleting
        // two adjacent vertices leaves a 3-path of rank 2.
        let c5 = Graph::cycle(5).unwrap();
        let rep = max_subgraph_below_rank(&c5, 1).unwrap();
        assert_eq!(rep.h_vertices.len(), 4);
        assert_eq!(rep.rank_h, 4);
        assert!(rep.all_hold(), "{:?}", rep.verdicts);
        let rep2 = max_subgraph_below_rank(&c5, 2).unwrap();
        assert_eq!((rep2.h_vertices.len(), rep2.rank_h), (3, 2));
        assert!(rep2.all_hold());
    }

    #[test]
    fn non_reduced_hosts_are_rejected() {
        let g = Graph::star(3).unwrap();
        assert_eq!(max_subgraph_below_rank(&g, 1), Err(Error::NotReduced));
        let big = construct_c(8).unwrap().graph;
        assert!(matches!(max_subgraph_below_rank(&big, 1), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn ties_all_satisfy_the_properties() {
        let g = construct_c(6).unwrap().graph;
        for gap in [1, 2] {
            let ties = minimum_deletions(&g, gap).unwrap();
            assert!(!ties.is_empty());
            let rep = max_subgraph_below_rank(&g, gap).unwrap();
            assert_eq!(rep.deleted(), ties[0]);
            for t in ties {
                let r = structure_report(&g, g.vertices() - t, gap).unwrap();
                assert!(r.all_hold(), "gap {gap}, T = {t}: {:?}", r.verdicts);
                assert!(validate_lov_matrix_obstruction(&r));
            }
        }
    }

    #[test]
    fn hand_built_obstruction_is_detected() {
        // H = {0..5}: pairs {0,1} and {2,3} (twins in H), 4 ~ 0,1 and
        // 5 ~ 2,3. Deleted 6 ~ 0, 2 and 7 ~ 0, 3.
        let g = Graph::from_edges(
            8,
            &[(4, 0), (4, 1), (5, 2), (5, 3), (6, 0), (6, 2), (7, 0), (7, 3)],
        )
        .unwrap();
        let h = VertexSet::full(6);
        let rep = structure_report(&g, h, 1).unwrap();
        assert_eq!(rep.duplication_pairs.len(), 2);
        assert!(!rep.verdicts["pair_labeling"].holds);
        assert!(!validate_lov_matrix_obstruction(&rep));

        let mut consistent = g.clone();
        consistent.remove_edge(7, 3);
        consistent.add_edge(7, 2);
        let rep = structure_report(&consistent, h, 1).unwrap();
        assert!(rep.verdicts["pair_labeling"].holds);
        assert!(validate_lov_matrix_obstruction(&rep));
    }

    #[test]
    fn empty_deletion_is_vacuous() {
        let g = Graph::cycle(5).unwrap();
        let rep = structure_report(&g, g.vertices(), 1).unwrap();
        assert!(rep.deleted().is_empty());
        assert!(validate_lov_matrix_obstruction(&rep));
    }
}
