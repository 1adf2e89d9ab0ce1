//! Exhaustive checks of the extremal statements at fixed rank.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::canon::are_isomorphic;
use crate::constructions::{bipartite_max_order, construct_b, construct_c, construct_remark_h, triangle_free_max_order};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::to_graph6;
use crate::linalg::graph_rank;
use crate::vertex_set::VertexSet;

use super::{enumerate_extremal, enumerate_range, EnumerationOptions, GraphClass, DEFAULT_MAX_RANK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Reduced non-bipartite triangle-free graphs of rank `r` have order at
    /// most `c(r)`, with equality only for the extremal construction.
    Main,
    /// Reduced bipartite graphs of even rank `r` have order at most `b(r)`,
    /// with equality only for the subset incidence graph.
    Bi,
    /// A reduced bipartite graph of even rank `r` and order above `c(r)` has
    /// a part of size exactly `r/2`.
    Bigen,
    /// Deleting the edge `yz` from the odd extremal graph leaves a reduced
    /// bipartite graph of rank `r-1`, order `c(r-1)` and smaller part
    /// `(r+1)/2`.
    Remark,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Main => "main",
            Theorem::Bi => "bi",
            Theorem::Bigen => "bigen",
            Theorem::Remark => "remark",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "main" => Ok(Theorem::Main),
            "bi" => Ok(Theorem::Bi),
            "bigen" => Ok(Theorem::Bigen),
            "remark" => Ok(Theorem::Remark),
            _ => Err(Error::InvalidArgument(format!(
                "unknown statement {s:?}; expected main, bi, bigen or remark"
            ))),
        }
    }
}

impl Serialize for Theorem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub theorem: Theorem,
    pub r: usize,
    pub passed: bool,
    pub evidence: Vec<String>,
    /// graph6 of a graph contradicting the statement.
    pub counterexample: Option<String>,
}

impl TheoremVerdict {
    fn new(theorem: Theorem, r: usize) -> Self {
        TheoremVerdict {
            theorem,
            r,
            passed: true,
            evidence: Vec::new(),
            counterexample: None,
        }
    }

    fn note(&mut self, line: impl Into<String>) {
        self.evidence.push(line.into());
    }

    fn fail(&mut self, line: impl Into<String>, witness: Option<&Graph>) {
        self.passed = false;
        self.note(line);
        if self.counterexample.is_none() {
            self.counterexample = witness.map(to_graph6);
        }
    }
}

fn out_of_range(r: usize, allowed: &'static str) -> Error {
    Error::OutOfRange {
        what: "r",
        value: r as i64,
        allowed,
    }
}

fn check_guard(r: usize, opts: &EnumerationOptions) -> Result<()> {
    let max = opts.max_rank.unwrap_or(DEFAULT_MAX_RANK);
    if r > max {
        return Err(Error::Guard { r, max });
    }
    Ok(())
}

pub fn verify_theorem(which: Theorem, r: usize, opts: &EnumerationOptions) -> Result<TheoremVerdict> {
    match which {
        Theorem::Main => {
            if r < 5 {
                return Err(out_of_range(r, ">= 5"));
            }
            check_guard(r, opts)?;
            verify_extremal(which, r, GraphClass::TriangleFreeNonBipartite, triangle_free_max_order(r), &construct_c(r)?.graph, opts)
        }
        Theorem::Bi => {
            if r < 4 || r % 2 == 1 {
                return Err(out_of_range(r, "even and >= 4"));
            }
            check_guard(r, opts)?;
            verify_extremal(which, r, GraphClass::Bipartite, bipartite_max_order(r), &construct_b(r / 2)?, opts)
        }
        Theorem::Bigen => {
            if r < 6 || r % 2 == 1 {
                return Err(out_of_range(r, "even and >= 6"));
            }
            check_guard(r, opts)?;
            verify_bigen(r, opts)
        }
        Theorem::Remark => {
            if r < 7 || r % 2 == 0 || r > 13 {
                return Err(out_of_range(r, "odd and in 7..=13"));
            }
            verify_remark(r)
        }
    }
}

fn verify_extremal(
    which: Theorem,
    r: usize,
    class: GraphClass,
    expected_order: usize,
    expected_graph: &Graph,
    opts: &EnumerationOptions,
) -> Result<TheoremVerdict> {
    let mut verdict = TheoremVerdict::new(which, r);
    let report = enumerate_extremal(r, class, opts)?;
    verdict.note(format!(
        "{} cores, {} search nodes, maximum order {} (bound {expected_order})",
        report.cores_processed, report.nodes_explored, report.max_order
    ));
    let graphs = report.extremal_graphs()?;
    if report.max_order != expected_order {
        let line = format!("maximum order {} differs from {expected_order}", report.max_order);
        verdict.fail(line, graphs.first());
    }
    match graphs.as_slice() {
        [g] if are_isomorphic(g, expected_graph) => {
            verdict.note(format!("unique extremal graph {}", to_graph6(g)));
        }
        [g] => verdict.fail("the extremal graph is not the expected construction", Some(g)),
        [] => verdict.fail("no extremal graph found", None),
        many => {
            let stray = many.iter().find(|g| !are_isomorphic(g, expected_graph));
            verdict.fail(format!("{} non-isomorphic extremal graphs", many.len()), stray);
        }
    }
    Ok(verdict)
}

/// Vertex sets of the connected components.
fn components(g: &Graph) -> Vec<VertexSet> {
    let mut seen = VertexSet::EMPTY;
    let mut out = Vec::new();
    for v in 0..g.order() {
        if seen.contains(v) {
            continue;
        }
        let comp: VertexSet = g
            .distances_from(v)
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != usize::MAX)
            .map(|(u, _)| u)
            .collect();
        seen = seen | comp;
        out.push(comp);
    }
    out
}

/// Smallest and largest value of `min(|X|, |Y|)` over all bipartitions
/// `{X, Y}`, or `None` if `g` is not bipartite.
pub fn min_part_range(g: &Graph) -> Option<(usize, usize)> {
    let (first, _) = g.bipartition()?;
    let sides: Vec<(usize, usize)> = components(g)
        .into_iter()
        .map(|c| {
            let a = (c & first).len();
            (a, c.len() - a)
        })
        .collect();
    // Reachable sizes of X, one bit per size.
    let mut reach: u128 = 1;
    for (a, b) in &sides {
        reach = (reach << a) | (reach << b);
    }
    let n = g.order();
    let mins = (0..=n).filter(|&x| reach >> x & 1 == 1).map(|x| x.min(n - x));
    let (mut lo, mut hi) = (usize::MAX, 0);
    for m in mins {
        lo = lo.min(m);
        hi = hi.max(m);
    }
    Some((lo, hi))
}

fn verify_bigen(r: usize, opts: &EnumerationOptions) -> Result<TheoremVerdict> {
    let mut verdict = TheoremVerdict::new(Theorem::Bigen, r);
    let above = triangle_free_max_order(r) + 1;
    let top = bipartite_max_order(r);
    let found = enumerate_range(r, GraphClass::Bipartite, above, top, opts)?;
    verdict.note(format!(
        "{} reduced bipartite graphs of rank {r} with order in {above}..={top}",
        found.graphs.len()
    ));
    for form in &found.graphs {
        let g = form.graph();
        let (lo, hi) = min_part_range(&g).expect("class members are bipartite");
        if lo == r / 2 && hi == r / 2 {
            verdict.note(format!("{} order {} smaller part {}", form.graph6(), g.order(), lo));
        } else {
            verdict.fail(
                format!("{} order {} has smaller part in {lo}..={hi}, expected {}", form.graph6(), g.order(), r / 2),
                Some(&g),
            );
        }
    }
    Ok(verdict)
}

fn verify_remark(r: usize) -> Result<TheoremVerdict> {
    let mut verdict = TheoremVerdict::new(Theorem::Remark, r);
    let h = construct_remark_h(r)?;
    let rank = graph_rank(&h);
    let order = h.order();
    let want_order = triangle_free_max_order(r - 1);
    verdict.note(format!("order {order}, rank {rank}"));
    if !h.is_reduced() {
        verdict.fail("not reduced", Some(&h));
    }
    if rank != r - 1 {
        verdict.fail(format!("rank {rank}, expected {}", r - 1), Some(&h));
    }
    if order != want_order {
        verdict.fail(format!("order {order}, expected {want_order}"), Some(&h));
    }
    match min_part_range(&h) {
        None => verdict.fail("not bipartite", Some(&h)),
        Some((lo, hi)) => {
            verdict.note(format!("parts {{{lo}, {}}}", order - lo));
            if (lo, hi) != (r.div_ceil(2), r.div_ceil(2)) {
                verdict.fail(format!("smaller part in {lo}..={hi}, expected {}", r.div_ceil(2)), Some(&h));
            }
        }
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_parts_of_disconnected_graphs() {
        let g = Graph::path(3).unwrap().disjoint_union(&Graph::path(2).unwrap()).unwrap();
        assert_eq!(min_part_range(&g), Some((2, 2)));
        let g = Graph::star(3).unwrap().disjoint_union(&Graph::star(3).unwrap()).unwrap();
        assert_eq!(min_part_range(&g), Some((2, 4)));
        assert_eq!(min_part_range(&Graph::cycle(5).unwrap()), None);
    }

    #[test]
    fn statements_at_small_rank() {
        let opts = EnumerationOptions::default();
        for (which, r) in [(Theorem::Main, 5), (Theorem::Main, 6), (Theorem::Bi, 4), (Theorem::Bi, 6), (Theorem::Bigen, 6)] {
            let v = verify_theorem(which, r, &opts).unwrap();
            assert!(v.passed, "{which} at {r}: {:?}", v.evidence);
        }
    }

    #[test]
    fn bigen_at_six_sees_only_the_incidence_graph() {
        let v = verify_theorem(Theorem::Bigen, 6, &Default::default()).unwrap();
        assert_eq!(v.evidence[0], "1 reduced bipartite graphs of rank 6 with order in 10..=10");
        assert!(v.evidence[1].ends_with("order 10 smaller part 3"));
    }

    #[test]
    fn remark_graphs() {
        for r in [7, 9, 11] {
            let v = verify_theorem(Theorem::Remark, r, &Default::default()).unwrap();
            assert!(v.passed, "{r}: {:?}", v.evidence);
        }
        let v = verify_theorem(Theorem::Remark, 7, &Default::default()).unwrap();
        assert!(v.evidence.contains(&"parts {4, 5}".to_string()));
    }

    #[test]
    fn ranges_are_checked() {
        let opts = EnumerationOptions::default();
        assert!(verify_theorem(Theorem::Main, 4, &opts).is_err());
        assert!(verify_theorem(Theorem::Bi, 5, &opts).is_err());
        assert!(verify_theorem(Theorem::Bigen, 4, &opts).is_err());
        assert!(verify_theorem(Theorem::Remark, 8, &opts).is_err());
        assert_eq!(
            verify_theorem(Theorem::Main, 10, &opts).unwrap_err(),
            Error::Guard { r: 10, max: 9 }
        );
    }
}
