//! Builders for the named extremal graphs and the order bounds they meet.
//!
//! Vertex numbering is fixed: ground-set elements first, then subsets in
//! binary-counter order, then any duplicated vertices in the order of their
//! originals, then the two special vertices `y`, `z` (or `u`, `v`).

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};
use crate::independence::independence_number;
use crate::vertex_set::VertexSet;

/// Order bounds for reduced graphs of rank `r`. Fields are `None` outside
/// their domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsTable {
    pub r: u32,
    /// Every reduced graph of rank r has at most 2^r - 1 vertices.
    pub m_upper: u128,
    /// Order of the Kotlov-Lovász graphs.
    pub mu: u128,
    /// Reduced trees (even r).
    pub t: Option<u128>,
    /// Reduced bipartite graphs (even r).
    pub b: Option<u128>,
    /// Reduced non-bipartite triangle-free graphs (r >= 4).
    pub c: Option<u128>,
}

pub fn bounds(r: u32) -> Result<BoundsTable> {
    if !(2..=120).contains(&r) {
        return Err(Error::OutOfRange {
            what: "r",
            value: r as i64,
            allowed: "2..=120",
        });
    }
    let half = r / 2;
    let even = r % 2 == 0;
    let mu = if even {
        (1u128 << (half + 1)) - 2
    } else {
        5 * (1u128 << ((r - 3) / 2)) - 2
    };
    Ok(BoundsTable {
        r,
        m_upper: (1u128 << r) - 1,
        mu,
        t: even.then(|| 3 * half as u128 - 1),
        b: even.then(|| (1u128 << half) + half as u128 - 1),
        c: (r >= 4).then(|| 3 * (1u128 << (half - 2)) + half as u128),
    })
}

/// Maximum order of a reduced non-bipartite triangle-free graph of rank `r >= 4`.
pub fn triangle_free_max_order(r: usize) -> usize {
    assert!((4..=120).contains(&r), "defined for r >= 4");
    3 * (1usize << (r / 2 - 2)) + r / 2
}

/// Maximum order of a reduced bipartite graph of even rank `r`.
pub fn bipartite_max_order(r: usize) -> usize {
    assert!(r >= 2 && r % 2 == 0, "defined for even r >= 2");
    (1usize << (r / 2)) + r / 2 - 1
}

/// `3 * 2^(floor(r/2) - 2) - 1`, the independence number of the extremal
/// triangle-free graph of rank `r >= 6`.
pub fn extremal_independence_number(r: usize) -> usize {
    assert!(r >= 4);
    3 * (1usize << (r / 2 - 2)) - 1
}

/// Incidence graph of `family` over the ground set `{0, .., n-1}`: vertex
/// `i < n` is element `i`, vertex `n + j` is `family[j]`.
pub fn incidence_graph(n: usize, family: &[VertexSet]) -> Result<Graph> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            allowed: ">= 1",
        });
    }
    let order = n + family.len();
    if order > MAX_ORDER {
        return Err(Error::Capacity { requested: order });
    }
    let ground = VertexSet::full(n);
    for (index, &set) in family.iter().enumerate() {
        if let Some(element) = (set - ground).first() {
            return Err(Error::FamilyMemberOutOfRange { index, element, n });
        }
        if let Some(first) = family[..index].iter().position(|&s| s == set) {
            return Err(Error::DuplicateFamilyMember {
                first,
                second: index,
            });
        }
    }
    let mut g = Graph::new(order)?;
    for (j, &set) in family.iter().enumerate() {
        for x in set {
            g.add_edge(x, n + j);
        }
    }
    Ok(g)
}

fn nonempty_subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (1u64..(1 << n)).map(VertexSet::from_bits)
}

/// Incidence graph of all non-empty subsets of an `n`-set.
pub fn construct_b(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            allowed: ">= 1",
        });
    }
    if n >= 6 {
        return Err(Error::Capacity {
            requested: (1 << n) + n - 1,
        });
    }
    let family: Vec<_> = nonempty_subsets(n).collect();
    incidence_graph(n, &family)
}

/// Incidence graph of the odd-size subsets of an `n`-set.
pub fn construct_o(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            allowed: ">= 1",
        });
    }
    if n >= 7 {
        return Err(Error::Capacity {
            requested: n + (1 << (n - 1)),
        });
    }
    let family: Vec<_> = nonempty_subsets(n).filter(|s| s.len() % 2 == 1).collect();
    incidence_graph(n, &family)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    /// The distinguished ground element.
    X,
    XPrime,
    Y,
    Z,
    /// Subsets containing `x`.
    N,
    NPrime,
    /// Subsets avoiding `x`.
    M,
    MPrime,
    BSide,
    SubsetSide,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::X => "x",
            Role::XPrime => "x'",
            Role::Y => "y",
            Role::Z => "z",
            Role::N => "N",
            Role::NPrime => "N'",
            Role::M => "M",
            Role::MPrime => "M'",
            Role::BSide => "B",
            Role::SubsetSide => "P(B)",
        })
    }
}

#[derive(Debug, Clone)]
pub struct LabeledConstruction {
    pub graph: Graph,
    pub roles: BTreeMap<Role, VertexSet>,
}

impl LabeledConstruction {
    pub fn role(&self, role: Role) -> VertexSet {
        self.roles.get(&role).copied().unwrap_or_default()
    }

    /// The single vertex of a singleton role.
    pub fn vertex(&self, role: Role) -> usize {
        let s = self.role(role);
        assert_eq!(s.len(), 1, "role {role} is not a single vertex");
        s.first().expect("non-empty")
    }
}

fn check_c_range(r: usize) -> Result<()> {
    if r < 4 {
        return Err(Error::OutOfRange {
            what: "r",
            value: r as i64,
            allowed: ">= 4",
        });
    }
    if r > 13 {
        return Err(Error::Capacity {
            requested: triangle_free_max_order(r.min(120)),
        });
    }
    Ok(())
}

/// The extremal reduced triangle-free graph of rank `r`, built directly from
/// the incidence graph of all non-empty subsets of a `(floor(r/2) - 1)`-set.
///
/// With `x` the first ground element, `N` the subsets containing it and `M`
/// the rest: for even `r`, twin `x` and every vertex of `M`, then add `y`
/// joined to `x`, `z` and `M`. For odd `r`, twin every vertex of `N`, then
/// add `y` joined to `z` and `N`, and join `z` to the twins of `N`.
pub fn construct_c(r: usize) -> Result<LabeledConstruction> {
    check_c_range(r)?;
    let ground = r / 2 - 1;
    let family: Vec<_> = nonempty_subsets(ground).collect();
    let mut g = incidence_graph(ground, &family)?;
    let x = 0;
    let subset_vertex = |s: VertexSet| ground + s.bits() as usize - 1;
    let n_set: VertexSet = family.iter().filter(|s| s.contains(x)).map(|&s| subset_vertex(s)).collect();
    let m_set: VertexSet = family.iter().filter(|s| !s.contains(x)).map(|&s| subset_vertex(s)).collect();

    let mut roles = BTreeMap::new();
    roles.insert(Role::BSide, VertexSet::full(ground));
    roles.insert(Role::SubsetSide, n_set | m_set);
    roles.insert(Role::X, VertexSet::singleton(x));
    roles.insert(Role::N, n_set);
    roles.insert(Role::M, m_set);

    if r % 2 == 0 {
        let xp = g.duplicate_vertex(x)?;
        let mut mp = VertexSet::EMPTY;
        for v in m_set {
            mp.insert(g.duplicate_vertex(v)?);
        }
        let y = g.add_vertex(m_set | VertexSet::singleton(x))?;
        let z = g.add_vertex(VertexSet::singleton(y))?;
        roles.insert(Role::XPrime, VertexSet::singleton(xp));
        roles.insert(Role::MPrime, mp);
        roles.insert(Role::Y, VertexSet::singleton(y));
        roles.insert(Role::Z, VertexSet::singleton(z));
    } else {
        let mut np = VertexSet::EMPTY;
        for v in n_set {
            np.insert(g.duplicate_vertex(v)?);
        }
        let y = g.add_vertex(n_set)?;
        let z = g.add_vertex(np | VertexSet::singleton(y))?;
        roles.insert(Role::NPrime, np);
        roles.insert(Role::Y, VertexSet::singleton(y));
        roles.insert(Role::Z, VertexSet::singleton(z));
    }
    Ok(LabeledConstruction { graph: g, roles })
}

/// The same family built by the two-step recursion: start from the 5-path
/// (rank 4) or 5-cycle (rank 5); to go from rank `r - 2` to `r`, twin every
/// vertex of a set `A`, then add `u` joined to `v` and to `A`.
///
/// `A` is the lexicographically first pair at distance 3 in the path for
/// rank 6, the first pair at distance 2 in the cycle for rank 7, and the
/// maximum independent set from rank 8 on.
pub fn construct_c_recursive(r: usize) -> Result<Graph> {
    check_c_range(r)?;
    match r {
        4 => Graph::path(5),
        5 => Graph::cycle(5),
        _ => {
            let mut g = construct_c_recursive(r - 2)?;
            let a = match r {
                6 => first_pair_at_distance(&g, 3)?,
                7 => first_pair_at_distance(&g, 2)?,
                _ => independence_number(&g).1,
            };
            for v in a {
                g.duplicate_vertex(v)?;
            }
            let u = g.add_vertex(a)?;
            g.add_vertex(VertexSet::singleton(u))?;
            Ok(g)
        }
    }
}

fn first_pair_at_distance(g: &Graph, d: usize) -> Result<VertexSet> {
    for u in 0..g.order() {
        let dist = g.distances_from(u);
        if let Some(v) = (u + 1..g.order()).find(|&v| dist[v] == d) {
            return Ok(VertexSet::singleton(u) | VertexSet::singleton(v));
        }
    }
    Err(Error::Internal(format!("no pair at distance {d}")))
}

/// The extremal graph of odd rank `r >= 7` with the edge `yz` removed.
pub fn construct_remark_h(r: usize) -> Result<Graph> {
    if r % 2 == 0 || r < 7 {
        return Err(Error::OutOfRange {
            what: "r",
            value: r as i64,
            allowed: "odd and >= 7",
        });
    }
    let c = construct_c(r)?;
    let (y, z) = (c.vertex(Role::Y), c.vertex(Role::Z));
    let mut g = c.graph;
    g.remove_edge(y, z);
    Ok(g)
}
