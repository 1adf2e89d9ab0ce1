//! Exhaustive enumeration of reduced graphs of a given rank.
//!
//! Every reduced graph of rank `r` contains an induced subgraph on `r`
//! vertices with nonsingular adjacency matrix, and is determined by that
//! core and the neighbourhoods of the remaining vertices in it. The search
//! runs over cores up to isomorphism and, for each core, over sets of
//! admissible neighbourhood vectors.

pub mod closure;
pub mod cores;
pub mod verify;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::canon::CanonicalForm;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub use closure::{
    candidates, compatible, complete, extend_core, max_extension, ExtensionCandidate,
    ExtensionOutcome, SearchMode,
};
pub use cores::{gen_cores, graphs_up_to_isomorphism, Core};
pub use verify::{verify_theorem, Theorem, TheoremVerdict};

/// Largest rank enumerated unless the caller raises the guard.
pub const DEFAULT_MAX_RANK: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphClass {
    All,
    TriangleFree,
    Bipartite,
    TriangleFreeNonBipartite,
}

impl GraphClass {
    pub const ALL: [GraphClass; 4] = [
        GraphClass::All,
        GraphClass::TriangleFree,
        GraphClass::Bipartite,
        GraphClass::TriangleFreeNonBipartite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphClass::All => "all",
            GraphClass::TriangleFree => "triangle-free",
            GraphClass::Bipartite => "bipartite",
            GraphClass::TriangleFreeNonBipartite => "triangle-free-non-bipartite",
        }
    }

    pub fn contains(self, g: &Graph) -> bool {
        match self {
            GraphClass::All => true,
            GraphClass::TriangleFree => g.is_triangle_free(),
            GraphClass::Bipartite => g.is_bipartite(),
            GraphClass::TriangleFreeNonBipartite => g.is_triangle_free() && !g.is_bipartite(),
        }
    }

    /// Whether induced subgraphs of class members are triangle-free.
    pub(crate) fn core_needs_triangle_free(self) -> bool {
        self != GraphClass::All
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(GraphClass::All),
            "triangle-free" | "tf" => Ok(GraphClass::TriangleFree),
            "bipartite" | "bip" => Ok(GraphClass::Bipartite),
            "triangle-free-non-bipartite" | "tfnb" => Ok(GraphClass::TriangleFreeNonBipartite),
            _ => Err(Error::InvalidArgument(format!(
                "unknown graph class {s:?}; expected all, triangle-free, bipartite or triangle-free-non-bipartite"
            ))),
        }
    }
}

impl Serialize for GraphClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for GraphClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shard `index` (1-based) of `count`: the cores whose position in the
/// sorted core list is congruent to `index - 1` modulo `count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shard {
    pub index: usize,
    pub count: usize,
}

impl Shard {
    pub fn new(index: usize, count: usize) -> Result<Self> {
        if count == 0 || index == 0 || index > count {
            return Err(Error::InvalidArgument(format!(
                "shard {index}/{count} is not of the form K/N with 1 <= K <= N"
            )));
        }
        Ok(Shard { index, count })
    }

    fn owns(self, position: usize) -> bool {
        position % self.count == self.index - 1
    }
}

impl fmt::Display for Shard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.count)
    }
}

impl FromStr for Shard {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("shard {s:?} is not of the form K/N"));
        let (k, n) = s.split_once('/').ok_or_else(bad)?;
        Shard::new(k.trim().parse().map_err(|_| bad())?, n.trim().parse().map_err(|_| bad())?)
    }
}

impl Serialize for Shard {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Shard {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progress {
    pub done: usize,
    pub total: usize,
    pub best: usize,
}

pub type ProgressFn = Arc<dyn Fn(Progress) + Send + Sync>;

#[derive(Clone, Default)]
pub struct EnumerationOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    /// Highest rank accepted; `None` means [`DEFAULT_MAX_RANK`].
    pub max_rank: Option<usize>,
    pub shard: Option<Shard>,
    pub progress: Option<ProgressFn>,
}

impl fmt::Debug for EnumerationOptions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EnumerationOptions")
            .field("jobs", &self.jobs)
            .field("max_rank", &self.max_rank)
            .field("shard", &self.shard)
            .field("progress", &self.progress.is_some())
            .finish()
    }
}

impl EnumerationOptions {
    fn check_rank(&self, r: usize) -> Result<()> {
        let max = self.max_rank.unwrap_or(DEFAULT_MAX_RANK);
        if r < 4 {
            return Err(Error::OutOfRange {
                what: "r",
                value: r as i64,
                allowed: ">= 4",
            });
        }
        if r > max {
            return Err(Error::Guard { r, max });
        }
        Ok(())
    }

    fn run<T: Send>(&self, work: impl FnOnce() -> T + Send) -> Result<T> {
        match self.jobs {
            None => Ok(work()),
            Some(jobs) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs.max(1))
                    .build()
                    .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
                Ok(pool.install(work))
            }
        }
    }
}

/// Outcome of a maximum-order search. Fields serialize in declaration
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub rank: usize,
    pub class: GraphClass,
    pub max_order: usize,
    /// Canonical graph6 of every graph of order `max_order`, sorted.
    pub extremal: Vec<String>,
    pub cores_processed: usize,
    pub candidates_total: usize,
    pub nodes_explored: u64,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shard: Option<Shard>,
}

impl EnumerationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Merge(format!("unreadable report: {e}")))
    }

    /// The report with timing removed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        EnumerationReport {
            elapsed_ms: 0,
            ..self.clone()
        }
    }

    pub fn extremal_graphs(&self) -> Result<Vec<Graph>> {
        self.extremal.iter().map(|s| crate::graph6::from_graph6(s)).collect()
    }
}

struct CoreResult {
    outcome: ExtensionOutcome,
}

fn search_cores(
    r: usize,
    class: GraphClass,
    mode: SearchMode,
    opts: &EnumerationOptions,
) -> Result<(Vec<Core>, Vec<CoreResult>)> {
    opts.check_rank(r)?;
    let cores: Vec<Core> = gen_cores(r, class)?
        .into_iter()
        .enumerate()
        .filter(|(i, _)| opts.shard.map_or(true, |s| s.owns(*i)))
        .map(|(_, c)| c)
        .collect();
    let total = cores.len();
    let done = AtomicUsize::new(0);
    let best = AtomicUsize::new(0);
    let results = opts.run(|| {
        cores
            .par_iter()
            .map(|core| {
                let outcome = extend_core(core, class, mode)?;
                let best_now = best.fetch_max(outcome.max_order, Ordering::SeqCst).max(outcome.max_order);
                let finished = done.fetch_add(1, Ordering::SeqCst) + 1;
                if let Some(progress) = &opts.progress {
                    progress(Progress {
                        done: finished,
                        total,
                        best: best_now,
                    });
                }
                Ok(CoreResult { outcome })
            })
            .collect::<Result<Vec<_>>>()
    })??;
    Ok((cores, results))
}

/// The largest order of a reduced graph of rank `r` in `class`, with every
/// graph attaining it.
pub fn enumerate_extremal(r: usize, class: GraphClass, opts: &EnumerationOptions) -> Result<EnumerationReport> {
    let start = Instant::now();
    let (cores, results) = search_cores(r, class, SearchMode::Max, opts)?;
    let max_order = results.iter().map(|c| c.outcome.max_order).max().unwrap_or(0);
    let mut extremal: BTreeSet<CanonicalForm> = BTreeSet::new();
    for res in &results {
        if res.outcome.max_order == max_order && max_order > 0 {
            extremal.extend(res.outcome.graphs.iter().cloned());
        }
    }
    for form in &extremal {
        closure::check_emitted(&form.graph(), r, class)?;
    }
    Ok(EnumerationReport {
        rank: r,
        class,
        max_order,
        extremal: sorted_graph6(&extremal),
        cores_processed: cores.len(),
        candidates_total: results.iter().map(|c| c.outcome.candidates).sum(),
        nodes_explored: results.iter().map(|c| c.outcome.nodes).sum(),
        elapsed_ms: start.elapsed().as_millis() as u64,
        shard: opts.shard,
    })
}

fn sorted_graph6(forms: &BTreeSet<CanonicalForm>) -> Vec<String> {
    let mut out: Vec<String> = forms.iter().map(|f| f.graph6()).collect();
    out.sort();
    out.dedup();
    out
}

/// Every reduced graph of rank `r` in `class` whose order lies in
/// `min_order..=max_order`, as sorted canonical forms.
#[derive(Debug, Clone)]
pub struct RangeEnumeration {
    pub graphs: Vec<CanonicalForm>,
    pub cores_processed: usize,
    pub nodes_explored: u64,
}

pub fn enumerate_range(
    r: usize,
    class: GraphClass,
    min_order: usize,
    max_order: usize,
    opts: &EnumerationOptions,
) -> Result<RangeEnumeration> {
    let mode = SearchMode::Collect { min_order, max_order };
    let (cores, results) = search_cores(r, class, mode, opts)?;
    let mut graphs = BTreeSet::new();
    for res in &results {
        graphs.extend(res.outcome.graphs.iter().cloned());
    }
    Ok(RangeEnumeration {
        graphs: graphs.into_iter().collect(),
        cores_processed: cores.len(),
        nodes_explored: results.iter().map(|c| c.outcome.nodes).sum(),
    })
}

/// Combines shard reports of one run. All shards `1..=N` must be present
/// exactly once.
pub fn merge_reports(reports: &[EnumerationReport]) -> Result<EnumerationReport> {
    let first = reports
        .first()
        .ok_or_else(|| Error::Merge("no reports given".into()))?;
    let count = match first.shard {
        Some(s) => s.count,
        None if reports.len() == 1 => 1,
        None => return Err(Error::Merge("unsharded report among several".into())),
    };
    let mut seen = vec![false; count];
    for rep in reports {
        if (rep.rank, rep.class) != (first.rank, first.class) {
            return Err(Error::Merge(format!(
                "rank/class mismatch: {}/{} vs {}/{}",
                rep.rank, rep.class, first.rank, first.class
            )));
        }
        let index = match rep.shard {
            Some(s) if s.count == count => s.index,
            None if count == 1 => 1,
            other => {
                return Err(Error::Merge(format!(
                    "shard {} does not belong to a {count}-way split",
                    other.map_or("none".to_string(), |s| s.to_string())
                )))
            }
        };
        if std::mem::replace(&mut seen[index - 1], true) {
            return Err(Error::Merge(format!("shard {index}/{count} given twice")));
        }
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(Error::Merge(format!("shard {}/{count} is missing", missing + 1)));
    }
    let max_order = reports.iter().map(|r| r.max_order).max().unwrap_or(0);
    let mut extremal: Vec<String> = reports
        .iter()
        .filter(|r| r.max_order == max_order)
        .flat_map(|r| r.extremal.iter().cloned())
        .collect();
    extremal.sort();
    extremal.dedup();
    Ok(EnumerationReport {
        rank: first.rank,
        class: first.class,
        max_order,
        extremal,
        cores_processed: reports.iter().map(|r| r.cores_processed).sum(),
        candidates_total: reports.iter().map(|r| r.candidates_total).sum(),
        nodes_explored: reports.iter().map(|r| r.nodes_explored).sum(),
        elapsed_ms: reports.iter().map(|r| r.elapsed_ms).sum(),
        shard: None,
    })
}
