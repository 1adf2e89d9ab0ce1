//! Exact rank computations, extremal constructions and exhaustive
//! enumeration for reduced graphs of small rank.

pub mod canon;
pub mod coding;
pub mod constructions;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod independence;
pub mod linalg;
pub mod structure;
pub mod vertex_set;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use coding::BinaryCode;
pub use constructions::{bounds, BoundsTable, LabeledConstruction, Role};
pub use enumeration::{
    enumerate_extremal, enumerate_range, merge_reports, verify_theorem, EnumerationOptions, EnumerationReport,
    GraphClass, Shard, Theorem, TheoremVerdict,
};
pub use error::{Error, Result};
pub use graph::Graph;
pub use graph6::{from_graph6, to_graph6};
pub use independence::{independence_number, maximum_independent_sets};
pub use linalg::{graph_rank, IntMatrix};
pub use structure::StructureReport;
pub use vertex_set::VertexSet;
