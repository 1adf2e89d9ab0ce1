use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("a graph of order {requested} exceeds the supported maximum of 64 vertices")]
    Capacity { requested: usize },

    #[error("{what} = {value} is outside the supported range {allowed}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        allowed: &'static str,
    },

    #[error("integer overflow during exact elimination")]
    Overflow,

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("graph is not reduced")]
    NotReduced,

    #[error("vertices {u} and {v} must be distinct and non-adjacent")]
    AdjacentOrEqual { u: usize, v: usize },

    #[error("vertex set is not independent: {u} ~ {v}")]
    NotIndependent { u: usize, v: usize },

    #[error("vertex set has {size} elements, need at least {min}")]
    SetTooSmall { size: usize, min: usize },

    #[error("enumeration cap of {cap} exceeded ({found} found so far)")]
    CapExceeded { cap: usize, found: usize },

    #[error("duplicate family member at positions {first} and {second}")]
    DuplicateFamilyMember { first: usize, second: usize },

    #[error("family member {index} contains element {element} >= {n}")]
    FamilyMemberOutOfRange {
        index: usize,
        element: usize,
        n: usize,
    },

    #[error("malformed graph6 string: {0}")]
    Graph6(String),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("code words {first} and {second} are at distance {distance} < {required}")]
    DistanceViolation {
        first: String,
        second: String,
        distance: usize,
        required: usize,
    },

    #[error("the all-ones vector is not in the row space of the code matrix")]
    OnesNotInRowSpace,

    #[error("rank {r} exceeds the enumeration guard of {max}; raise the guard explicitly to run it")]
    Guard { r: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot merge reports: {0}")]
    Merge(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
