use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ambient Gr({m},{n}): need 1 <= m <= n-1")]
    InvalidAmbient { m: usize, n: usize },

    #[error("part a_{index} = {part} exceeds the box width n-m = {bound}")]
    BoxViolation { index: usize, part: usize, bound: usize },

    #[error("parts are not weakly decreasing at position {index}")]
    NotWeaklyDecreasing { index: usize },

    #[error("expected {expected} parts, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("partition {0} is degenerate (empty or full box)")]
    DegeneratePartition(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("partition has {rows} rows, more than the {dim} available")]
    TooManyRows { rows: usize, dim: usize },

    #[error("top wedge of a zero-dimensional space")]
    DegenerateK,

    #[error("element is not block diagonal in gl(E) + gl(Q)")]
    NotBlockDiagonal,

    #[error("resource limit exceeded: {what} = {size} > cap {cap}")]
    ResourceExceeded { what: String, size: u128, cap: u128 },

    #[error("incompatible pair: {0}")]
    IncompatiblePair(String),

    #[error("decomposition audit failed: {missing} dimensions unaccounted ({detail})")]
    AuditFailure { missing: i64, detail: String },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
