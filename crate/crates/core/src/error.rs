use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid radii: need 0 <= r_inner < r_outer, got r_inner={inner}, r_outer={outer}")]
    InvalidRadii { inner: f64, outer: f64 },

    #[error("invalid side length {0}: must be > 0")]
    InvalidSide(f64),

    #[error("k={k} is invalid for {n} points")]
    InvalidK { k: usize, n: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    #[error("non-finite coordinate at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("row {row} has {got} coordinates, expected {expected}")]
    RaggedRow { row: usize, expected: usize, got: usize },

    #[error("missing column `{0}`")]
    MissingColumn(String),

    #[error("row {row}: value `{value}` is not a declared level of column `{column}`")]
    UnknownLevel { row: usize, column: String, value: String },

    #[error("row {row}: {message}")]
    Parse { row: usize, message: String },

    #[error("invalid encoding spec: {0}")]
    EncodingSpec(String),

    #[error("cluster {0} has no members")]
    EmptyCluster(usize),

    #[error("assignment has {got} labels for {expected} points")]
    AssignmentLength { expected: usize, got: usize },

    #[error("point {0} is labeled noise; inertia needs a full partition")]
    NoiseInPartition(usize),

    #[error("simplex budget exceeded: {count} simplices reached (cap {cap})")]
    BudgetExceeded { count: usize, cap: usize },

    #[error("filtration is not face-closed: a facet of simplex {0} is missing or later in the order")]
    MissingFace(usize),

    #[error("lens axis {axis} out of range for {dim}-dimensional points")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("lens table has {got} rows, cloud has {expected} points")]
    RowCountMismatch { expected: usize, got: usize },

    #[error("cover element {index}: {source}")]
    CoverElement {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParam {
        name,
        reason: reason.into(),
    }
}
