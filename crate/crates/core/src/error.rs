use thiserror::Error;

/// Errors raised by the algebra kernel.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("relation matrix at codegree {codegree} has {rows}x{cols} entries, above the configured bound {limit}")]
    ResourceLimit {
        codegree: usize,
        rows: usize,
        cols: usize,
        limit: usize,
    },

    #[error("Lazard table has depth {available}, but codegree {required} is needed")]
    InsufficientTable { required: usize, available: usize },

    #[error("elements belong to different Lazard tables")]
    MismatchedTable,

    #[error("relation lattice at codegree {codegree} is not saturated; quotient has torsion")]
    NotSaturated { codegree: usize },

    #[error("truncation mismatch: {0}")]
    TruncationMismatch(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("substituted series for {generator} has a nonzero constant term")]
    NonzeroConstantTerm { generator: String },

    #[error("substituted series for {generator} has degree {found:?}, expected {expected}")]
    DegreeMismatch {
        generator: String,
        expected: i64,
        found: Option<i64>,
    },

    #[error("series is not invariant under permutation of its variables")]
    NotSymmetric,

    #[error("linear coefficient of {generator} is not a unit integer")]
    NonUnitLinearPart { generator: String },

    #[error("relation is not homogeneous")]
    NotHomogeneous,

    #[error("target law does not kill the Lazard relation #{index} in codegree {codegree}")]
    RelationNotKilled { codegree: usize, index: usize },

    #[error("invalid formal group law table: {0}")]
    InvalidLaw(String),

    #[error("invalid cache: {0}")]
    InvalidCache(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// A stable machine-readable name for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ResourceLimit { .. } => "resource_limit",
            Error::InsufficientTable { .. } => "insufficient_table",
            Error::MismatchedTable => "mismatched_table",
            Error::NotSaturated { .. } => "not_saturated",
            Error::TruncationMismatch(_) => "truncation_mismatch",
            Error::ShapeMismatch(_) => "shape_mismatch",
            Error::NonzeroConstantTerm { .. } => "nonzero_constant_term",
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::NotSymmetric => "not_symmetric",
            Error::NonUnitLinearPart { .. } => "non_unit_linear_part",
            Error::NotHomogeneous => "not_homogeneous",
            Error::RelationNotKilled { .. } => "relation_not_killed",
            Error::InvalidLaw(_) => "invalid_law",
            Error::InvalidCache(_) => "invalid_cache",
            Error::InvalidInput(_) => "invalid_input",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
