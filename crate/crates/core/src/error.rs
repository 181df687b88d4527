use thiserror::Error;

use crate::algebra::Signature;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("signature must have l1 + l2 + l3 + l4 > 0")]
    EmptySignature,

    #[error("generator {index} has a nonzero entry among its first {l1} coordinates")]
    ZeroPrefixViolation { index: usize, l1: usize },

    #[error("generators are linearly dependent (rank {rank} < {count})")]
    DependentGenerators { rank: usize, count: usize },

    #[error("lattice is degenerate: projection rank {rank} < {required}")]
    DegenerateLattice { rank: usize, required: usize },

    #[error("vector {0} is not in the lattice")]
    NotInGamma(String),

    #[error("invalid exponent vector {0}")]
    InvalidJIndex(String),

    #[error("invalid derivation multi-index {0}")]
    InvalidDerivIndex(String),

    #[error("{op}: index {index} outside {lo}..={hi}")]
    IndexOutOfRange {
        op: &'static str,
        index: usize,
        lo: usize,
        hi: usize,
    },

    #[error("operands do not belong to the same algebra")]
    SignatureMismatch,

    #[error("{what} requires signature {expected}, found {found}")]
    WrongSignature {
        what: &'static str,
        expected: Signature,
        found: Signature,
    },

    #[error("invalid tau: {0}")]
    InvalidTau(String),

    #[error("input form is not a 2-cocycle: {0}")]
    NonCocycleInput(String),

    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("syntax error at {pos}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        pos: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error("result failed re-verification: {0}")]
    SelfCheck(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
