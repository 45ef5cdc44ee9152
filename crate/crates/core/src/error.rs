use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid root order m={0}")]
    InvalidOrder(u32),
    #[error("incompatible root orders {0} and {1}")]
    IncompatibleOrder(u32, u32),
    #[error("operation requires m={expected}, got m={found}")]
    UnsupportedOrder { expected: u32, found: u32 },
    #[error("exponent {value} out of range for m={m}")]
    ExponentOutOfRange { value: u32, m: u32 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),
    #[error("two-graph is not realizable: cocycle condition fails on {0:?}")]
    NotRealizable([usize; 4]),
    #[error("enumeration of {required} matrices exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("n={n} exceeds the exhaustive permutation limit {max}")]
    TooLarge { n: usize, max: usize },
    #[error("matrix is not self-adjoint at ({0}, {1})")]
    NotSelfAdjoint(usize, usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("Gram matrix is indefinite (eigenvalue {0:e})")]
    Indefinite(f64),
    #[error("{0}")]
    Domain(String),
    #[error("stage {stage} failed: {message}")]
    Stage { stage: &'static str, message: String },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
