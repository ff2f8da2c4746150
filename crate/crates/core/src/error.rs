use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not an odd prime")]
    NotPrime(u32),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("Cartan matrix violates axiom {axiom}: {detail}")]
    AxiomViolation { axiom: u8, detail: String },
    #[error("root closure exceeded {0} roots; not of finite type")]
    NotFiniteType(usize),
    #[error("illegal swap: {0}")]
    IllegalSwap(String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("ad-nilpotency degree {degree} exceeds p = {p}")]
    DegreeExceedsP { degree: usize, p: u32 },
    #[error("super Jacobi identity fails: {0}")]
    JacobiViolation(String),
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("subspace is not parity homogeneous")]
    NotParityHomogeneous,
    #[error("missing chain tag `{0}`")]
    MissingTags(String),
    #[error("torus does not act diagonally: {0}")]
    NotDiagonalizable(String),
    #[error("unrecognized Cartan type: {0}")]
    UnrecognizedType(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
