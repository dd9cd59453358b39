use thiserror::Error;

/// Errors produced by the library. Every variant carries enough context to
/// be printed as a one-line diagnostic by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown Cartan type `{0}`")]
    UnknownType(String),
    #[error("invalid Cartan data: {0}")]
    InvalidCartan(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parabolic {inner} is not contained in {outer}")]
    NotContained { inner: String, outer: String },
    #[error("argument lies on a wall: {0}")]
    OnWall(String),
    #[error("invalid folding: {0}")]
    InvalidFolding(String),
    #[error("missing vertex for Weyl element {0}")]
    MissingVertex(usize),
    #[error("point {0} is not in the antidominant cone")]
    NotAntidominant(usize),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("invalid torus parameters: {0}")]
    InvalidTorus(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
