use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("vector length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("subspace is not contained in the given superspace")]
    NotSubspace,

    #[error("invalid filtration at degree {degree}, layer {layer}: {reason}")]
    InvalidFiltration {
        degree: usize,
        layer: usize,
        reason: String,
    },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("presentation is not connected: dim H_0 = {0}")]
    NotConnected(usize),

    #[error("degree {degree} outside the allowed range {min}..={max}")]
    Domain {
        degree: usize,
        min: usize,
        max: usize,
    },

    #[error("product of degrees {left} and {right} exceeds truncation degree {max}")]
    Truncation {
        left: usize,
        right: usize,
        max: usize,
    },

    #[error("bialgebra axioms fail: {0}")]
    AxiomFailure(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cannot lift generators: Gr(H) is not free at degree {degree}")]
    LiftFailed { degree: usize },

    #[error("invalid Lie presentation: {0}")]
    InvalidLie(String),

    #[error("resource cap exceeded: {0}")]
    Resource(String),

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
