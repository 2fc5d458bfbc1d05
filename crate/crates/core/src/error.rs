use thiserror::Error;

/// Errors raised by lattice computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("degenerate form (determinant 0)")]
    Degenerate,
    #[error("form is not definite: signature ({pos}, {neg})")]
    Indefinite { pos: usize, neg: usize },
    #[error("vector length {len} does not match lattice rank {rank}")]
    RankMismatch { len: usize, rank: usize },
    #[error("the zero vector has no divisibility")]
    ZeroVector,
    #[error("cannot rescale by zero")]
    ZeroScale,
    #[error("lattice is not even")]
    OddLattice,
    #[error("LLL parameter must lie strictly between 1/4 and 1")]
    InvalidDelta,
    #[error("enumeration bound must be a positive even integer, got {0}")]
    InvalidBound(String),
    #[error("matrix does not preserve the Gram form")]
    NotIsometry,
    #[error("isometry order exceeds cap {0}")]
    OrderCapExceeded(u64),
    #[error("expected an involution, order is {0}")]
    NotInvolution(u64),
    #[error("reflection in this vector is not integral")]
    NonIntegralReflection,
    #[error("vector is isotropic")]
    Isotropic,
    #[error("Rogers bound is tabulated for 1 <= n <= 24, got {0}")]
    RogersOutOfRange(u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = LatticeError> = std::result::Result<T, E>;
