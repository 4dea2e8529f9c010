use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be at least {min}, got {got}")]
    DimensionTooSmall { min: usize, got: usize },

    #[error("symplectic structures require an even dimension, got {0}")]
    OddSymplecticDimension(usize),

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("{context}: expected dimension {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("operand kinds or dimensions do not match: {0}")]
    IncompatibleChannels(String),

    #[error("basis size budget exceeded: 4^{qubits} = {size} elements > {budget}")]
    SizeBudget {
        qubits: usize,
        size: usize,
        budget: usize,
    },

    #[error(
        "partition counts (a={a}, b={b}) disagree with the closed forms (a={expected_a}, b={expected_b}); \
         the involution does not pair with this basis"
    )]
    PartitionCount {
        a: usize,
        b: usize,
        expected_a: usize,
        expected_b: usize,
    },

    #[error("basis element {index} is not an involution eigenvector and re-orthonormalization failed")]
    Eigenspace { index: usize },

    #[error("structure-constant residual {residual:.3e} exceeds {tol:.3e}; basis is not orthonormal")]
    StructureResidual { residual: f64, tol: f64 },

    #[error("projector identity violated: {name} residual {residual:.3e}")]
    ProjectorIdentity { name: &'static str, residual: f64 },

    #[error("eigensolver failed to converge")]
    EigenConvergence,

    #[error("Choi matrix has eigenvalue {0:.6e} below tolerance: not a completely positive channel")]
    NotCompletelyPositive(f64),

    #[error("half-plane intersection is empty")]
    EmptyRegion,

    #[error("half-plane intersection is unbounded")]
    UnboundedRegion,

    #[error("need at least {min} half-planes, got {got}")]
    TooFewHalfPlanes { min: usize, got: usize },

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
