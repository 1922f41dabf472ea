use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("homomorphism is not well defined: {0}")]
    IllFormedHom(String),

    #[error("endomorphism in degree {degree} is not invertible")]
    NonInvertibleAuto { degree: i64 },

    #[error("quiver has an oriented cycle through vertex {0}")]
    CyclicQuiver(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("unknown preset {0:?}")]
    UnknownPreset(String),

    #[error("degree {degree} lies outside the stored window")]
    DegreeOutOfWindow { degree: i64 },

    #[error("invalid invariant data: {0}")]
    InvalidSpec(String),

    #[error("missing class {0:?}")]
    MissingClass(String),

    #[error("invalid cohomology model: {0}")]
    InvalidModel(String),

    #[error("invalid dg data: {0}")]
    InvalidDgData(String),

    #[error("dg functor does not induce an equivalence on H0: {0}")]
    NotH0Equivalence(String),

    #[error("truncation bound {bound} is too small, need at least {required}")]
    TruncationTooSmall { bound: usize, required: usize },

    #[error("vector is not in the lattice")]
    NotInLattice,

    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),

    #[error("value {0} has no image in the coefficient field")]
    NotRepresentable(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}
