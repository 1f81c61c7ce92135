use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },
    #[error("polynomial is not homogeneous")]
    Inhomogeneous,
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("expected {expected} values, got {found}")]
    ArityMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("Groebner step limit of {limit} S-pair reductions exceeded")]
    StepLimit { limit: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("Hadamard product undefined: every coordinate product vanishes")]
    HadamardUndefined,
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("points coincide projectively; they do not span a line")]
    CoincidentPoints,
    #[error("invalid Pluecker vector: {0}")]
    InvalidPluecker(String),
    #[error("diagonal automorphism entry {0} is zero")]
    SingularDiagonal(usize),
    #[error("unsupported curve degree {0}")]
    UnsupportedDegree(usize),
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),
    #[error("image is empty: the product is undefined along the whole line")]
    EmptyImage,
    #[error("random sampling failed after {0} attempts")]
    SamplingExhausted(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("product parametrization vanishes identically")]
    ZeroParametrization,
    #[error("no implicit equation found up to degree {cap}")]
    CapExhausted { cap: u32 },
    #[error("kernel of dimension {dim} at first nonzero degree {degree}; surface equation is not unique")]
    AmbiguousKernel { degree: u32, dim: usize },
    #[error("degree cap must be at least 1")]
    InvalidCap,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadricError {
    #[error("not a quadric: {0}")]
    NotQuadric(String),
    #[error("Gram matrix must be a symmetric 4x4 matrix")]
    BadGram,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentifyError {
    #[error("center {index} does not lie on coordinate plane x{index} = 0")]
    CenterOffPlane { index: usize },
    #[error("centers are inconsistent: no quadric is singular at all four (kernel dimension 0)")]
    Inconsistent,
    #[error("centers do not determine a unique quadric (kernel dimension {dim})")]
    Underdetermined { dim: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("surface contains the coordinate plane x{plane} = 0")]
    PlaneComponent { plane: usize },
    #[error("surface must have degree at least {min}, got {found}")]
    DegreeTooLow { min: u32, found: u32 },
    #[error("equation must be a nonzero homogeneous polynomial in 4 variables")]
    BadEquation,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at {path}: {message}")]
pub struct JsonError {
    pub path: String,
    pub message: String,
}
