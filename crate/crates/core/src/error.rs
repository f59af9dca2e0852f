use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("variable `{0}` declared more than once")]
    DuplicateVar(String),
    #[error("variable `{name}` has the wrong kind for this position")]
    WrongKind { name: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("bracket table not antisymmetric at [{j},{k}]")]
    NotAntisymmetric { j: usize, k: usize },
    #[error("expression uses `{0}`, which is not permitted here")]
    UnexpectedVar(String),
    #[error("elements belong to different presentations")]
    ContextMismatch,
    #[error("the L' block has a non-zero anchor on `{0}`")]
    PrimeAnchorNonzero(String),
    #[error("the L' block is not an ideal: bracket of `{0}` and `{1}` leaves it")]
    NotIdeal(String, String),
    #[error("the connection is not a section of the projection at `{0}`")]
    NotASection(String),
    #[error("curvature value at [{0},{1}] is not in the L' span")]
    CurvatureOutsideIdeal(String, String),
    #[error("declared split is not a partition of the basis")]
    BadSplit,
    #[error("bracket {{{0}, {1}}} leaves the span of the invariants")]
    OutsideSpan(String, String),
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("Lie algebra structure constants are invalid: {0}")]
    InvalidLieAlgebra(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
