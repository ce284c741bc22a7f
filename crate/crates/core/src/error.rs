use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Variants split into two families: malformed input ([`Error::is_validation`])
/// and well-formed input on which the mathematics refuses to proceed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by zero at position {pos}")]
    DivisionByZero { pos: usize },
    #[error("divisor at position {pos} is not a nonzero rational constant")]
    NonConstantDivisor { pos: usize },
    #[error("exponent at position {pos} is not a nonnegative integer literal")]
    BadExponent { pos: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("all inputs are zero")]
    AllZero,
    #[error("zero argument")]
    ZeroArgument,
    #[error("form has non-constant entries")]
    NotNumeric,
    #[error("form is degenerate")]
    Degenerate,
    #[error("form is anisotropic")]
    NotIsotropic,
    #[error("no isotropic vector up to height {0}; raise the cap")]
    CapExceeded(u64),
    #[error("rank must be even, got {0}")]
    OddRank(usize),
    #[error("point is not on the quadric")]
    NotOnQuadric,
    #[error("map does not lie on the quadric")]
    MapNotOnQuadric,
    #[error("residual map is identically zero")]
    ZeroResidual,
    #[error("maps are proportional")]
    Proportional,
    #[error("endpoints coincide projectively")]
    CoincidentEndpoints,
    #[error("points are collinear")]
    Collinear,
    #[error("plane through the points lies in the quadric")]
    PlaneInQuadric,
    #[error("conic through the points is singular")]
    SingularConic,
    #[error("interpolation nodes repeat")]
    RepeatedNodes,
    #[error("interpolating curve lies in the quadric")]
    GraphInQuadric,
    #[error("not linear in u, v, w: {0}")]
    NotLinear(String),
    #[error("expected degree {expected}, got {got}")]
    WrongDegree { expected: u32, got: u32 },
    #[error("polynomials are not coprime")]
    NotCoprime,
    #[error("point is a base point of the map")]
    BasePoint,
    #[error("linear map is degenerate")]
    DegenerateLinearMap,
    #[error("common factor extraction failed; minors: {0:?}")]
    ExtractionFailed(Vec<String>),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    /// True for errors caused by malformed input rather than mathematics.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::DivisionByZero { .. }
                | Error::NonConstantDivisor { .. }
                | Error::BadExponent { .. }
                | Error::Invalid(_)
                | Error::DimensionMismatch { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
