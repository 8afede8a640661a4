use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("variable `{0}` has no assigned value")]
    UnassignedVariable(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoderivationError {
    #[error("coderivations live on different graded spaces")]
    SpaceMismatch,
    #[error("coderivation has mixed parity: even terms [{even}], odd terms [{odd}]")]
    MixedParity { even: String, odd: String },
    #[error("coderivation mixes degrees {0:?}")]
    MixedDegree(Vec<usize>),
    #[error("operation requires the 0|2 space, got parities {0:?}")]
    WrongSpace(Vec<u8>),
    #[error("basis index {index} is outside 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("a graded space needs at least one basis vector")]
    EmptySpace,
    #[error("coefficient `{0}` is not a rational constant")]
    NonConstantCoefficient(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HochschildError {
    #[error("not a codifferential: {0}")]
    NotCodifferential(String),
    #[error(transparent)]
    Coderivation(#[from] CoderivationError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuliError {
    #[error("codifferential index {0} is outside 1..=6")]
    UnknownCodifferential(usize),
    #[error("automorphism is singular")]
    SingularAutomorphism,
    #[error("multiplication is not associative: ({}*{})*{} != {}*({}*{})",
        BASIS_NAMES[.0.0], BASIS_NAMES[.0.1], BASIS_NAMES[.0.2],
        BASIS_NAMES[.0.0], BASIS_NAMES[.0.1], BASIS_NAMES[.0.2])]
    NonAssociative((usize, usize, usize)),
    #[error("expected 8 structure constants, got {0}")]
    WrongConstantCount(usize),
    #[error("unsupported prime {0}: the census supports 2, 3 and 5")]
    UnsupportedPrime(u32),
    #[error("coderivation is not a degree-2 map on the 0|2 space: {0}")]
    NotATable(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Names of the basis of V, in table order.
pub const BASIS_NAMES: [&str; 2] = ["x", "theta"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformationError {
    #[error("direction `{parameter}` is not a cocycle for the base codifferential")]
    DirectionNotCocycle { parameter: String },
    #[error("direction `{parameter}` is not an odd degree-2 coderivation")]
    DirectionNotQuadratic { parameter: String },
    #[error("family is not versal: [d_t, d_t] = {0}")]
    NonVersal(String),
    #[error("specialization at {point} is not associative")]
    NonAssociativeSpecialization { point: String },
    #[error("parameter `{0}` has no assigned value")]
    MissingParameter(String),
    #[error("assignment violates the constraint {0} != 0")]
    ConstraintViolation(String),
    #[error("malformed family: {0}")]
    Malformed(String),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
    #[error(transparent)]
    Coderivation(#[from] CoderivationError),
    #[error(transparent)]
    Moduli(#[from] ModuliError),
}

impl From<ScalarError> for DeformationError {
    fn from(e: ScalarError) -> Self {
        match e {
            ScalarError::UnassignedVariable(v) => DeformationError::MissingParameter(v),
        }
    }
}
