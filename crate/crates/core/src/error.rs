use alloc::string::String;

/// Failures raised by the algebraic layer.
///
/// Mathematical verdicts (a failed axiom, a non-PSD Gram matrix) are not errors; they are
/// reported through the dedicated report types. Errors here mean a computation could not be
/// carried out at all.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
    #[error("no value for moment symbol {0}")]
    MissingSymbol(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("the empty word is only available in the unitization")]
    EmptyWord,
    #[error("letter {letter} does not belong to an algebra with {generators} generators")]
    LetterOutOfRange { letter: u32, generators: usize },
    #[error("ambient algebras do not match: {0}")]
    AlgebraMismatch(String),
    #[error("face count mismatch: {left} vs {right}")]
    FaceMismatch { left: usize, right: usize },
    #[error("homomorphism does not preserve faces at generator {0:?}")]
    NotFaced(String),
    #[error("no image or comultiplication rule for generator {0:?}")]
    MissingRule(String),
    #[error("moment of word {word} (length {length}) lies beyond truncation degree {degree}")]
    Truncation { word: String, length: usize, degree: usize },
    #[error("component {component} out of range for a {d}-valued functional")]
    ComponentOutOfRange { component: usize, d: usize },
    #[error("product {name} is not applicable to m={m}, d={d}")]
    NotApplicable { name: String, m: usize, d: usize },
    #[error("words longer than {max} letters are not supported by product evaluators")]
    WordTooLong { max: usize },
    #[error("functional must vanish on the unit of the Lachs algebra")]
    NonvanishingAtUnit,
    #[error("the comultiplication is not degree preserving; exponential series need a graded coalgebra")]
    NotGraded,
    #[error("matrix is not Hermitian at ({row}, {col})")]
    NotHermitian { row: usize, col: usize },
    #[error("algebra carries no involution data")]
    MissingStar,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = core::result::Result<T, Error>;
