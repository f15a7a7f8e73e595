use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field of order {q} exceeds the 2^20 limit")]
    FieldTooLarge { q: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {value} does not belong to GF({q})")]
    MixedFields { value: u32, q: u32 },
    #[error("matrix rows have inconsistent lengths")]
    RaggedMatrix,

    #[error("expected {expected} coefficients, got {got}")]
    WrongCoefficientCount { expected: usize, got: usize },
    #[error("duplicate x-coordinate in interpolation points")]
    DuplicateX,
    #[error("enumeration of {size} items exceeds the limit of {limit}")]
    EnumerationTooLarge { size: f64, limit: f64 },
    #[error("closed-form weight distribution needs a full-length code")]
    PuncturedNotSupported,
    #[error("invalid degree {degree} for block length {n}")]
    InvalidDegree { degree: i64, n: usize },
    #[error("invalid evaluation positions: {0}")]
    InvalidPositions(String),

    #[error("code and instance disagree on field or positions")]
    MismatchedField,
    #[error("position {0} is not part of the instance")]
    UnknownPosition(u32),

    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("list size {t} exceeds field order {q}")]
    SizeExceedsField { t: usize, q: u32 },
    #[error("probability must be positive")]
    ZeroProbability,
    #[error("epsilon {0} is outside (0, 1)")]
    EpsilonOutOfRange(f64),

    #[error("dual code has {size} codewords, above the limit of {limit}")]
    DualTooLarge { size: f64, limit: f64 },

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("p = {p} is below 2^-{s}")]
    ProbabilityTooSmallForS { p: f64, s: u32 },
    #[error("clause budget s^2 = {budget} leaves no clause for p = {p}")]
    EmptyPlan { p: f64, budget: u64 },
    #[error("expected {expected} input bits, got {got}")]
    WrongWidth { expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
