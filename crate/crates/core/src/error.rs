use thiserror::Error;

use crate::class::ConditionWitness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ground set: {0}")]
    GroundSet(String),

    #[error("subset mask {mask:#x} out of range for a ground set of {n} elements")]
    MaskOutOfRange { mask: u32, n: usize },

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("element `{0}` listed twice in a subset")]
    DuplicateElement(String),

    #[error("invalid codomain: {0}")]
    Codomain(String),

    #[error("value {value} does not belong to the {codomain} codomain")]
    CodomainMismatch { value: String, codomain: String },

    #[error("expected {expected} values for {n} elements, got {got}")]
    ValueCount { expected: usize, got: usize, n: usize },

    #[error("invalid interval: {lo:#x} is not a subset of {hi:#x}")]
    InvalidInterval { lo: u32, hi: u32 },

    #[error("invalid transform: {0}")]
    InvalidTransform(String),

    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),

    #[error("{path}: {message}")]
    Format { path: String, message: String },

    #[error("JSON syntax error at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },

    #[error("operation requires a numeric codomain, found {0}")]
    UnsupportedCodomain(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("hypothesis {condition} does not hold (witness X={x:#x}, Y={y:#x})", condition = .0.condition, x = .0.x.mask(), y = .0.y.mask())]
    Hypothesis(Box<ConditionWitness>),

    #[error("{what} = {value} is outside [{lo}, {hi}]")]
    Range { what: &'static str, value: i64, lo: i64, hi: i64 },

    #[error("invalid level chain: {0}")]
    Chain(String),

    #[error("chain does not induce a (Qh) function (witness X={x:#x}, Y={y:#x})", x = .0.x.mask(), y = .0.y.mask())]
    ChainNotQh(Box<ConditionWitness>),

    #[error("exhaustive enumeration is capped at n = {max}, got n = {n}")]
    EnumerationCap { n: usize, max: usize },

    #[error("invalid predicate: {0}")]
    Predicate(String),

    #[error("unknown condition `{0}`")]
    UnknownCondition(String),

    #[error("ground sets differ")]
    GroundMismatch,
}

impl Error {
    pub(crate) fn format(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Format { path: path.into(), message: message.into() }
    }

    pub(crate) fn hypothesis(witness: ConditionWitness) -> Self {
        Error::Hypothesis(Box::new(witness))
    }
}
