use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("substituted value is not invertible: {0}")]
    NotInvertible(String),
    #[error("denominator vanishes under specialization")]
    VanishingDenominator,
    #[error("{0}")]
    Domain(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("group of order {size} exceeds the enumeration budget {budget}")]
    BudgetExceeded { size: u64, budget: u64 },
    #[error("{0} out of range")]
    OutOfRange(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("elements do not commute: {0}")]
    NonCommuting(String),
    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },
    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
