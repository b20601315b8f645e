//! Error type shared by all modules, with the CLI exit-code mapping.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different field towers")]
    TowerMismatch,
    #[error("operands live over different base fields")]
    BaseMismatch,
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("defining polynomial is reducible: {0}")]
    ReducibleExtension(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("ideal is not zero-dimensional")]
    PositiveDimensional,
    #[error("local factor at the origin is empty")]
    EmptyLocalFactor,
    #[error("critical point is not isolated: {0}")]
    NonIsolated(String),
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("signature is only defined over an ordered base field")]
    SignatureUnavailable,
    #[error("valuation m = {0} is not invertible in the base field")]
    MNotInvertible(u64),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("internal cross-check failed: {0}")]
    InternalCheck(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }

    /// Process exit code for the CLI: 0 success, 2 parse, 3 validation,
    /// 4 capacity, 5 m-not-invertible, 6 internal cross-check.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Capacity(_) => 4,
            Error::MNotInvertible(_) => 5,
            Error::InternalCheck(_) => 6,
            Error::Validation(_)
            | Error::ReducibleExtension(_)
            | Error::ZeroInput
            | Error::UnknownVariable(_)
            | Error::DivisionByZero
            | Error::TowerMismatch
            | Error::BaseMismatch
            | Error::SignatureUnavailable
            | Error::Unsupported(_) => 3,
            Error::PositiveDimensional
            | Error::EmptyLocalFactor
            | Error::NonIsolated(_)
            | Error::DegenerateForm => 6,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
