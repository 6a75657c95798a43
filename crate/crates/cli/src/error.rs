//! Error type shared by the command layer, the CLI and the HTTP service.

use serde::Serialize;
use thiserror::Error;
use upcluster_core::Error as CoreError;

/// Errors surfaced by the command layer, the CLI and the HTTP service.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    /// Syntax error in an element expression; `position` is a 1-based column.
    #[error("syntax error at column {position}: {message}")]
    Syntax { position: usize, message: String },

    /// The expression is a rational function that is not Laurent.
    #[error("not a Laurent polynomial: the denominator {denominator} does not divide the numerator")]
    NotLaurent { denominator: String },

    /// Seed or query documents that do not match the schema.
    #[error("invalid input: {0}")]
    Input(String),

    /// A 1-based index given as 0.
    #[error("index 0 is invalid: indices are numbered from 1")]
    ZeroIndex,

    #[error("{0}")]
    Io(String),

    #[error("unknown session {0}")]
    UnknownSession(String),

    #[error("nothing to undo")]
    EmptyHistory,

    #[error(transparent)]
    Domain(#[from] CoreError),
}

/// How the binary reports an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad invocation or unreadable input; exit code 2.
    Usage,
    /// The algebra rejected the request; exit code 1.
    Domain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorBody {
    pub error: &'static str,
    pub message: String,
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Syntax { .. } => "syntax_error",
            CliError::NotLaurent { .. } => "not_laurent",
            CliError::Input(_) => "invalid_input",
            CliError::ZeroIndex => "index_out_of_range",
            CliError::Io(_) => "io_error",
            CliError::UnknownSession(_) => "unknown_session",
            CliError::EmptyHistory => "empty_history",
            CliError::Domain(e) => domain_code(e),
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            CliError::Syntax { .. } | CliError::Input(_) | CliError::ZeroIndex | CliError::Io(_) => ErrorClass::Usage,
            _ => ErrorClass::Domain,
        }
    }

    /// Invalid mutation directions get their own HTTP status.
    pub fn is_invalid_index(&self) -> bool {
        matches!(
            self,
            CliError::ZeroIndex | CliError::Domain(CoreError::IndexOutOfRange { .. } | CoreError::FrozenIndex { .. })
        )
    }

    pub fn body(&self) -> ErrorBody {
        ErrorBody {
            error: self.code(),
            message: self.to_string(),
        }
    }
}

fn domain_code(e: &CoreError) -> &'static str {
    match e {
        CoreError::MalformedInput(_) => "malformed_input",
        CoreError::AmbientMismatch { .. } => "ambient_mismatch",
        CoreError::DivisionByZero => "division_by_zero",
        CoreError::NotDivisible => "not_divisible",
        CoreError::TermCapExceeded { .. } => "term_cap_exceeded",
        CoreError::UndefinedValuation => "undefined_valuation",
        CoreError::InvalidPrime(_) => "invalid_prime",
        CoreError::IndexOutOfRange { .. } => "index_out_of_range",
        CoreError::FrozenIndex { .. } => "frozen_index",
        CoreError::DimensionMismatch(_) => "dimension_mismatch",
        CoreError::NotSymmetrizable(_) => "not_symmetrizable",
        CoreError::NotSkewSymmetric => "not_skew_symmetric",
        CoreError::InvalidQuiver(_) => "invalid_quiver",
        CoreError::IsolatedIndex { .. } => "isolated_index",
        CoreError::NotExchangeShape(_) => "not_exchange_shape",
        CoreError::OracleRefused(_) => "oracle_refused",
        CoreError::StarfishNotEstablished { .. } => "starfish_not_established",
        CoreError::NotInUpper(_) => "not_in_upper",
        CoreError::Unsupported(_) => "unsupported",
        CoreError::Internal(_) => "internal",
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
