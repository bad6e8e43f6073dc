//! Error type shared by all modules.

use std::fmt;

/// Library-wide error enum.
///
/// Variants map onto the CLI exit codes: input and parse problems exit
/// with 2, unsupported configurations (anything that would require
/// irrational coordinates, or manual-cluster data where chart maps are
/// needed) with 3, and internal invariant violations with 4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Syntax error in a polynomial expression, with byte offset.
    Parse { message: String, offset: usize },
    /// Invalid input: schema violations, precondition failures.
    Input(String),
    /// A singular point of the curve has non-rational coordinates.
    /// The witness is a polynomial whose roots contain the offending
    /// coordinate.
    IrrationalSingularPoint { witness: String },
    /// An infinitely near point of a germ resolution has non-rational
    /// coordinates; `witness` is a factor of the direction polynomial
    /// the offending minimal polynomial divides.
    IrrationalInfinitelyNearPoint { witness: String },
    /// A curve component is not squarefree.
    NonreducedComponent { component: String },
    /// The requested operation is unavailable in this configuration
    /// (typically manual-cluster data without chart maps).
    Unsupported(String),
    /// An internal invariant failed; indicates a bug or inconsistent data.
    Internal(String),
}

impl Error {
    /// Exit code of the CLI for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Input(_) => 2,
            Error::IrrationalSingularPoint { .. }
            | Error::IrrationalInfinitelyNearPoint { .. }
            | Error::NonreducedComponent { .. }
            | Error::Unsupported(_) => 3,
            Error::Internal(_) => 4,
        }
    }

    /// Single-line machine-parsable reason, used on stderr by the CLI.
    pub fn reason(&self) -> String {
        match self {
            Error::Parse { message, offset } => {
                format!("parse-error offset={offset} {message}")
            }
            Error::Input(m) => format!("input-error {m}"),
            Error::IrrationalSingularPoint { witness } => {
                format!("irrational-singular-point witness={witness}")
            }
            Error::IrrationalInfinitelyNearPoint { witness } => {
                format!("irrational-infinitely-near-point witness={witness}")
            }
            Error::NonreducedComponent { component } => {
                format!("nonreduced-component {component}")
            }
            Error::Unsupported(m) => format!("unsupported-configuration {m}"),
            Error::Internal(m) => format!("internal-invariant-violation {m}"),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.reason())
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
