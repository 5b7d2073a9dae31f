use alloc::string::String;
use core::fmt;

/// Failure classes for the numerical layer.
///
/// The variants record who is at fault, and the companion CLI maps them
/// onto process exit codes: `Domain` and `Usage` are caller mistakes,
/// `Numerical` means an algorithm could not reach its accuracy target,
/// and `Precondition` means the data fails a hypothesis of the statement
/// being checked. Precondition failures are refusals, not audit failures;
/// conflating the two would let a vacuous check count as evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Parameter outside the mathematical domain of an operation.
    Domain(String),
    /// Structurally invalid call, such as mixing grids between plans.
    Usage(String),
    /// Divergence, overflow, or a quadrature that never stabilized.
    Numerical(String),
    /// A hypothesis of the audited statement does not hold for the input.
    Precondition(String),
}

impl Error {
    /// The message without the class prefix.
    pub fn message(&self) -> &str {
        match self {
            Error::Domain(m) | Error::Usage(m) | Error::Numerical(m) | Error::Precondition(m) => m,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Usage(m) => write!(f, "usage error: {m}"),
            Error::Numerical(m) => write!(f, "numerical error: {m}"),
            Error::Precondition(m) => write!(f, "precondition not satisfied: {m}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
