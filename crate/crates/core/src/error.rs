use alloc::string::String;
use core::fmt;

/// Failure modes shared by every module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-range input (bad vertex index, s > n, unknown name).
    Input(String),
    /// Input is well-formed but outside the domain of the requested quantity.
    Domain(String),
    /// The request is outside what the closed forms cover; never approximated.
    Unsupported(String),
    /// A search would exceed, or did exceed, its node budget.
    Budget { what: String, needed: u128, limit: u64 },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub fn budget(what: impl Into<String>, needed: u128, limit: u64) -> Self {
        Error::Budget { what: what.into(), needed, limit }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Input(m) => write!(f, "input error: {m}"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
            Error::Budget { what, needed, limit } => {
                write!(f, "budget exceeded: {what} needs ~{needed} nodes, limit {limit}")
            }
        }
    }
}

impl core::error::Error for Error {}
