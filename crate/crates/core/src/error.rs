use thiserror::Error;

/// Every failure the library can report.
///
/// Mathematical *mismatches* (a check that evaluates to `false`) are not
/// errors; they are returned as data. This enum is for inputs that cannot be
/// processed and for computations that had to be abandoned.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring context mismatch: {0}")]
    Context(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("inhomogeneous polynomial: monomials {first} and {second} have different degrees")]
    Homogeneity { first: String, second: String },
    #[error("step budget of {budget} reduction steps exceeded")]
    Resource { budget: u64 },
    #[error("invalid fan: {0}")]
    Fan(String),
    #[error("lifting obstruction at cone {cone:?}: {reason}")]
    Obstruction { cone: Vec<usize>, reason: String },
    #[error("degree error: {0}")]
    Degree(String),
    #[error("degenerate degree: {0}")]
    DegenerateDegree(String),
    #[error("no representing vector field: {0}")]
    Representation(String),
    #[error("coefficient error: {0}")]
    Coefficient(String),
    #[error("lattice error: {0}")]
    Lattice(String),
}

pub type Result<T> = std::result::Result<T, Error>;
