use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid profile: {}", .0.join("; "))]
    InvalidProfile(Vec<String>),

    #[error("rational function is not proper: numerator degree {numerator} >= denominator degree {denominator}")]
    Improper { numerator: u64, denominator: u64 },

    #[error("point {0} is a pole")]
    Pole(String),

    #[error("expected exactly one root in (0, 1), found {0}")]
    RootCount(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("inclusion check failed: {0}")]
    Inclusion(String),

    #[error("piecewise table is not right-continuous at {0}")]
    NotRightContinuous(String),

    #[error("precision limit reached: {0}")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;
