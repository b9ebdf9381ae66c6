use thiserror::Error;

/// Errors surfaced by the library's fallible operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("monomials live in different rings ({left} vs {right} variables)")]
    DimensionMismatch { left: usize, right: usize },

    #[error("the monomial 1 is not allowed as an ideal generator")]
    UnitGenerator,

    #[error("operation requires a nonzero ideal")]
    ZeroIdeal,

    #[error("operation requires an ideal generated in a single degree")]
    MixedDegrees,

    #[error("operation requires a square-free ideal")]
    NotSquareFree,

    #[error("{0} is not a minimal generator of the ideal")]
    NotAGenerator(String),

    #[error("monomial {0} is not an element of the lcm lattice")]
    NotInLattice(String),

    #[error("connectivity of the void complex is undefined")]
    VoidComplex,

    #[error("invalid clutter: {0}")]
    InvalidClutter(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("unsupported parameter range: {0}")]
    Unsupported(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
