use thiserror::Error;

/// Errors surfaced by the kernel.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("polynomials belong to different rings")]
    RingMismatch,

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("polynomial is not homogeneous")]
    NonHomogeneous,

    #[error("total degree overflow (cap {cap})")]
    DegreeOverflow { cap: u32 },

    #[error("degree cap {cap} exceeded during basis computation")]
    DegreeCapExceeded { cap: u32 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unit ideal not admitted here")]
    UnitIdeal,

    #[error("regular sequence of length {wanted} not found (budget {budget} exhausted)")]
    NoRegularSequence { wanted: usize, budget: usize },

    #[error("sequence is not a regular sequence contained in the ideal")]
    NotRegularSequence,

    #[error("ideal is not an almost complete intersection")]
    NotAci,

    #[error("minor index {k} out of range for {rows}x{cols} matrix")]
    MinorIndex { k: usize, rows: usize, cols: usize },

    #[error("matrix entry of degree > 1 where linear forms are required")]
    NonLinearEntry,

    #[error("unknown fixture {0}")]
    UnknownFixture(String),

    #[error("fixture hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("not a complex: d{j} o d{jp} != 0", jp = j + 1)]
    NotAComplex { j: usize },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
