use thiserror::Error;

/// Errors raised by the arithmetic kernels and the certificate pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("series is not invertible: constant term is zero")]
    ZeroConstantTerm,
    #[error("constant term must equal 1 (found {0})")]
    ConstantTermNotOne(String),
    #[error("coefficient {index} ({value}) is not p-integral")]
    NotPIntegral { index: usize, value: String },
    #[error("constant term {0} is not a unit modulo p")]
    NonUnitConstant(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("Dwork congruence fails at level r = {r} (first mismatch at degree {degree})")]
    DworkFailure { r: u32, degree: usize },
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("point is irregular: {0}")]
    Irregular(String),
    #[error("not regular singular modulo M^{t} at coefficient b_{j}: {reason}")]
    NotRegularSingular { j: usize, t: u32, reason: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("evidence error: {0}")]
    Evidence(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
