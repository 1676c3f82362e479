use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid base {0}: base must be at least 2")]
    InvalidBase(u64),

    #[error("digit {digit} is out of range for base {base}")]
    DigitOutOfRange { digit: u64, base: u64 },

    #[error("the valuation of 0 is undefined")]
    ZeroValuation,

    #[error("carry check needs at least one summand")]
    EmptyParts,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("parts sum to {sum}, expected {n}")]
    PartsSumMismatch { n: String, sum: String },

    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("membership in c is only defined for positive integers")]
    ZeroMembership,

    #[error("unsupported affine set {k}c{l:+}; supported k in {{2, 4}}, l in {{-1, -2}}")]
    UnsupportedAffine { k: u32, l: i32 },

    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),

    #[error("{what} is defined only for n >= {min}, got {n}")]
    OutOfDomain { what: &'static str, min: u64, n: String },

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("enumeration bound exceeded: {what}({n}) exceeds the bound {bound}")]
    BoundExceeded { what: &'static str, n: u64, bound: u64 },

    #[error("no fast kernel for {seq} modulo {modulus}; supported: {supported}")]
    UnsupportedKernel { seq: String, modulus: u64, supported: String },

    #[error("compute budget exceeded: {seq}({n}) is above the limit {limit}")]
    BudgetExceeded { seq: String, n: String, limit: u64 },

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error("unknown sequence `{0}`")]
    UnknownSequence(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid decimal number: {0}")]
    InvalidNumber(String),
}
