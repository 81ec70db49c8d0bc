use thiserror::Error;

/// Errors raised by the computational kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("label {label} out of range 1..={max}")]
    LabelOutOfRange { label: u64, max: u64 },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("object mismatch: expected {expected}, found {found}")]
    ObjectMismatch { expected: String, found: String },
    #[error("morphism is not an endomorphism")]
    NotEndomorphism,
    #[error("{0} overflows 64-bit multiplicities")]
    Overflow(&'static str),
    #[error("{what} = {value} exceeds the enumeration cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },
    #[error("zero element has no growth rate")]
    ZeroElement,
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
