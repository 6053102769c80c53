use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a supported prime (need a prime 2 <= p <= 97)")]
    BadPrime(u64),
    #[error("operands live over different primes ({0} vs {1})")]
    PrimeMismatch(u32, u32),
    #[error("inversion of zero")]
    InversionOfZero,
    #[error("zero input where a unit was required")]
    ZeroInput,
    #[error("root degree {0} is divisible by the characteristic")]
    BadModulus(u64),
    #[error("Witt vector lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("Witt length {got} exceeds the cap {cap}")]
    LengthCapExceeded { got: usize, cap: usize },
    #[error("universal polynomials for p={p}, length {len} exceed the term budget ({terms} > {budget})")]
    TermBudgetExceeded { p: u32, len: usize, terms: u128, budget: u128 },
    #[error("inexact division by p in the ghost recursion (level {0})")]
    InexactDivision(usize),
    #[error("not a unit")]
    NotAUnit,
    #[error("negative power of a non-unit")]
    NegativePowerOfNonUnit,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("wrong prime for this operation: {0}")]
    WrongPrime(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("bad index: {0}")]
    BadIndex(String),
    #[error("no wild part in the generator word")]
    NoWildPart,
    #[error("unsupported prime: {0}")]
    UnsupportedPrime(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("depth cap exceeded: {0}")]
    DepthCapExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid tower specification: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
