use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{n} exceeds the supported bound 2^16")]
    FieldTooLarge { p: u32, n: u32 },
    #[error("modulus must list {expected} coefficients, got {got}")]
    ModulusLength { expected: usize, got: usize },
    #[error("modulus coefficient {coeff} is not reduced mod {p}")]
    ModulusCoefficient { coeff: u32, p: u32 },
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u32 },
    #[error("encoding {enc} is out of range for GF({q})")]
    ElementOutOfRange { enc: u64, q: u32 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("{e} does not divide the extension degree {n}")]
    NotADivisor { e: u32, n: u32 },

    #[error("the zero vector does not name a projective subspace")]
    ZeroVector,
    #[error("expected {expected} coordinates, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("degenerate configuration: {0}")]
    Degenerate(&'static str),
    #[error("singular matrix")]
    Singular,

    #[error("table has {got} entries but the field has {q} elements")]
    TableLength { got: usize, q: u32 },
    #[error("coordinate functions must vanish at t = 0")]
    NonzeroAtOrigin,
    #[error("parameters {0} and {1} give the same plane")]
    DuplicatePlane(u32, u32),
    #[error("flock is not a star flock")]
    NotStar,
    #[error("the critical cone of the flock is empty")]
    EmptyCarrier,
    #[error("flock is not of the form F(t, g(t), 0)")]
    NotNormalForm,
    #[error("star flock is not proper (its planes share a line)")]
    ImproperStar,
    #[error("exhaustive equivalence is limited to q <= 8, got q = {0}")]
    ExhaustiveTooLarge(u32),

    #[error("map is not a permutation")]
    NotPermutation,
    #[error("map does not send 0 to 0")]
    NotFixingZero,
    #[error("table is not GF(p^{e})-linear")]
    NotLinearized { e: u32 },
    #[error("count does not fit in 128 bits")]
    Overflow,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("q = {q} is not supported here: {reason}")]
    Unsupported { q: u32, reason: &'static str },
}
