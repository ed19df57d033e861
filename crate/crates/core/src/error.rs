use alloc::string::String;

/// Errors raised by the computational routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("division by an element that is zero at the working precision")]
    DivisionByZero,
    #[error("precision exhausted in {context} (achieved {achieved} digits)")]
    PrecisionExhausted { context: &'static str, achieved: u32 },
    #[error("expected a p-adic unit")]
    NotAUnit,
    #[error("power series is zero modulo (p^N, T^K)")]
    ZeroSeries,
    #[error("T-adic precision {available} too small, need at least {needed}")]
    InsufficientTPrecision { needed: usize, available: usize },
    #[error("{what} = {value} exceeds the configured bound {bound}")]
    BoundExceeded { what: &'static str, value: u64, bound: u64 },
    #[error("growth data does not stabilise within n <= {n_max}")]
    NotStabilized { n_max: u32 },
    #[error("singular curve (discriminant is zero)")]
    Singular,
    #[error("bad reduction at {0}")]
    BadReduction(u64),
    #[error("unsupported reduction type at {prime}: {detail}")]
    UnsupportedReduction { prime: u64, detail: &'static str },
    #[error("supersingular reduction at {0}")]
    Supersingular(u64),
    #[error("point is not on the curve")]
    OffCurve,
    #[error("point is not of exact order 2")]
    NotTwoTorsion,
    #[error("E(Q) has a point of order {0}")]
    TorsionPresent(u64),
    #[error("p-adic logarithm of the Tate period vanishes at the working precision")]
    LogVanishes,
    #[error("the Selmer group must be assumed finite")]
    SelmerNotFinite,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("number field mismatch")]
    FieldMismatch,
    #[error("substitution does not define an automorphism")]
    NotAutomorphism,
    #[error("automorphism is not an involution")]
    NotInvolution,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("could not factor {0}")]
    Factorization(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("AGM did not converge")]
    NoConvergence,
}

pub type Result<T> = core::result::Result<T, Error>;
