use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no inverse in GF(4)")]
    ZeroInverse,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    ZeroGcd,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0} is not monic")]
    NotMonic(String),
    #[error("{0} is constant; a polynomial of degree >= 1 is required")]
    Constant(String),
    #[error("{0} is not irreducible over GF(4)")]
    Reducible(String),
    #[error("{divisor} does not divide {dividend}")]
    NotADivisor { divisor: String, dividend: String },
    #[error("divisor count {count} exceeds the cap of {cap}")]
    DivisorCap { count: u128, cap: u64 },
    #[error("{what} = {value} exceeds the cap of {cap}")]
    Cap { what: &'static str, value: u64, cap: u64 },
    #[error("invalid bound: {0}")]
    InvalidBound(String),
    #[error("unknown family id `{0}`")]
    UnknownFamily(String),
    #[error("{0} is not in Omega2")]
    NotInOmega2(String),
    #[error("{0} is not in Omega1")]
    NotInOmega1(String),
    #[error("search hit {poly} failed re-verification")]
    Verification { poly: String },
    #[error("could not build a worker pool: {0}")]
    ThreadPool(String),
}
