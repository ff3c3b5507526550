use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Variants marked as "relation violated" indicate a broken internal
/// invariant rather than bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("valuation of zero")]
    ValuationOfZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("B must be a positive integer")]
    NonPositiveB,
    #[error("k must be nonzero")]
    ZeroK,
    #[error("the zero form is not a binary cubic form")]
    ZeroForm,
    #[error("matrix determinant {0} is not +1 or -1")]
    NotUnimodular(BigInt),
    #[error("marked point must not be (0, 0)")]
    ZeroPoint,
    #[error("degenerate form: discriminant is zero")]
    DegenerateForm,
    #[error("point ({x}, {y}) is not on y^2 = x^3 + ({k})*{b}^2")]
    OffCurve { k: i64, b: u64, x: i128, y: i128 },
    #[error("not a Mordell form: {0}")]
    NotMordellForm(&'static str),
    #[error("discriminant {delta} is not -4*({k})*B^2 for a positive integer B")]
    BadDiscriminant { delta: BigInt, k: i64 },
    #[error("degenerate: B = 0")]
    ZeroB,
    #[error("lowering needs gcd(x, M) = 1 but it is {0}")]
    NotCoprime(u64),
    #[error("M = {m} does not divide B = {b}")]
    NotADivisor { m: u64, b: u64 },
    #[error("Hessian divisibility violated")]
    HessianDivisibility,
    #[error("seminvariant relation violated")]
    SeminvariantRelation,
    #[error("lowered form is not integral")]
    NonIntegralLowering,
    #[error("k = {0} is not squarefree")]
    NotSquarefree(i64),
    #[error("tolerance {0} is outside (0, 1e-4]")]
    Tolerance(f64),
    #[error("N must be at least 1")]
    EmptyRange,
    #[error("value out of supported range: {0}")]
    OutOfRange(&'static str),
    #[error("reduction did not reach the reduced-form bounds")]
    ReductionFailed,
    #[error("invalid {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("census shard mismatch: {0}")]
    Shard(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
