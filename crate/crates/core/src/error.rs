use thiserror::Error;

/// Everything that can go wrong across the pipeline.
///
/// Variants carry enough context to print a single-line diagnostic; the CLI
/// surfaces them verbatim on stderr.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NotPrime: {0} is not a prime")]
    NotPrime(u64),
    #[error("ReducibleModulus: modulus {0:?} is reducible over GF({1})")]
    ReducibleModulus(Vec<u32>, u32),
    #[error("DegreeMismatch: {0}")]
    DegreeMismatch(String),
    #[error("ZeroPolynomial: operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
    #[error("AmbientMismatch: subspaces live in dimensions {0} and {1}")]
    AmbientMismatch(usize, usize),
    #[error("GroupTooLarge: generated group exceeds {0} elements")]
    GroupTooLarge(usize),
    #[error("NotSubgroup: {0}")]
    NotSubgroup(String),
    #[error("UnknownGroup: no builtin group named {0:?}")]
    UnknownGroup(String),
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("NotInvariant: subspace is not invariant under generator {0}")]
    NotInvariant(usize),
    #[error("AlgebraMismatch: {0}")]
    AlgebraMismatch(String),
    #[error("InvalidModule: {0}")]
    InvalidModule(String),
    #[error("ZeroModule: operation needs a module of positive dimension")]
    ZeroModule,
    #[error("NoQuotientRecorded: {0}")]
    NoQuotientRecorded(String),
    #[error("SplittingFieldRequired: {0}")]
    SplittingFieldRequired(String),
    #[error("ChopInstability: {0}")]
    ChopInstability(String),
    #[error("IncompleteSimpleSet: {0}")]
    IncompleteSimpleSet(String),
    #[error("NotIdempotentModRad: element is not idempotent modulo the radical")]
    NotIdempotentModRad,
    #[error("NoConvergence: {0}")]
    NoConvergence(String),
    #[error("SplitStall: {0}")]
    SplitStall(String),
    #[error("MethodDisagreement: hom route {hom:?} vs chop route {chop:?}")]
    MethodDisagreement {
        hom: Vec<Vec<usize>>,
        chop: Vec<Vec<usize>>,
    },
    #[error("NonCentralSum: {0}")]
    NonCentralSum(String),
    #[error("NotCyclic: subgroup of order {0} is not cyclic")]
    NotCyclic(usize),
    #[error("OrderDivisibleByP: subgroup order {0} is divisible by the characteristic {1}")]
    OrderDivisibleByP(usize, u32),
    #[error("NoSuitableRoot: GF({0}) has no element of multiplicative order {1}")]
    NoSuitableRoot(u64, usize),
    #[error("Parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
