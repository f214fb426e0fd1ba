use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("base {base} and modulus {modulus} are not coprime")]
    NotCoprime { base: u64, modulus: u64 },
    #[error("r and p must be distinct primes (both are {0})")]
    EqualPrimes(u64),
    #[error("{p} does not divide {q} - 1, no element of that order exists")]
    OrderNotDividing { p: u64, q: u128 },
    #[error("{ell} is not a prime congruent to 1 mod {r}")]
    NoRootOfUnity { ell: u64, r: u64 },
    #[error("functional must be a nonzero vector of length {expected}")]
    BadFunctional { expected: usize },
    #[error("supplied order {0} does not match the multiplicative order of the matrix")]
    WrongOrder(u64),
    #[error("matrix entry {value} out of range for modulus {modulus}")]
    EntryOutOfRange { value: u64, modulus: u64 },
    #[error("enumerating {needed} items exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("scan stopped after {resolved} of {total} chunks; resume from the checkpoint to finish")]
    Interrupted { resolved: u64, total: u64 },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("invalid Lie type {family}{rank}")]
    InvalidLieType { family: char, rank: usize },
    #[error("weight is not dominant")]
    NotDominant,
    #[error("criterion is not stated for type {family}{rank}")]
    UnsupportedType { family: char, rank: usize },
    #[error("the all-zero label is the trivial module; handle it separately")]
    TrivialModule,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("checkpoint does not match this scan: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
