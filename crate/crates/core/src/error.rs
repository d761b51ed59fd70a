use num_bigint::BigInt;
use thiserror::Error;

use crate::rationals::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong across the library.
///
/// `index` fields are 0-based; messages show 1-based positions.
///
/// Variants split into two families: input/domain problems (exit code 1 in the
/// CLI) and search outcomes where no answer could be produced (exit code 2).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("malformed rational {0:?}: expected \"p/q\" or \"p\" in base 10")]
    ParseRational(String),

    #[error("theta = {0} is outside (0, 1]")]
    ThetaOutOfRange(Rational),

    #[error("term count must be at least 1")]
    ZeroLength,

    #[error("empty interval: lower end {lo} is not below upper end {hi}")]
    EmptyInterval {
        lo: Box<Rational>,
        hi: Box<Rational>,
    },

    #[error("term {} is {value}; every term must be at least 2", .index + 1)]
    TermTooSmall { index: usize, value: BigInt },

    #[error("term {} ({value}) is smaller than the previous term", .index + 1)]
    NotNondecreasing { index: usize, value: BigInt },

    #[error("term {} ({value}) is below a^2 - a + 1 = {min} for the previous term", .index + 1)]
    NotGreedyGrowth {
        index: usize,
        value: BigInt,
        min: BigInt,
    },

    #[error("reciprocal sum {sum} is not below theta = {theta}")]
    NonPositiveRemainder {
        theta: Box<Rational>,
        sum: Box<Rational>,
    },

    #[error("{p} does not divide {q} + 1")]
    NotDivisor { p: BigInt, q: BigInt },

    #[error("({a1}, {a2}) is not a greedy pair: need a2 >= {min}")]
    NotGreedyPair { a1: BigInt, a2: BigInt, min: BigInt },

    #[error("a1 must be at least 2, got {0}")]
    FirstTermTooSmall(BigInt),

    #[error("({x1}, {x2}) is not a competitor pair for a1 = {a1}")]
    NotCompetitor { a1: u64, x1: u64, x2: u64 },

    #[error("allowed denominator set is empty")]
    EmptyAllowedSet,

    #[error("allowed denominator {0} is below 2")]
    AllowedTooSmall(BigInt),

    #[error("no {n}-term underapproximation of {theta} exists with the allowed denominators")]
    NoRestrictedUnderapproximation { theta: Rational, n: usize },

    #[error("no {n}-tuple with terms in [2, {cap}] sums below {theta}")]
    NoTupleUnderCap { theta: Rational, n: usize, cap: u64 },

    #[error("enumeration with cap {cap} and {n} terms overflows 128-bit arithmetic")]
    CapTooLarge { cap: u64, n: usize },

    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },

    #[error(transparent)]
    Inequality(#[from] IneqError),
}

impl Error {
    /// Search produced no answer, as opposed to bad input.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            Error::NoRestrictedUnderapproximation { .. }
                | Error::NoTupleUnderCap { .. }
                | Error::BudgetExhausted { .. }
        )
    }
}

/// Precondition failures of the prefix-product inequality checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IneqError {
    #[error("sequence is empty")]
    Empty,

    #[error("entry {} is {value}; entries must be positive", .index + 1)]
    NonPositive { index: usize, value: Rational },

    #[error("sequence is not {direction} at entry {}", .index + 1)]
    NotMonotone {
        index: usize,
        direction: &'static str,
    },

    #[error("expected {expected} sequences, got {found}")]
    WrongDirection {
        expected: &'static str,
        found: &'static str,
    },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("sequences are identical")]
    Identical,

    #[error("prefix-product dominance fails at k = {k}")]
    DominanceFails { k: usize },

    #[error("entries agree at position {}; reduce to the shorter sequences first", .index + 1)]
    EqualEntry { index: usize },
}
