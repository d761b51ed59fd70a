//! Greedy and best n-term Egyptian fraction underapproximations.
//!
//! Everything is exact: rationals are arbitrary precision and no floating
//! point is used. The crate covers
//!
//! - [`greedy`]: the greedy algorithm, its interval criterion and the
//!   closed-form sequences for `p/q` with `p | q + 1`;
//! - [`optimal`]: exact best underapproximations with every tied optimum;
//! - [`twoterm`]: the complete classification of two-term competitors;
//! - [`ineq`]: the prefix-product dominance inequality and its smoothing step;
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod error;
pub mod greedy;
pub mod ineq;
pub mod optimal;
pub mod rationals;
pub mod twoterm;

pub use error::{Error, IneqError, Result};
pub use greedy::{
    closed_form_sequence, criterion_interval, greedy_remainder, greedy_sequence, is_greedy_for,
    limit_bounds, sylvester, DenomSequence, GreedySequence,
};
pub use optimal::{
    best_underapprox, best_underapprox_restricted, brute_force_best, eg_split_probe,
    optimality_report, BestResult, Classification, OptimalityReport, SearchOptions,
};
pub use rationals::{
    greedy_denominator, interval_contains, make_rational, HalfOpenInterval, Rational,
};
pub use twoterm::{
    classify_two_term, competitor_set, harmonic_interval, harmonic_subinterval, induced_a2, locate,
    Relation, TwoTermRecord,
};
