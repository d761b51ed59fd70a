//! Two-term greedy versus best: harmonic intervals `I(a1)`, subintervals
//! `J(a1, a2)`, the finite competitor set `X(a1)` and the `a2` each
//! competitor induces.
//!
//! A pair `(x1, x2)` ties or beats the greedy pair `(a1, a2)` on part of
//! `J(a1, a2)` only if it lies in
//!
//! ```text
//! X(a1) = { (x1, x2) : a1 + 1 <= x1 <= 2*a1 - 1 <= x2 < a1*x1 / (x1 - a1) }
//! ```
//!
//! and then `a2 = ceil((1/x1 + 1/x2 - 1/a1)^-1)`, with a tie exactly when the
//! inverse is an integer.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::greedy::{greedy_sequence, min_successor};
use crate::rationals::{HalfOpenInterval, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `1/x1 + 1/x2 = 1/a1 + 1/a2`.
    Tie,
    /// `1/a1 + 1/a2 < 1/x1 + 1/x2`.
    StrictImprovement,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Tie => "TIE",
            Relation::StrictImprovement => "STRICT_IMPROVEMENT",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One competitor `(x1, x2)` against the greedy pairs starting with `a1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermRecord {
    pub a1: u64,
    pub x1: u64,
    pub x2: u64,
    pub a2: u64,
    pub relation: Relation,
    /// `a2 >= a1^2 - a1 + 1`, i.e. `(a1, a2)` really is a greedy pair.
    pub greedy_valid: bool,
    /// Where `(x1, x2)` strictly beats the greedy pair: present only for
    /// valid strict improvements.
    pub improvement_interval: Option<HalfOpenInterval>,
}

impl TwoTermRecord {
    /// `J(a1, a2)`, or `None` when the pair is not greedy.
    pub fn greedy_interval(&self) -> Option<HalfOpenInterval> {
        harmonic_subinterval(self.a1, self.a2).ok()
    }
}

fn big(x: impl Into<BigInt>) -> BigInt {
    x.into()
}

/// `I(a1) = (1/a1, 1/(a1 - 1)]`.
pub fn harmonic_interval(a1: impl Into<BigInt>) -> Result<HalfOpenInterval> {
    let a1 = a1.into();
    if a1 < big(2) {
        return Err(Error::FirstTermTooSmall(a1));
    }
    HalfOpenInterval::new(Rational::recip_of(&a1), Rational::recip_of(&(&a1 - 1u32)))
}

/// `J(a1, a2) = (1/a1 + 1/a2, 1/a1 + 1/(a2 - 1)]`, the set of `theta` whose
/// two-term greedy sequence is `(a1, a2)`.
pub fn harmonic_subinterval(
    a1: impl Into<BigInt>,
    a2: impl Into<BigInt>,
) -> Result<HalfOpenInterval> {
    let (a1, a2) = (a1.into(), a2.into());
    if a1 < big(2) {
        return Err(Error::FirstTermTooSmall(a1));
    }
    let min = min_successor(&a1);
    if a2 < min {
        return Err(Error::NotGreedyPair { a1, a2, min });
    }
    let head = Rational::recip_of(&a1);
    let lo = &head + &Rational::recip_of(&a2);
    let hi = head + Rational::recip_of(&(a2 - 1u32));
    HalfOpenInterval::new(lo, hi)
}

/// The pair `(a1, a2)` with `theta` in `J(a1, a2)`: two greedy steps.
pub fn locate(theta: &Rational) -> Result<(BigInt, BigInt)> {
    let g = greedy_sequence(theta, 2)?;
    Ok((g.terms()[0].clone(), g.terms()[1].clone()))
}

fn check_a1(a1: u64) -> Result<()> {
    if a1 < 2 {
        Err(Error::FirstTermTooSmall(big(a1)))
    } else {
        Ok(())
    }
}

/// Whether `(x1, x2)` is in `X(a1)`.
pub fn in_competitor_set(a1: u64, x1: u64, x2: u64) -> bool {
    let (a, x, y) = (u128::from(a1), u128::from(x1), u128::from(x2));
    a >= 2 && a < x && x < 2 * a && 2 * a - 1 <= y && y * (x - a) < a * x
}

/// All of `X(a1)`, ordered by `(x1, x2)`.
pub fn competitor_set(a1: u64) -> Result<Vec<(u64, u64)>> {
    check_a1(a1)?;
    let mut out = Vec::new();
    for x1 in a1 + 1..=2 * a1 - 1 {
        let mut x2 = 2 * a1 - 1;
        while in_competitor_set(a1, x1, x2) {
            out.push((x1, x2));
            x2 += 1;
        }
    }
    Ok(out)
}

/// `|X(a1)|` by counting: for each `x1` there are
/// `ceil(a1*x1 / (x1 - a1)) - 2*a1 + 1` admissible `x2`.
pub fn competitor_count(a1: u64) -> Result<u64> {
    check_a1(a1)?;
    Ok((a1 + 1..=2 * a1 - 1)
        .map(|x1| {
            let (num, den) = (a1 * x1, x1 - a1);
            num.div_ceil(den) - 2 * a1 + 1
        })
        .sum())
}

/// `a2 = ceil((1/x1 + 1/x2 - 1/a1)^-1)` and whether the inverse is exact.
pub fn induced_a2(a1: u64, x1: u64, x2: u64) -> Result<(u64, bool)> {
    if !in_competitor_set(a1, x1, x2) {
        return Err(Error::NotCompetitor { a1, x1, x2 });
    }
    // (1/x1 + 1/x2 - 1/a1)^-1 = a1*x1*x2 / (a1*(x1 + x2) - x1*x2)
    let (a, x, y) = (u128::from(a1), u128::from(x1), u128::from(x2));
    let num = a * x * y;
    let den = a * (x + y) - x * y;
    let a2 = num.div_ceil(den);
    let a2 = u64::try_from(a2).expect("a2 <= a1*x1*x2 fits when the inputs do");
    Ok((a2, num % den == 0))
}

/// One record per element of `X(a1)`, in `(x1, x2)` order.
pub fn classify_two_term(a1: u64) -> Result<Vec<TwoTermRecord>> {
    let min_a2 = a1 * a1 - a1 + 1;
    competitor_set(a1)?
        .into_iter()
        .map(|(x1, x2)| {
            let (a2, tie) = induced_a2(a1, x1, x2)?;
            let greedy_valid = a2 >= min_a2;
            let relation = if tie {
                Relation::Tie
            } else {
                Relation::StrictImprovement
            };
            let improvement_interval = if !tie && greedy_valid {
                let lo = Rational::recip_of(&big(x1)) + Rational::recip_of(&big(x2));
                let hi = Rational::recip_of(&big(a1)) + Rational::recip_of(&big(a2 - 1));
                Some(HalfOpenInterval::new(lo, hi)?)
            } else {
                None
            };
            Ok(TwoTermRecord {
                a1,
                x1,
                x2,
                a2,
                relation,
                greedy_valid,
                improvement_interval,
            })
        })
        .collect()
}

/// Records grouped by induced `a2`, groups ascending, record order kept
/// within each group.
pub fn group_by_a2(records: &[TwoTermRecord]) -> Vec<(u64, Vec<&TwoTermRecord>)> {
    let mut keys: Vec<u64> = records.iter().map(|r| r.a2).collect();
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter()
        .map(|a2| (a2, records.iter().filter(|r| r.a2 == a2).collect()))
        .collect()
}

pub const CSV_HEADER: [&str; 8] = [
    "a1",
    "x1",
    "x2",
    "a2",
    "relation",
    "greedy_valid",
    "interval_lo",
    "interval_hi",
];

/// CSV with [`CSV_HEADER`] columns, one row per record in the given order.
/// The interval columns are empty when there is no improvement interval.
pub fn to_csv(records: &[TwoTermRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in records {
        let (lo, hi) = match &r.improvement_interval {
            Some(iv) => (iv.lo().to_string(), iv.hi().to_string()),
            None => (String::new(), String::new()),
        };
        w.write_record([
            r.a1.to_string(),
            r.x1.to_string(),
            r.x2.to_string(),
            r.a2.to_string(),
            r.relation.to_string(),
            r.greedy_valid.to_string(),
            lo,
            hi,
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
}
