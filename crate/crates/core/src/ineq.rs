//! Prefix-product dominance and the sum inequalities it forces.
//!
//! If `(u_i)` and `(v_i)` are distinct positive sequences with
//! `v_1 * ... * v_k <= u_1 * ... * u_k` for every `k`, then
//!
//! - both decreasing: `sum v_i < sum u_i`;
//! - both increasing: `sum 1/u_i < sum 1/v_i`.
//!
//! The plain-sum form fails for increasing sequences: `v = (1, 7)`,
//! `u = (2, 4)` satisfy dominance yet `8 > 6`.
//!
//! [`smoothing_step`] is the transform driving the inductive proof of the
//! decreasing case; it is exposed so its invariants can be tested directly.
//! Monotonicity here is non-strict.

use std::fmt;

use crate::error::IneqError;
use crate::rationals::Rational;

type Result<T> = std::result::Result<T, IneqError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Increasing => "increasing",
            Direction::Decreasing => "decreasing",
        }
    }
}

/// Nonempty sequence of positive rationals with a validated direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveSequence {
    values: Vec<Rational>,
    direction: Direction,
}

impl PositiveSequence {
    pub fn new(values: Vec<Rational>, direction: Direction) -> Result<Self> {
        if values.is_empty() {
            return Err(IneqError::Empty);
        }
        if let Some((index, value)) = values.iter().enumerate().find(|(_, v)| !v.is_positive()) {
            return Err(IneqError::NonPositive {
                index,
                value: value.clone(),
            });
        }
        let ordered = |w: &[Rational]| match direction {
            Direction::Increasing => w[0] <= w[1],
            Direction::Decreasing => w[0] >= w[1],
        };
        if let Some(i) = values.windows(2).position(|w| !ordered(w)) {
            return Err(IneqError::NotMonotone {
                index: i + 1,
                direction: direction.as_str(),
            });
        }
        Ok(PositiveSequence { values, direction })
    }

    pub fn increasing(values: Vec<Rational>) -> Result<Self> {
        Self::new(values, Direction::Increasing)
    }

    pub fn decreasing(values: Vec<Rational>) -> Result<Self> {
        Self::new(values, Direction::Decreasing)
    }

    pub fn from_integers(values: &[i64], direction: Direction) -> Result<Self> {
        Self::new(
            values.iter().map(|&v| Rational::from(v)).collect(),
            direction,
        )
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sum(&self) -> Rational {
        self.values.iter().fold(Rational::zero(), |acc, v| acc + v)
    }

    pub fn reciprocal_sum(&self) -> Rational {
        self.values.iter().fold(Rational::zero(), |acc, v| {
            acc + v.recip().expect("entries are positive")
        })
    }
}

impl fmt::Display for PositiveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// First `k` (1-based) where `v_1...v_k > u_1...u_k`, if any.
pub fn dominance_failure(v: &PositiveSequence, u: &PositiveSequence) -> Result<Option<usize>> {
    if v.len() != u.len() {
        return Err(IneqError::LengthMismatch(v.len(), u.len()));
    }
    let mut pv = Rational::one();
    let mut pu = Rational::one();
    for (k, (a, b)) in v.values.iter().zip(&u.values).enumerate() {
        pv = pv * a;
        pu = pu * b;
        if pv > pu {
            return Ok(Some(k + 1));
        }
    }
    Ok(None)
}

/// Every prefix product of `v` is at most the matching prefix product of `u`.
pub fn prefix_product_dominates(v: &PositiveSequence, u: &PositiveSequence) -> Result<bool> {
    Ok(dominance_failure(v, u)?.is_none())
}

/// A pair of sequences for which the claimed strict inequality failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub u: PositiveSequence,
    pub v: PositiveSequence,
}

/// Outcome of checking `smaller < larger`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    /// The side claimed to be smaller.
    pub smaller: Rational,
    pub larger: Rational,
    /// Present only if `smaller < larger` failed.
    pub counterexample: Option<Counterexample>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn check_hypotheses(u: &PositiveSequence, v: &PositiveSequence, expected: Direction) -> Result<()> {
    for s in [u, v] {
        if s.direction != expected {
            return Err(IneqError::WrongDirection {
                expected: expected.as_str(),
                found: s.direction.as_str(),
            });
        }
    }
    if u.len() != v.len() {
        return Err(IneqError::LengthMismatch(u.len(), v.len()));
    }
    if u.values == v.values {
        return Err(IneqError::Identical);
    }
    if let Some(k) = dominance_failure(v, u)? {
        return Err(IneqError::DominanceFails { k });
    }
    Ok(())
}

fn verdict(
    u: &PositiveSequence,
    v: &PositiveSequence,
    smaller: Rational,
    larger: Rational,
) -> Verdict {
    let counterexample = (smaller >= larger).then(|| Counterexample {
        u: u.clone(),
        v: v.clone(),
    });
    Verdict {
        smaller,
        larger,
        counterexample,
    }
}

/// Increasing case: checks `sum 1/u_i < sum 1/v_i` given that `u`
/// dominates `v` in prefix products.
pub fn check_reciprocal_inequality(u: &PositiveSequence, v: &PositiveSequence) -> Result<Verdict> {
    check_hypotheses(u, v, Direction::Increasing)?;
    Ok(verdict(u, v, u.reciprocal_sum(), v.reciprocal_sum()))
}

/// Decreasing case: checks `sum v_i < sum u_i` given that `u` dominates `v`
/// in prefix products.
pub fn check_sum_inequality_decreasing(
    u: &PositiveSequence,
    v: &PositiveSequence,
) -> Result<Verdict> {
    check_hypotheses(u, v, Direction::Decreasing)?;
    Ok(verdict(u, v, v.sum(), u.sum()))
}

/// Result of one smoothing step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Smoothing {
    /// `v_i < u_i` everywhere, so the sum inequality is immediate.
    Componentwise,
    Step {
        /// 0-based index of the first `u_j < v_j`; always at least 1.
        pivot: usize,
        /// `min(u[pivot-1] / v[pivot-1], v[pivot] / u[pivot])`, strictly above 1.
        t: Rational,
        /// `u` with `u[pivot-1]` divided by `t` and `u[pivot]` multiplied by it.
        sequence: PositiveSequence,
    },
}

/// One step of the smoothing transform on decreasing `u`, `v` that already
/// satisfy the dominance hypothesis and differ in every coordinate.
///
/// The result is decreasing, still dominates `v`, agrees with `v` at
/// `pivot - 1` or `pivot`, and has a strictly smaller plain sum than `u`.
pub fn smoothing_step(u: &PositiveSequence, v: &PositiveSequence) -> Result<Smoothing> {
    check_hypotheses(u, v, Direction::Decreasing)?;
    if let Some(index) = u.values.iter().zip(&v.values).position(|(a, b)| a == b) {
        return Err(IneqError::EqualEntry { index });
    }
    let Some(pivot) = u.values.iter().zip(&v.values).position(|(a, b)| a < b) else {
        return Ok(Smoothing::Componentwise);
    };
    // dominance at k = 1 with u_1 != v_1 forces v_1 < u_1
    debug_assert!(pivot >= 1);
    let (uh, ul) = (&u.values[pivot - 1], &u.values[pivot]);
    let (vh, vl) = (&v.values[pivot - 1], &v.values[pivot]);
    let t = (uh / vh).min(vl / ul);
    let mut values = u.values.clone();
    values[pivot - 1] = uh / &t;
    values[pivot] = ul * &t;
    let sequence = PositiveSequence::decreasing(values)?;
    Ok(Smoothing::Step { pivot, t, sequence })
}
