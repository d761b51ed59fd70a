//! Greedy underapproximation, the interval criterion for greedy sequences,
//! and the closed-form sequences for `p/q` with `p | q + 1` (Sylvester's
//! sequence being the case `p = q = 1`).

use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rationals::{greedy_denominator_unchecked, reciprocal_sum, HalfOpenInterval, Rational};

/// A nondecreasing sequence of denominators, each at least 2.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DenomSequence(Vec<BigInt>);

impl DenomSequence {
    pub fn new(terms: Vec<BigInt>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::ZeroLength);
        }
        let two = BigInt::from(2);
        if terms[0] < two {
            return Err(Error::TermTooSmall {
                index: 0,
                value: terms[0].clone(),
            });
        }
        for (i, w) in terms.windows(2).enumerate() {
            if w[1] < w[0] {
                return Err(Error::NotNondecreasing {
                    index: i + 1,
                    value: w[1].clone(),
                });
            }
        }
        Ok(DenomSequence(terms))
    }

    pub fn from_u64s(terms: &[u64]) -> Result<Self> {
        Self::new(terms.iter().map(|&t| BigInt::from(t)).collect())
    }

    /// Skips validation; the search only builds sequences that already hold.
    pub(crate) fn new_unchecked(terms: Vec<BigInt>) -> Self {
        debug_assert!(DenomSequence::new(terms.clone()).is_ok());
        DenomSequence(terms)
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_terms(self) -> Vec<BigInt> {
        self.0
    }

    pub fn reciprocal_sum(&self) -> Rational {
        reciprocal_sum(&self.0)
    }
}

impl Deref for DenomSequence {
    type Target = [BigInt];
    fn deref(&self) -> &[BigInt] {
        &self.0
    }
}

impl fmt::Display for DenomSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.0)
    }
}

/// A sequence with `a1 >= 2` and `a_{i+1} >= a_i^2 - a_i + 1`: exactly the
/// shape of an n-term greedy underapproximation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GreedySequence(Vec<BigInt>);

/// `a^2 - a + 1`, the least admissible successor of `a` in a greedy sequence.
pub fn min_successor(a: &BigInt) -> BigInt {
    a * a - a + 1u32
}

impl GreedySequence {
    pub fn new(terms: Vec<BigInt>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::ZeroLength);
        }
        if terms[0] < BigInt::from(2) {
            return Err(Error::TermTooSmall {
                index: 0,
                value: terms[0].clone(),
            });
        }
        for (i, w) in terms.windows(2).enumerate() {
            let min = min_successor(&w[0]);
            if w[1] < min {
                return Err(Error::NotGreedyGrowth {
                    index: i + 1,
                    value: w[1].clone(),
                    min,
                });
            }
        }
        Ok(GreedySequence(terms))
    }

    pub fn from_u64s(terms: &[u64]) -> Result<Self> {
        Self::new(terms.iter().map(|&t| BigInt::from(t)).collect())
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn reciprocal_sum(&self) -> Rational {
        reciprocal_sum(&self.0)
    }

    pub fn to_denom_sequence(&self) -> DenomSequence {
        DenomSequence(self.0.clone())
    }
}

impl Deref for GreedySequence {
    type Target = [BigInt];
    fn deref(&self) -> &[BigInt] {
        &self.0
    }
}

impl fmt::Display for GreedySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.0)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[BigInt]) -> fmt::Result {
    for (i, t) in terms.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

fn check_theta(theta: &Rational) -> Result<()> {
    if theta.in_unit_interval() {
        Ok(())
    } else {
        Err(Error::ThetaOutOfRange(theta.clone()))
    }
}

/// The n-term greedy underapproximation sequence of `theta`.
///
/// The remainder after each step is strictly positive because `1/G(r) < r`,
/// so the recursion never stalls.
pub fn greedy_sequence(theta: &Rational, n: usize) -> Result<GreedySequence> {
    check_theta(theta)?;
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    let mut remainder = theta.clone();
    let mut terms = Vec::with_capacity(n);
    for _ in 0..n {
        let a = greedy_denominator_unchecked(&remainder);
        remainder = remainder - Rational::recip_of(&a);
        terms.push(a);
    }
    Ok(GreedySequence(terms))
}

/// `theta - sum(1/seq_i)`, which must be strictly positive.
pub fn greedy_remainder(theta: &Rational, seq: &DenomSequence) -> Result<Rational> {
    let sum = seq.reciprocal_sum();
    let rem = theta - &sum;
    if rem.is_positive() {
        Ok(rem)
    } else {
        Err(Error::NonPositiveRemainder {
            theta: Box::new(theta.clone()),
            sum: Box::new(sum),
        })
    }
}

/// The set of `theta` whose greedy sequence of length `seq.len()` is `seq`:
/// `(sum 1/a_i, sum_{i<n} 1/a_i + 1/(a_n - 1)]`.
pub fn criterion_interval(seq: &GreedySequence) -> HalfOpenInterval {
    let (last, prefix) = seq.0.split_last().expect("greedy sequences are nonempty");
    let prefix_sum = reciprocal_sum(prefix);
    let lo = &prefix_sum + &Rational::recip_of(last);
    let hi = prefix_sum + Rational::recip_of(&(last - 1u32));
    HalfOpenInterval::new(lo, hi).expect("1/a < 1/(a-1) for a >= 2")
}

/// Whether `seq` is the greedy sequence of `theta`, decided by the interval
/// criterion rather than by running the algorithm.
pub fn is_greedy_for(seq: &GreedySequence, theta: &Rational) -> Result<bool> {
    check_theta(theta)?;
    Ok(criterion_interval(seq).contains(theta))
}

/// Interval bracketing the limit of every infinite greedy sequence that starts
/// with `seq`. Its width is `1/(a_n - 1) - 1/a_n`.
pub fn limit_bounds(seq: &GreedySequence) -> HalfOpenInterval {
    criterion_interval(seq)
}

/// First `n` terms of Sylvester's sequence, via `s_{i+1} = s_i^2 - s_i + 1`.
pub fn sylvester(n: usize) -> GreedySequence {
    let mut terms = Vec::with_capacity(n);
    let mut s = BigInt::from(2);
    for _ in 0..n {
        let next = min_successor(&s);
        terms.push(std::mem::replace(&mut s, next));
    }
    GreedySequence(terms)
}

/// Sylvester's sequence from its defining product recursion
/// `s_{i+1} = s_1 * ... * s_i + 1`. Kept separate so the two recursions can
/// be checked against each other.
pub fn sylvester_by_products(n: usize) -> Vec<BigInt> {
    let mut terms = Vec::with_capacity(n);
    let mut product = BigInt::one();
    for _ in 0..n {
        let s = &product + 1u32;
        product *= &s;
        terms.push(s);
    }
    terms
}

/// The infinite greedy sequence of `p/q` when `p | q + 1`, truncated to `n`
/// terms: `a_1 = (q + 1)/p` and `a_{k+1} = q * a_1 * ... * a_k + 1`.
pub fn closed_form_sequence(
    p: impl Into<BigInt>,
    q: impl Into<BigInt>,
    n: usize,
) -> Result<GreedySequence> {
    let (p, q) = (p.into(), q.into());
    if p <= BigInt::zero() || q <= BigInt::zero() || p > q {
        return Err(Error::ThetaOutOfRange(Rational::new(p, q)?));
    }
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    let (a1, rem) = (&q + 1u32).div_rem(&p);
    if !rem.is_zero() {
        return Err(Error::NotDivisor { p, q });
    }
    let mut terms = Vec::with_capacity(n);
    let mut product = BigInt::one();
    let mut next = a1;
    for _ in 0..n {
        product *= &next;
        let following = &q * &product + 1u32;
        terms.push(std::mem::replace(&mut next, following));
    }
    Ok(GreedySequence(terms))
}

/// `1/(q * a_1 * ... * a_k)`, the remainder of `p/q` after the first `k`
/// closed-form terms.
pub fn closed_form_remainder(q: &BigInt, prefix: &[BigInt]) -> Rational {
    let product: BigInt = prefix.iter().product();
    Rational::recip_of(&(q * product))
}
