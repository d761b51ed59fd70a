//! Best n-term Egyptian underapproximations by exact branch-and-bound.
//!
//! The search walks nondecreasing denominator sequences depth first. At a node
//! with prefix sum `s`, `k` terms left, incumbent value `B` and previous term
//! `v`, the next term `x` ranges over
//!
//! ```text
//! max(v, G(theta - s)) <= x <= floor(k / (B - s))
//! ```
//!
//! The lower end keeps the prefix extendable; the upper end drops any branch
//! whose best conceivable tail `k/x` cannot reach `B`. The bound is
//! non-strict so every tied optimum survives, and the last term is picked in
//! closed form. The incumbent starts at the greedy value.
//!
//! Each first term is searched as its own branch, seeded with the greedy
//! value and that branch's greedy completion. Branches share nothing, so
//! results and node counts are the same for any thread count.

use std::cmp::Ordering;
use std::fmt;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering as AtomicOrdering};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::greedy::{greedy_sequence, DenomSequence, GreedySequence};
use crate::rationals::Rational;

/// Knobs for [`best_underapprox_with`].
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Hard cap on visited nodes; `None` means unlimited.
    pub budget: Option<u64>,
    /// Threads sharing the first-term branches. Output does not depend on it.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: None,
            threads: 1,
        }
    }
}

/// Result of an exact best-underapproximation search.
///
/// Equality ignores `nodes_explored`.
#[derive(Clone, Debug)]
pub struct BestResult {
    pub value: Rational,
    /// Every optimal sequence, sorted lexicographically.
    pub witnesses: Vec<DenomSequence>,
    /// The greedy sequence the search started from.
    pub greedy: DenomSequence,
    pub greedy_value: Rational,
    pub greedy_is_best: bool,
    pub unique_best: bool,
    pub nodes_explored: u64,
}

impl PartialEq for BestResult {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
            && self.witnesses == other.witnesses
            && self.greedy == other.greedy
            && self.greedy_value == other.greedy_value
            && self.greedy_is_best == other.greedy_is_best
            && self.unique_best == other.unique_best
    }
}

impl Eq for BestResult {}

impl BestResult {
    fn assemble(
        value: Rational,
        mut witnesses: Vec<Vec<BigInt>>,
        greedy: Vec<BigInt>,
        nodes_explored: u64,
    ) -> Self {
        witnesses.sort();
        witnesses.dedup();
        let greedy_value = crate::rationals::reciprocal_sum(&greedy);
        BestResult {
            greedy_is_best: greedy_value == value,
            unique_best: witnesses.len() == 1,
            witnesses: witnesses
                .into_iter()
                .map(DenomSequence::new_unchecked)
                .collect(),
            greedy: DenomSequence::new_unchecked(greedy),
            greedy_value,
            value,
            nodes_explored,
        }
    }

    pub fn is_witness(&self, seq: &[BigInt]) -> bool {
        self.witnesses.iter().any(|w| w.terms() == seq)
    }
}

/// Denominators the search may draw from.
#[derive(Clone, Copy)]
enum Domain<'a> {
    All,
    /// Sorted, deduplicated, every entry >= 2.
    Allowed(&'a [BigInt]),
}

/// Position within a [`Domain`]; advances to the next larger denominator.
enum Cursor {
    Int(BigInt),
    Index(usize),
}

impl<'a> Domain<'a> {
    /// Smallest sum `j` further terms can contribute.
    fn min_tail(&self, j: usize) -> Rational {
        match self {
            Domain::All => Rational::zero(),
            Domain::Allowed(a) => {
                let largest = a.last().expect("allowed set is nonempty");
                Rational::new(j, largest.clone()).expect("nonzero")
            }
        }
    }

    fn first_at_least(&self, min: BigInt) -> Option<Cursor> {
        match self {
            Domain::All => Some(Cursor::Int(min)),
            Domain::Allowed(a) => {
                let i = a.partition_point(|x| *x < min);
                (i < a.len()).then_some(Cursor::Index(i))
            }
        }
    }

    fn value(&self, c: &Cursor) -> BigInt {
        match (self, c) {
            (_, Cursor::Int(x)) => x.clone(),
            (Domain::Allowed(a), Cursor::Index(i)) => a[*i].clone(),
            (Domain::All, Cursor::Index(_)) => {
                unreachable!("index cursor over unrestricted domain")
            }
        }
    }

    fn advance(&self, c: &mut Cursor) -> bool {
        match (self, c) {
            (_, Cursor::Int(x)) => {
                *x += 1u32;
                true
            }
            (Domain::Allowed(a), Cursor::Index(i)) => {
                *i += 1;
                *i < a.len()
            }
            (Domain::All, Cursor::Index(_)) => {
                unreachable!("index cursor over unrestricted domain")
            }
        }
    }
}

#[derive(Clone)]
struct Incumbent {
    value: Rational,
    witnesses: Vec<Vec<BigInt>>,
}

impl Incumbent {
    fn offer(&mut self, value: Rational, seq: &[BigInt]) {
        match value.cmp(&self.value) {
            Ordering::Greater => {
                self.value = value;
                self.witnesses.clear();
                self.witnesses.push(seq.to_vec());
            }
            Ordering::Equal => self.witnesses.push(seq.to_vec()),
            Ordering::Less => {}
        }
    }

    fn merge(&mut self, other: Incumbent) {
        match other.value.cmp(&self.value) {
            Ordering::Greater => *self = other,
            Ordering::Equal => self.witnesses.extend(other.witnesses),
            Ordering::Less => {}
        }
    }
}

struct Search<'a> {
    theta: &'a Rational,
    domain: Domain<'a>,
    best: Incumbent,
    prefix: Vec<BigInt>,
    nodes: &'a AtomicU64,
    budget: Option<u64>,
}

impl<'a> Search<'a> {
    fn tick(&self) -> Result<()> {
        let visited = self.nodes.fetch_add(1, AtomicOrdering::Relaxed) + 1;
        match self.budget {
            Some(budget) if visited > budget => Err(Error::BudgetExhausted { budget }),
            _ => Ok(()),
        }
    }

    /// Smallest admissible next term given prefix sum `s` and `k` terms left
    /// (counting the one being chosen).
    fn first_candidate(&self, s: &Rational, k: usize) -> Option<Cursor> {
        let slack = self.theta - s - self.domain.min_tail(k - 1);
        if !slack.is_positive() {
            return None;
        }
        // least x with 1/x < slack
        let bound = slack.denom().div_floor(slack.numer()) + 1u32;
        let floor = self
            .prefix
            .last()
            .cloned()
            .unwrap_or_else(|| BigInt::from(2));
        self.domain.first_at_least(bound.max(floor))
    }

    /// Extends the current prefix by always taking the smallest admissible
    /// term, and offers the result. Returns it, or `None` if the domain
    /// cannot complete the prefix.
    fn complete_greedily(&mut self, s: &Rational, k: usize) -> Option<Vec<BigInt>> {
        let depth = self.prefix.len();
        let mut sum = s.clone();
        for left in (1..=k).rev() {
            let Some(c) = self.first_candidate(&sum, left) else {
                self.prefix.truncate(depth);
                return None;
            };
            let x = self.domain.value(&c);
            sum = sum + Rational::recip_of(&x);
            self.prefix.push(x);
        }
        let full = self.prefix.clone();
        self.best.offer(sum, &full);
        self.prefix.truncate(depth);
        Some(full)
    }

    /// `x <= k / (B - s)`, evaluated without division.
    fn within_bound(&self, s: &Rational, k: usize, x: &BigInt) -> bool {
        let gap = &self.best.value - s;
        gap.numer() * x <= gap.denom() * BigInt::from(k)
    }

    fn visit(&mut self, s: &Rational, k: usize) -> Result<()> {
        self.tick()?;
        let Some(mut cursor) = self.first_candidate(s, k) else {
            return Ok(());
        };
        if k == 1 {
            let x = self.domain.value(&cursor);
            let total = s + &Rational::recip_of(&x);
            self.prefix.push(x);
            self.best.offer(total, &self.prefix);
            self.prefix.pop();
            return Ok(());
        }
        if self.best.value <= *s {
            // every completion beats B; raise B before bounding
            self.complete_greedily(s, k);
        }
        if let (2, Domain::All, Cursor::Int(x)) = (k, self.domain, &cursor) {
            return self.visit_pair(s, x.clone());
        }
        loop {
            let x = self.domain.value(&cursor);
            if !self.within_bound(s, k, &x) {
                break;
            }
            let next = s + &Rational::recip_of(&x);
            self.prefix.push(x);
            let outcome = self.visit(&next, k - 1);
            self.prefix.pop();
            outcome?;
            if !self.domain.advance(&mut cursor) {
                break;
            }
        }
        Ok(())
    }
}

impl Search<'_> {
    /// Last two terms over the unrestricted domain. The final term is forced
    /// once `x` is fixed, so each candidate costs a handful of integer
    /// products instead of reduced rational sums. Node accounting matches
    /// the generic loop: one tick per forced leaf.
    fn visit_pair(&mut self, s: &Rational, mut x: BigInt) -> Result<()> {
        let deficit = self.theta - s;
        let (a, b) = (deficit.numer().clone(), deficit.denom().clone());
        let two = BigInt::from(2);
        let mut gap = &self.best.value - s;
        let mut slack = self.theta - &self.best.value;
        loop {
            if gap.numer() * &x > gap.denom() * &two {
                return Ok(());
            }
            self.tick()?;
            // deficit after 1/x is c/d > 0 because 1/x < a/b
            let c = &a * &x - &b;
            let d = &b * &x;
            let y = (d.div_floor(&c) + 1u32).max(x.clone());
            // final deficit e/f; keep it if no worse than the incumbent's
            let e = &c * &y - &d;
            let f = &d * &y;
            if e * slack.denom() <= slack.numer() * f {
                let total = s + &Rational::recip_of(&x) + Rational::recip_of(&y);
                self.prefix.push(x.clone());
                self.prefix.push(y);
                self.best.offer(total, &self.prefix);
                self.prefix.truncate(self.prefix.len() - 2);
                gap = &self.best.value - s;
                slack = self.theta - &self.best.value;
            }
            x += 1u32;
        }
    }
}

fn check_inputs(theta: &Rational, n: usize) -> Result<()> {
    if !theta.in_unit_interval() {
        return Err(Error::ThetaOutOfRange(theta.clone()));
    }
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    Ok(())
}

fn run_search(
    theta: &Rational,
    n: usize,
    domain: Domain<'_>,
    options: &SearchOptions,
) -> Result<Option<BestResult>> {
    let nodes = AtomicU64::new(0);
    let mut search = Search {
        theta,
        domain,
        best: Incumbent {
            value: Rational::zero(),
            witnesses: Vec::new(),
        },
        prefix: Vec::with_capacity(n),
        nodes: &nodes,
        budget: options.budget,
    };
    let Some(greedy) = search.complete_greedily(&Rational::zero(), n) else {
        return Ok(None);
    };
    if n == 1 {
        search.visit(&Rational::zero(), n)?;
        let explored = nodes.load(AtomicOrdering::Relaxed);
        return Ok(Some(BestResult::assemble(
            search.best.value,
            search.best.witnesses,
            greedy,
            explored,
        )));
    }

    // Each first term is an independent branch whose starting incumbent
    // depends only on that term, so the node count does not depend on the
    // order branches run in or on the number of threads.
    search.tick()?;
    let zero = Rational::zero();
    let mut roots = Vec::new();
    if let Some(mut c) = search.first_candidate(&zero, n) {
        loop {
            let x = domain.value(&c);
            if !search.within_bound(&zero, n, &x) {
                break;
            }
            roots.push(x);
            if !domain.advance(&mut c) {
                break;
            }
        }
    }
    let seed = search.best;
    let explore = |x: &BigInt| -> Result<Incumbent> {
        let mut branch = Search {
            theta,
            domain,
            best: seed.clone(),
            prefix: vec![x.clone()],
            nodes: &nodes,
            budget: options.budget,
        };
        let s = Rational::recip_of(x);
        branch.complete_greedily(&s, n - 1);
        if branch.within_bound(&zero, n, x) {
            branch.visit(&s, n - 1)?;
        }
        Ok(branch.best)
    };

    let mut best = seed.clone();
    if options.threads <= 1 {
        for x in &roots {
            best.merge(explore(x)?);
        }
    } else {
        let next_root = AtomicUsize::new(0);
        let results: Mutex<Vec<Result<Incumbent>>> = Mutex::new(Vec::new());
        std::thread::scope(|scope| {
            for _ in 0..options.threads {
                scope.spawn(|| loop {
                    let i = next_root.fetch_add(1, AtomicOrdering::Relaxed);
                    let Some(x) = roots.get(i) else { break };
                    let outcome = explore(x);
                    let failed = outcome.is_err();
                    results.lock().unwrap().push(outcome);
                    if failed {
                        // stop handing out work; other workers drain quickly
                        next_root.store(roots.len(), AtomicOrdering::Relaxed);
                        break;
                    }
                });
            }
        });
        for outcome in results.into_inner().unwrap() {
            best.merge(outcome?);
        }
    }
    let explored = nodes.load(AtomicOrdering::Relaxed);
    Ok(Some(BestResult::assemble(
        best.value,
        best.witnesses,
        greedy,
        explored,
    )))
}

/// `u_n(theta)` with every optimal witness, using default options.
pub fn best_underapprox(theta: &Rational, n: usize) -> Result<BestResult> {
    best_underapprox_with(theta, n, &SearchOptions::default())
}

pub fn best_underapprox_with(
    theta: &Rational,
    n: usize,
    options: &SearchOptions,
) -> Result<BestResult> {
    check_inputs(theta, n)?;
    let result = run_search(theta, n, Domain::All, options)?;
    Ok(result.expect("unrestricted greedy always completes"))
}

/// Best n-term underapproximation using only denominators from `allowed`
/// (repeats permitted).
///
/// The reported greedy sequence takes, at each step, the smallest allowed
/// denominator that still leaves room for the remaining terms.
pub fn best_underapprox_restricted(
    theta: &Rational,
    n: usize,
    allowed: &[BigInt],
) -> Result<BestResult> {
    best_underapprox_restricted_with(theta, n, allowed, &SearchOptions::default())
}

pub fn best_underapprox_restricted_with(
    theta: &Rational,
    n: usize,
    allowed: &[BigInt],
    options: &SearchOptions,
) -> Result<BestResult> {
    check_inputs(theta, n)?;
    if allowed.is_empty() {
        return Err(Error::EmptyAllowedSet);
    }
    if let Some(bad) = allowed.iter().find(|x| **x < BigInt::from(2)) {
        return Err(Error::AllowedTooSmall(bad.clone()));
    }
    let mut sorted = allowed.to_vec();
    sorted.sort();
    sorted.dedup();
    run_search(theta, n, Domain::Allowed(&sorted), options)?.ok_or_else(|| {
        Error::NoRestrictedUnderapproximation {
            theta: theta.clone(),
            n,
        }
    })
}

// ---------------------------------------------------------------------------
// Exhaustive oracle

/// Exact fraction over `u128` for the oracle; every operation is checked.
#[derive(Clone, Copy, Debug)]
struct SmallFrac {
    num: u128,
    den: u128,
}

impl SmallFrac {
    fn add_recip(self, x: u128) -> Option<SmallFrac> {
        let num = self.num.checked_mul(x)?.checked_add(self.den)?;
        let den = self.den.checked_mul(x)?;
        let g = num.gcd(&den);
        Some(SmallFrac {
            num: num / g,
            den: den / g,
        })
    }

    /// `None` on overflow.
    fn cmp(self, other: SmallFrac) -> Option<Ordering> {
        let l = self.num.checked_mul(other.den)?;
        let r = other.num.checked_mul(self.den)?;
        Some(l.cmp(&r))
    }
}

struct Oracle {
    theta: SmallFrac,
    cap: u128,
    n: usize,
    best: Option<(SmallFrac, Vec<Vec<u128>>)>,
    visited: u64,
    overflow: bool,
}

impl Oracle {
    fn offer(&mut self, sum: SmallFrac, seq: &[u128]) {
        let Some((value, witnesses)) = &mut self.best else {
            self.best = Some((sum, vec![seq.to_vec()]));
            return;
        };
        match sum.cmp(*value) {
            None => self.overflow = true,
            Some(Ordering::Greater) => {
                *value = sum;
                witnesses.clear();
                witnesses.push(seq.to_vec());
            }
            Some(Ordering::Equal) => witnesses.push(seq.to_vec()),
            Some(Ordering::Less) => {}
        }
    }

    /// Enumerates every term `x` in `[prev, cap]` at this position. The final
    /// position contributes only its smallest feasible `x`, since larger ones
    /// give strictly smaller sums with the same prefix.
    fn walk(&mut self, prefix: &mut Vec<u128>, sum: SmallFrac) {
        if self.overflow {
            return;
        }
        let start = prefix.last().copied().unwrap_or(2);
        if prefix.len() + 1 == self.n {
            // theta - sum as a fraction; smallest x with 1/x < that
            let (Some(a), Some(b)) = (
                self.theta.num.checked_mul(sum.den),
                sum.num.checked_mul(self.theta.den),
            ) else {
                self.overflow = true;
                return;
            };
            if a <= b {
                return;
            }
            let Some(den) = self.theta.den.checked_mul(sum.den) else {
                self.overflow = true;
                return;
            };
            let x = (den / (a - b) + 1).max(start);
            self.visited += 1;
            if x <= self.cap {
                let Some(total) = sum.add_recip(x) else {
                    self.overflow = true;
                    return;
                };
                prefix.push(x);
                self.offer(total, prefix);
                prefix.pop();
            }
            return;
        }
        for x in start..=self.cap {
            self.visited += 1;
            let Some(next) = sum.add_recip(x) else {
                self.overflow = true;
                return;
            };
            match next.cmp(self.theta) {
                None => {
                    self.overflow = true;
                    return;
                }
                // a prefix already at theta cannot be completed
                Some(Ordering::Less) => {}
                Some(_) => continue,
            }
            prefix.push(x);
            self.walk(prefix, next);
            prefix.pop();
        }
    }
}

/// Exhaustive search over all nondecreasing `n`-tuples with terms in
/// `[2, cap]`, in 128-bit integer arithmetic. Independent of the
/// branch-and-bound; used to cross-check it. Correct only when `cap` is at
/// least the largest term of every optimal tuple.
pub fn brute_force_best(theta: &Rational, n: usize, cap: u64) -> Result<BestResult> {
    check_inputs(theta, n)?;
    let too_large = || Error::CapTooLarge { cap, n };
    let theta_small = SmallFrac {
        num: theta.numer().to_u128().ok_or_else(too_large)?,
        den: theta.denom().to_u128().ok_or_else(too_large)?,
    };
    let mut oracle = Oracle {
        theta: theta_small,
        cap: u128::from(cap),
        n,
        best: None,
        visited: 0,
        overflow: false,
    };
    oracle.walk(&mut Vec::with_capacity(n), SmallFrac { num: 0, den: 1 });
    if oracle.overflow {
        return Err(too_large());
    }
    let Some((value, witnesses)) = oracle.best else {
        return Err(Error::NoTupleUnderCap {
            theta: theta.clone(),
            n,
            cap,
        });
    };
    let value = Rational::new(value.num, value.den)?;
    let witnesses = witnesses
        .into_iter()
        .map(|w| w.into_iter().map(BigInt::from).collect())
        .collect();
    let greedy = greedy_sequence(theta, n)?.terms().to_vec();
    Ok(BestResult::assemble(
        value,
        witnesses,
        greedy,
        oracle.visited,
    ))
}

/// `floor(n / (theta - greedy n-term sum))`: a term cap for
/// [`brute_force_best`].
pub fn oracle_cap(theta: &Rational, n: usize) -> Result<BigInt> {
    let greedy = greedy_sequence(theta, n)?;
    let deficit = theta - &greedy.reciprocal_sum();
    Ok((Rational::from_integer(BigInt::from(n)) / deficit).floor())
}

// ---------------------------------------------------------------------------
// Reports

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    GreedyUniqueBest,
    GreedyTiedBest,
    GreedyNotBest,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::GreedyUniqueBest => "GREEDY_UNIQUE_BEST",
            Classification::GreedyTiedBest => "GREEDY_TIED_BEST",
            Classification::GreedyNotBest => "GREEDY_NOT_BEST",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct OptimalityReport {
    pub theta: Rational,
    pub n: usize,
    pub greedy: GreedySequence,
    pub greedy_value: Rational,
    pub best: BestResult,
    pub classification: Classification,
}

pub fn optimality_report(theta: &Rational, n: usize) -> Result<OptimalityReport> {
    optimality_report_with(theta, n, &SearchOptions::default())
}

pub fn optimality_report_with(
    theta: &Rational,
    n: usize,
    options: &SearchOptions,
) -> Result<OptimalityReport> {
    let best = best_underapprox_with(theta, n, options)?;
    let greedy = greedy_sequence(theta, n)?;
    let classification = if !best.greedy_is_best {
        Classification::GreedyNotBest
    } else if best.unique_best {
        Classification::GreedyUniqueBest
    } else {
        Classification::GreedyTiedBest
    };
    Ok(OptimalityReport {
        theta: theta.clone(),
        n,
        greedy_value: greedy.reciprocal_sum(),
        greedy,
        best,
        classification,
    })
}

/// A decimal integer as an exact JSON number.
pub(crate) fn json_int(x: &BigInt) -> Value {
    Value::Number(
        x.to_string()
            .parse()
            .expect("decimal integer is valid JSON"),
    )
}

pub(crate) fn json_ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(json_int).collect())
}

impl OptimalityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "theta": self.theta.to_string(),
            "n": self.n,
            "value": self.best.value.to_string(),
            "witnesses": self.best.witnesses.iter().map(|w| json_ints(w)).collect::<Vec<_>>(),
            "greedy": json_ints(self.greedy.terms()),
            "classification": self.classification.as_str(),
            "nodes": self.best.nodes_explored,
        })
    }
}

impl BestResult {
    /// Same schema as the report, without a classification.
    pub fn to_json(&self, theta: &Rational, n: usize) -> Value {
        json!({
            "theta": theta.to_string(),
            "n": n,
            "value": self.value.to_string(),
            "witnesses": self.witnesses.iter().map(|w| json_ints(w)).collect::<Vec<_>>(),
            "greedy": json_ints(self.greedy.terms()),
            "nodes": self.nodes_explored,
        })
    }
}

// ---------------------------------------------------------------------------
// Split probe

/// Whether `u_n = u_{n0} + u_{n-n0}(theta - u_{n0})` for one split point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCheck {
    pub n0: usize,
    pub head: Rational,
    pub tail: Rational,
    pub holds: bool,
    /// The tail optimum equals the greedy value on the residual.
    pub tail_is_greedy: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitRow {
    pub n: usize,
    pub value: Rational,
    pub checks: Vec<SplitCheck>,
}

impl SplitRow {
    pub fn holding_splits(&self) -> Vec<usize> {
        self.checks
            .iter()
            .filter(|c| c.holds)
            .map(|c| c.n0)
            .collect()
    }
}

/// For each `n <= n_max`, tabulates `u_n(theta)` and which split points
/// `n0 < n` satisfy the additive split identity. Reports evidence only.
pub fn eg_split_probe(theta: &Rational, n_max: usize) -> Result<Vec<SplitRow>> {
    eg_split_probe_with(theta, n_max, &SearchOptions::default())
}

pub fn eg_split_probe_with(
    theta: &Rational,
    n_max: usize,
    options: &SearchOptions,
) -> Result<Vec<SplitRow>> {
    check_inputs(theta, n_max)?;
    let mut values = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        values.push(best_underapprox_with(theta, n, options)?.value);
    }
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut checks = Vec::new();
        for n0 in 1..n {
            let head = values[n0 - 1].clone();
            let residual = theta - &head;
            let tail_best = best_underapprox_with(&residual, n - n0, options)?;
            let tail = tail_best.value;
            checks.push(SplitCheck {
                n0,
                holds: &head + &tail == values[n - 1],
                tail_is_greedy: tail_best.greedy_is_best,
                head,
                tail,
            });
        }
        rows.push(SplitRow {
            n,
            value: values[n - 1].clone(),
            checks,
        });
    }
    Ok(rows)
}
