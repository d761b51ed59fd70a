//! End-to-end acceptance suite: twelve checks, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always print, in order, and
//! the wall-clock bounds are measured without other checks competing for CPU.
//! Random inputs come from fixed seeds.

use std::time::{Duration, Instant};

use egyptian::greedy::{closed_form_remainder, sylvester_by_products};
use egyptian::ineq::{self, Direction, PositiveSequence, Smoothing};
use egyptian::optimal::oracle_cap;
use egyptian::{
    best_underapprox, brute_force_best, classify_two_term, closed_form_sequence,
    criterion_interval, greedy_sequence, harmonic_interval, harmonic_subinterval, induced_a2,
    is_greedy_for, locate, sylvester, GreedySequence, Rational, Relation,
};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;

/// Name, optional wall-clock limit, and the check itself.
type Criterion = (&'static str, Option<Duration>, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn big_strs(v: &[&str]) -> Vec<BigInt> {
    v.iter().map(|s| s.parse().unwrap()).collect()
}

/// Pairs `(p, q)` with `p | q + 1` and `p <= q <= q_max`.
fn divisor_pairs(q_max: u64) -> Vec<(u64, u64)> {
    (1..=q_max)
        .flat_map(|q| {
            (1..=q)
                .filter(move |p| (q + 1) % p == 0)
                .map(move |p| (p, q))
        })
        .collect()
}

fn random_theta(rng: &mut StdRng, max_den: u64) -> Rational {
    let q = rng.gen_range(1..=max_den);
    let p = rng.gen_range(1..=q);
    Rational::new(p, q).unwrap()
}

// 1 -------------------------------------------------------------------------

fn sylvester_values() -> Check {
    let expected = big_strs(&[
        "2",
        "3",
        "7",
        "43",
        "1807",
        "3263443",
        "10650056950807",
        "113423713055421844361000443",
        "12864938683278671740537145998360961546653259485195807",
    ]);
    let got = sylvester(9);
    ensure!(got.terms() == expected.as_slice(), "sylvester(9) = {got}");
    ensure!(
        sylvester_by_products(9) == expected,
        "product recurrence disagrees"
    );
    ensure!(expected[8].to_string().len() == 53, "s9 is not 53 digits");
    Ok("s1..s9 exact; s9 has 53 digits".into())
}

// 2 -------------------------------------------------------------------------

fn greedy_equals_sylvester() -> Check {
    let g = greedy_sequence(&Rational::one(), 9).map_err(|e| e.to_string())?;
    let s = sylvester(9);
    let c = closed_form_sequence(1u32, 1u32, 9).map_err(|e| e.to_string())?;
    ensure!(g == s, "greedy(1, 9) = {g}");
    ensure!(c == s, "closed_form(1, 1, 9) = {c}");
    Ok("three constructions agree on 9 terms".into())
}

// 3 -------------------------------------------------------------------------

fn closed_form_identity() -> Check {
    let pairs = divisor_pairs(50);
    let mut prefixes = 0;
    for &(p, q) in &pairs {
        let theta = Rational::new(p, q).unwrap();
        for k in 1..=6 {
            let closed = closed_form_sequence(p, q, k).map_err(|e| e.to_string())?;
            let greedy = greedy_sequence(&theta, k).map_err(|e| e.to_string())?;
            ensure!(closed == greedy, "{p}/{q}, k = {k}: {closed} vs {greedy}");
        }
        let seq = closed_form_sequence(p, q, 6).unwrap();
        let qb = BigInt::from(q);
        for j in 1..=6 {
            let prefix = &seq.terms()[..j];
            let actual = &theta - &egyptian::rationals::reciprocal_sum(prefix);
            let product: BigInt = prefix.iter().product();
            let formula = Rational::recip_of(&(&qb * product));
            ensure!(actual == formula, "{p}/{q}, prefix {j}: remainder {actual}");
            ensure!(
                closed_form_remainder(&qb, prefix) == formula,
                "{p}/{q}, prefix {j}"
            );
            prefixes += 1;
        }
    }
    Ok(format!(
        "{} pairs, {prefixes} prefix remainders",
        pairs.len()
    ))
}

// 4 -------------------------------------------------------------------------

fn unique_best_for_one() -> Check {
    let mut max_nodes = 0;
    for n in 1..=5 {
        let best = best_underapprox(&Rational::one(), n).map_err(|e| e.to_string())?;
        let expected = sylvester(n);
        ensure!(
            best.unique_best,
            "n = {n}: {} witnesses",
            best.witnesses.len()
        );
        ensure!(
            best.witnesses[0].terms() == expected.terms(),
            "n = {n}: {}",
            best.witnesses[0]
        );
        ensure!(
            best.nodes_explored <= 100_000,
            "n = {n}: {} nodes",
            best.nodes_explored
        );
        max_nodes = max_nodes.max(best.nodes_explored);
    }
    Ok(format!(
        "n = 1..5 unique Sylvester witness; max nodes {max_nodes}"
    ))
}

// 5 -------------------------------------------------------------------------

fn closed_form_is_unique_best() -> Check {
    // every qualifying pair, a superset of the twenty the check asks for
    let pairs = divisor_pairs(20);
    ensure!(pairs.len() >= 20, "only {} pairs", pairs.len());
    let mut total_nodes = 0;
    for &(p, q) in &pairs {
        let theta = Rational::new(p, q).unwrap();
        for n in 1..=4 {
            let best = best_underapprox(&theta, n).map_err(|e| format!("{p}/{q}: {e}"))?;
            let closed = closed_form_sequence(p, q, n).unwrap();
            ensure!(
                best.unique_best,
                "{p}/{q}, n = {n}: {} witnesses",
                best.witnesses.len()
            );
            ensure!(
                best.witnesses[0].terms() == closed.terms(),
                "{p}/{q}, n = {n}: best {} vs closed form {closed}",
                best.witnesses[0]
            );
            total_nodes += best.nodes_explored;
        }
    }
    Ok(format!(
        "{} pairs x n = 1..4; {total_nodes} nodes",
        pairs.len()
    ))
}

// 6 -------------------------------------------------------------------------

fn two_term_a1_2() -> Check {
    let records = classify_two_term(2).map_err(|e| e.to_string())?;
    let got: Vec<_> = records
        .iter()
        .map(|r| (r.x1, r.x2, r.a2, r.relation))
        .collect();
    let expected = vec![
        (3, 3, 6, Relation::Tie),
        (3, 4, 12, Relation::Tie),
        (3, 5, 30, Relation::Tie),
    ];
    ensure!(got == expected, "records {got:?}");
    let cases: [(&str, [&[u64]; 2]); 3] = [
        ("7/10", [&[2, 6], &[3, 3]]),
        ("13/22", [&[2, 12], &[3, 4]]),
        ("31/58", [&[2, 30], &[3, 5]]),
    ];
    for ((theta, witnesses), a2) in cases.iter().zip([6u64, 12, 30]) {
        let theta = r(theta);
        let j = harmonic_subinterval(2u32, a2).unwrap();
        ensure!(*j.hi() == theta, "right end of J(2,{a2}) is {}", j.hi());
        let best = best_underapprox(&theta, 2).map_err(|e| e.to_string())?;
        let got: Vec<Vec<BigInt>> = best.witnesses.iter().map(|w| w.terms().to_vec()).collect();
        let want: Vec<Vec<BigInt>> = witnesses.iter().map(|w| big(w)).collect();
        ensure!(got == want, "theta = {theta}: witnesses {got:?}");
    }
    Ok("3 TIE records; two witnesses at each right endpoint".into())
}

// 7 -------------------------------------------------------------------------

fn two_term_a1_3() -> Check {
    let records = classify_two_term(3).map_err(|e| e.to_string())?;
    ensure!(records.len() == 10, "{} records", records.len());
    let a2s: Vec<u64> = records.iter().map(|r| r.a2).collect();
    ensure!(
        a2s == [9, 12, 17, 24, 36, 60, 132, 15, 30, 105],
        "a2 order {a2s:?}"
    );
    let strict: Vec<_> = records
        .iter()
        .filter(|r| r.relation == Relation::StrictImprovement)
        .map(|r| {
            (
                r.x1,
                r.x2,
                r.a2,
                r.improvement_interval.as_ref().map(|i| i.to_string()),
            )
        })
        .collect();
    let expected = vec![
        (4, 5, 9, Some("(9/20, 11/24]".to_string())),
        (4, 7, 17, Some("(11/28, 19/48]".to_string())),
    ];
    ensure!(strict == expected, "strict records {strict:?}");
    let mut ties: Vec<u64> = records
        .iter()
        .filter(|r| r.relation == Relation::Tie)
        .map(|r| r.a2)
        .collect();
    ties.sort_unstable();
    ensure!(
        ties == [12, 15, 24, 30, 36, 60, 105, 132],
        "tie a2 {ties:?}"
    );
    ensure!(
        records.iter().all(|r| r.greedy_valid),
        "an a2 is not a greedy successor"
    );
    Ok("10 records; 2 strict improvements; 8 ties".into())
}

// 8 -------------------------------------------------------------------------

fn two_term_a1_5() -> Check {
    ensure!(
        induced_a2(5, 7, 10).map_err(|e| e.to_string())? == (24, false),
        "(5,7,10)"
    );
    ensure!(
        induced_a2(5, 9, 11).map_err(|e| e.to_string())? == (495, true),
        "(5,9,11)"
    );
    ensure!(
        induced_a2(5, 6, 9).map_err(|e| e.to_string())? == (13, false),
        "(5,6,9)"
    );
    let records = classify_two_term(5).map_err(|e| e.to_string())?;
    let rec = records
        .iter()
        .find(|r| (r.x1, r.x2) == (6, 9))
        .ok_or("(6,9) missing")?;
    ensure!(
        rec.relation == Relation::StrictImprovement,
        "(6,9) relation"
    );
    ensure!(!rec.greedy_valid, "(6,9) should not induce a greedy pair");
    let rec = records
        .iter()
        .find(|r| (r.x1, r.x2) == (7, 10))
        .ok_or("(7,10) missing")?;
    ensure!(rec.greedy_valid && rec.a2 == 24, "(7,10)");
    Ok("(7,10)->24 strict, (9,11)->495 tie, (6,9)->13 strict and invalid".into())
}

// 9 -------------------------------------------------------------------------

/// Upper limit on `cap^(n-1)`, the exhaustive oracle's work.
const ORACLE_WORK_LIMIT: f64 = 1.5e7;

fn oracle_equivalence() -> Check {
    let mut rng = StdRng::seed_from_u64(9);
    let mut compared = [0usize; 2];
    let mut redrawn = 0;
    while compared[0] + compared[1] < 100 {
        // alternate sizes so both get half the draws
        let n = 2 + (compared[0] + compared[1]) % 2;
        let theta = random_theta(&mut rng, 60);
        let cap = oracle_cap(&theta, n).map_err(|e| e.to_string())?;
        let cap_f: f64 = cap.to_string().parse().unwrap();
        if cap_f.powi(n as i32 - 1) > ORACLE_WORK_LIMIT {
            redrawn += 1;
            continue;
        }
        let cap: u64 = cap.try_into().unwrap();
        let fast = best_underapprox(&theta, n).map_err(|e| format!("{theta}: {e}"))?;
        let slow = brute_force_best(&theta, n, cap).map_err(|e| format!("{theta}: {e}"))?;
        ensure!(
            fast.value == slow.value,
            "{theta}, n = {n}: {} vs {}",
            fast.value,
            slow.value
        );
        ensure!(
            fast.witnesses == slow.witnesses,
            "{theta}, n = {n}: witness sets differ"
        );
        compared[n - 2] += 1;
    }
    Ok(format!(
        "100 thetas ({} with n = 2, {} with n = 3); {redrawn} redrawn as intractable for the oracle",
        compared[0], compared[1]
    ))
}

// 10 ------------------------------------------------------------------------

fn random_greedy_sequence(rng: &mut StdRng) -> GreedySequence {
    let len = rng.gen_range(1..=4);
    let mut terms = vec![BigInt::from(rng.gen_range(2u64..=5))];
    while terms.len() < len {
        let a = terms.last().unwrap();
        let min = a * a - a + 1u32;
        let extra = rng.gen_range(0u64..=2 * u64::try_from(&min).unwrap());
        terms.push(min + extra);
    }
    GreedySequence::new(terms).unwrap()
}

fn criterion_biconditional() -> Check {
    let mut rng = StdRng::seed_from_u64(10);
    let (mut inside, mut outside) = (0, 0);
    for _ in 0..500 {
        let seq = random_greedy_sequence(&mut rng);
        let iv = criterion_interval(&seq);
        let (lo, hi) = (iv.lo().clone(), iv.hi().clone());
        let width = iv.width();
        let mut thetas = vec![hi.clone(), lo.clone()];
        let t = Rational::new(rng.gen_range(1u64..=999), 1000u64).unwrap();
        thetas.push(&lo + &(&width * &t));
        let below = Rational::new(rng.gen_range(1u64..=999), 1000u64).unwrap();
        thetas.push(&lo * &below);
        let above = Rational::new(rng.gen_range(1u64..=999), 1000u64).unwrap();
        let candidate = &hi + &(&(&Rational::one() - &hi) * &above);
        thetas.push(if candidate > hi { candidate } else { &lo * &t });
        for theta in &thetas {
            let claim = is_greedy_for(&seq, theta).map_err(|e| e.to_string())?;
            let actual = greedy_sequence(theta, seq.len()).map_err(|e| e.to_string())? == seq;
            ensure!(
                claim == actual,
                "{seq} at {theta}: criterion {claim}, greedy {actual}"
            );
            if claim {
                inside += 1;
            } else {
                outside += 1;
            }
        }
    }
    Ok(format!("2500 checks: {inside} inside, {outside} outside"))
}

// 11 ------------------------------------------------------------------------

fn random_positive(rng: &mut StdRng) -> Rational {
    Rational::new(rng.gen_range(1u64..=30), rng.gen_range(1u64..=6)).unwrap()
}

fn random_monotone(rng: &mut StdRng, len: usize, direction: Direction) -> PositiveSequence {
    let mut values: Vec<Rational> = (0..len).map(|_| random_positive(rng)).collect();
    values.sort();
    if direction == Direction::Decreasing {
        values.reverse();
    }
    PositiveSequence::new(values, direction).unwrap()
}

/// Random `(u, v)` meeting the dominance hypotheses in `direction`.
fn random_instance(rng: &mut StdRng, direction: Direction) -> (PositiveSequence, PositiveSequence) {
    loop {
        let len = rng.gen_range(1..=6);
        let u = random_monotone(rng, len, direction);
        let v = random_monotone(rng, len, direction);
        if u != v && ineq::prefix_product_dominates(&v, &u).unwrap() {
            return (u, v);
        }
    }
}

fn inequality_suite() -> Check {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..1000 {
        let (u, v) = random_instance(&mut rng, Direction::Increasing);
        let verdict = ineq::check_reciprocal_inequality(&u, &v).map_err(|e| e.to_string())?;
        ensure!(
            verdict.holds(),
            "u = {u}, v = {v}: {} >= {}",
            verdict.smaller,
            verdict.larger
        );
    }

    let v = PositiveSequence::from_integers(&[1, 7], Direction::Increasing).unwrap();
    let u = PositiveSequence::from_integers(&[2, 4], Direction::Increasing).unwrap();
    ensure!(
        ineq::prefix_product_dominates(&v, &u).unwrap(),
        "dominance should hold"
    );
    ensure!(v.sum() == r("8") && u.sum() == r("6"), "plain sums");
    ensure!(
        ineq::check_reciprocal_inequality(&u, &v).unwrap().holds(),
        "reciprocal form"
    );

    let mut steps = 0;
    let mut componentwise = 0;
    while steps < 500 {
        let (u, v) = random_instance(&mut rng, Direction::Decreasing);
        if u.values().iter().zip(v.values()).any(|(a, b)| a == b) {
            continue;
        }
        match ineq::smoothing_step(&u, &v).map_err(|e| format!("{u}, {v}: {e}"))? {
            Smoothing::Componentwise => {
                let below = u.values().iter().zip(v.values()).all(|(a, b)| b < a);
                ensure!(below, "{u}, {v}: not componentwise");
                componentwise += 1;
            }
            Smoothing::Step { pivot, t, sequence } => {
                let w = sequence.values();
                ensure!(t > Rational::one(), "{u}, {v}: t = {t}");
                ensure!(
                    w.windows(2).all(|p| p[0] >= p[1]),
                    "{u}, {v}: {sequence} not decreasing"
                );
                ensure!(
                    ineq::prefix_product_dominates(&v, &sequence).unwrap(),
                    "{u}, {v}: {sequence} lost dominance"
                );
                ensure!(sequence.sum() < u.sum(), "{u}, {v}: sum did not drop");
                ensure!(
                    w[pivot - 1] == v.values()[pivot - 1] || w[pivot] == v.values()[pivot],
                    "{u}, {v}: {sequence} not pinned to v"
                );
                steps += 1;
            }
        }
    }
    Ok(format!(
        "1000 reciprocal instances; counterexample 8 > 6; {steps} smoothing steps, {componentwise} componentwise"
    ))
}

// 12 ------------------------------------------------------------------------

fn partition() -> Check {
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..1000 {
        let theta = random_theta(&mut rng, 1_000_000);
        let (a1, a2) = locate(&theta).map_err(|e| e.to_string())?;
        let greedy = greedy_sequence(&theta, 2).unwrap();
        ensure!(
            greedy.terms() == [a1.clone(), a2.clone()],
            "{theta}: locate vs greedy"
        );
        ensure!(
            harmonic_interval(a1.clone()).unwrap().contains(&theta),
            "{theta}: I({a1})"
        );
        ensure!(
            harmonic_subinterval(a1.clone(), a2.clone())
                .unwrap()
                .contains(&theta),
            "{theta}"
        );
        // neighbouring cells must not contain theta
        for other in [&a2 - 1u32, &a2 + 1u32] {
            if let Ok(j) = harmonic_subinterval(a1.clone(), other.clone()) {
                ensure!(!j.contains(&theta), "{theta} also in J({a1},{other})");
            }
        }
        if a1 > BigInt::from(2) {
            ensure!(
                !harmonic_interval(&a1 - 1u32).unwrap().contains(&theta),
                "{theta}"
            );
        }
        ensure!(
            !harmonic_interval(&a1 + 1u32).unwrap().contains(&theta),
            "{theta}"
        );
    }
    Ok("1000 thetas each in exactly one J(a1, a2)".into())
}

// ---------------------------------------------------------------------------

fn main() {
    let criteria: [Criterion; 12] = [
        (
            "sylvester reproduction",
            Some(Duration::from_secs(1)),
            sylvester_values,
        ),
        (
            "greedy = sylvester",
            Some(Duration::from_secs(1)),
            greedy_equals_sylvester,
        ),
        (
            "closed-form identity",
            Some(Duration::from_secs(10)),
            closed_form_identity,
        ),
        (
            "unique best for theta = 1",
            Some(Duration::from_secs(5)),
            unique_best_for_one,
        ),
        (
            "closed form is unique best",
            Some(Duration::from_secs(30)),
            closed_form_is_unique_best,
        ),
        ("two-term classification a1 = 2", None, two_term_a1_2),
        ("two-term classification a1 = 3", None, two_term_a1_3),
        ("two-term examples a1 = 5", None, two_term_a1_5),
        (
            "oracle equivalence",
            Some(Duration::from_secs(60)),
            oracle_equivalence,
        ),
        ("criterion biconditional", None, criterion_biconditional),
        ("inequality suite", None, inequality_suite),
        ("partition", None, partition),
    ];
    let mut failures = Vec::new();
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = check();
        let elapsed = started.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > *limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (o, _) => o,
        };
        let bound = limit.map(|l| format!(" / {l:?}")).unwrap_or_default();
        match &outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{elapsed:.2?}{bound}] {detail}", i + 1),
            Err(detail) => {
                println!("FAIL {:>2} {name} [{elapsed:.2?}{bound}] {detail}", i + 1);
                failures.push(i + 1);
            }
        }
    }
    if !failures.is_empty() {
        eprintln!("failed criteria: {failures:?}");
        std::process::exit(1);
    }
    println!("all 12 criteria passed");
}
