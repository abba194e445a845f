//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero when a criterion outside `EXPECTED_FAIL` fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use biquad2::campaign::{family_search, verify_with, Config, Family};
use biquad2::memo::MemoOracle;
use biquad2::sweep::{lemma_sweep, lemma_tuples};
use biquad2_core::arith::{is_squarefree, odd_primes, sqrt_exact};
use biquad2_core::classify::biquad_odd;
use biquad2_core::formclass::{h2_wide, parity_table_check, DEFAULT_DISC_CAP};
use biquad2_core::genus2rank::{rank_formula, RankError, RelativeQuadExt, Shape};
use biquad2_core::multiquad::{
    a_minus_one_square, cyclic_family_hypotheses, iwasawa_structure, kuroda_h2, split_family_hypotheses,
    wada_unit_index, MultiquadField, StableGroup,
};
use biquad2_core::oracle::Oracle;
use biquad2_core::quadunits::{fundamental_unit, minimality, unit_sqrt_profile, UnitShape};

/// Fields whose largest subfield discriminant is near 3·10⁷ need a wider cap.
const WIDE_CAP: u64 = 50_000_000;

const PARITY_MAX_D: u64 = 3000;
const PARITY_SAMPLES: usize = 500;
const PARITY_RADICAND_MAX: u64 = 1000;
const PARITY_SEED: u64 = 0x5eed_b1c0;
const PARITY_TIME: Duration = Duration::from_secs(5 * 60);

/// Largest prime allowed in two-prime and three-prime radicands.
const TABLE_BOUND_TWO: u64 = 299;
const TABLE_BOUND_THREE: u64 = 99;

const CAMPAIGN_TIME: Duration = Duration::from_secs(30 * 60);

const SQUARE_BOUND: u64 = 199;
const OCTIC_BOUND: u64 = 149;
const OCTIC_INDEX: u64 = 1 << 5;
const CYCLIC_BOUND: u64 = 149;
const CYCLIC_EXTRA: usize = 10;
const SPLIT_BOUND: u64 = 199;
const SPLIT_MIN: usize = 5;

const PELL_MAX_D: u64 = 2000;
const MINIMAL_MAX_D: u64 = 500;
const PRODUCT_BOUND_TWO: u64 = 100;
const PRODUCT_BOUND_THREE: u64 = 40;

/// Criteria known to fail, with the reason. See the README.
const EXPECTED_FAIL: &[(u8, &str)] = &[
    (1, "the printed odd-class-number list omits Q(sqrt 2, sqrt p) and fields with all subfields of type q1q2 or 2q1q2"),
    (2, "several printed lemma tables disagree with t - 1 - e; class numbers refute many of their values"),
];

struct Verdict {
    pass: bool,
    /// The failure is of the known kind only.
    excused: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, excused: false, detail }
}

fn parity() -> Verdict {
    let start = Instant::now();
    let mut quad_bad = Vec::new();
    let mut quad = 0;
    for d in (2..=PARITY_MAX_D).filter(|&d| is_squarefree(d)) {
        quad += 1;
        if !parity_table_check(d, DEFAULT_DISC_CAP).unwrap_or(false) {
            quad_bad.push(d);
        }
    }
    // half the sample from radicands built like the odd cases, half uniform
    let o = MemoOracle::new(WIDE_CAP);
    let mut rng = StdRng::seed_from_u64(PARITY_SEED);
    let blocks: Vec<u64> = {
        let ps = odd_primes(3, 200);
        let mut v = vec![2];
        v.extend(ps.iter().copied());
        v.extend(ps.iter().map(|p| 2 * p));
        let q3: Vec<u64> = ps.iter().copied().filter(|p| p % 4 == 3).collect();
        for (i, a) in q3.iter().enumerate() {
            v.extend(q3[i + 1..].iter().map(|b| a * b).filter(|&n| n <= PARITY_RADICAND_MAX));
        }
        v.retain(|&n| n <= PARITY_RADICAND_MAX);
        v
    };
    // (a, b, predicted odd, h₂) for each disagreement
    let mut biquad_bad = Vec::new();
    let mut errors = Vec::new();
    let (mut odd, mut h_odd) = (0, 0);
    let mut taken = 0;
    while taken < PARITY_SAMPLES {
        let mut draw = || {
            if rng.random_bool(0.5) {
                blocks[rng.random_range(0..blocks.len())]
            } else {
                rng.random_range(2..=PARITY_RADICAND_MAX)
            }
        };
        let (a, b) = (draw(), draw());
        let Ok(f) = MultiquadField::biquadratic(a, b) else { continue };
        taken += 1;
        let predicted = biquad_odd(a, b);
        odd += predicted as usize;
        match kuroda_h2(&f, &o) {
            Ok(k) => {
                h_odd += (k.h2 == 1) as usize;
                if (k.h2 == 1) != predicted {
                    biquad_bad.push((a, b, predicted, k.h2));
                }
            }
            Err(e) => errors.push(format!("({a},{b}): {e}")),
        }
    }
    let elapsed = start.elapsed();
    let false_odd: Vec<_> = biquad_bad.iter().filter(|b| b.2).collect();
    let missed: Vec<_> = biquad_bad.iter().filter(|b| !b.2).map(|b| (b.0, b.1)).collect();
    let in_time = elapsed <= PARITY_TIME;
    Verdict {
        pass: quad_bad.is_empty() && biquad_bad.is_empty() && errors.is_empty() && in_time,
        excused: quad_bad.is_empty() && false_odd.is_empty() && errors.is_empty() && in_time,
        detail: format!(
            "quadratic {quad} d <= {PARITY_MAX_D}, {} off; biquadratic {taken} sampled, {odd} listed odd, {h_odd} with h2 = 1, \
             {} listed odd with h2 > 1, {} odd but unlisted {:?}, {} errors; {:.1?} (limit {:?})",
            quad_bad.len(),
            false_odd.len(),
            missed.len(),
            missed.iter().take(4).collect::<Vec<_>>(),
            errors.len(),
            elapsed,
            PARITY_TIME
        ),
    }
}

fn lemma_tables() -> Verdict {
    let o = MemoOracle::default();
    let mut parts = Vec::new();
    let mut clean = true;
    let mut errors_free = true;
    for shape in [Shape::A, Shape::B, Shape::C, Shape::A1, Shape::B1, Shape::C1] {
        let rep = lemma_sweep(shape, TABLE_BOUND_TWO, TABLE_BOUND_THREE, &o);
        clean &= rep.errors.is_empty() && rep.disagreements.is_empty();
        errors_free &= rep.errors.is_empty();
        parts.push(format!(
            "{shape:?} {} checked, {} mismatches ({} refuted by h2), {} errors",
            rep.checked,
            rep.disagreements.len(),
            rep.refuted(),
            rep.errors.len()
        ));
    }
    Verdict {
        pass: clean,
        excused: errors_free,
        detail: format!("primes <= {TABLE_BOUND_TWO}/{TABLE_BOUND_THREE}: {}", parts.join("; ")),
    }
}

fn main_theorem() -> Verdict {
    let start = Instant::now();
    let cfg = Config { orders: false, ..Config::default() };
    let o = MemoOracle::new(cfg.disc_cap);
    let (mut items, mut tuples, mut agree) = (0, 0, 0);
    let mut bad = Vec::new();
    for case in 1..=29u8 {
        let rep = match verify_with(case, &cfg, &o) {
            Ok(r) => r,
            Err(e) => {
                bad.push(format!("item {case}: {e}"));
                continue;
            }
        };
        items += (rep.summary.tuples > 0) as u32;
        tuples += rep.summary.tuples;
        agree += rep.summary.agree;
        if !rep.all_agree() {
            bad.push(format!("item {case}: {}/{}", rep.summary.agree, rep.summary.tuples));
        }
    }
    let elapsed = start.elapsed();
    verdict(
        bad.is_empty() && items == 29 && elapsed <= CAMPAIGN_TIME,
        format!(
            "{items} items with tuples, {agree}/{tuples} agree {bad:?}; bounds {}/{}; {:.1?} (limit {:?})",
            cfg.bound_two, cfg.bound_three, elapsed, CAMPAIGN_TIME
        ),
    )
}

fn is_square(n: &BigInt) -> bool {
    *n >= BigInt::from(0) && sqrt_exact(n).is_some()
}

fn exactly_one_square() -> Verdict {
    let ps = odd_primes(3, SQUARE_BOUND);
    let (mut n, mut bad) = (0, Vec::new());
    for &q in &ps {
        for &r in &ps {
            for &s in &ps {
                if !cyclic_family_hypotheses(q, r, s) {
                    continue;
                }
                n += 1;
                let u = fundamental_unit(q * r * s).expect("squarefree");
                let a1: BigInt = &u.x - 1;
                let squares = [2 * q, r, s].iter().filter(|&&m| is_square(&(&a1 * m))).count();
                let expands = unit_sqrt_profile(UnitShape::QRS, &[q, r, s]).is_ok_and(|p| p.expansion_holds(&u));
                if u.sigma != 1 || squares != 1 || !expands {
                    bad.push((q, r, s));
                }
            }
        }
    }
    verdict(n > 0 && bad.is_empty(), format!("{n} tuples, primes <= {SQUARE_BOUND}, {} violations {bad:?}", bad.len()))
}

/// Cyclic-family tuples whose s(a − 1) is not a square.
fn cyclic_tuples(bound: u64, o: &MemoOracle) -> Vec<(u64, u64, u64)> {
    family_search(Family::Cyclic, bound)
        .into_iter()
        .filter(|&(q, r, s)| !a_minus_one_square(o, q * r * s, s).expect("unit"))
        .collect()
}

fn octic_identity() -> Verdict {
    let o = MemoOracle::new(WIDE_CAP);
    let ts = cyclic_tuples(OCTIC_BOUND, &o);
    let mut bad = Vec::new();
    for &(q, r, s) in &ts {
        let f = MultiquadField::new(&[2, q * r, s]).expect("field");
        let k = kuroda_h2(&f, &o);
        let idx = wada_unit_index(&f, &o).map(|i| i.q);
        let h = o.h2(q * r * s);
        match (&k, &idx, &h) {
            (Ok(k), Ok(i), Ok(h)) if 2 * k.h2 == *h && *i == OCTIC_INDEX => {}
            _ => bad.push(format!("({q},{r},{s}): {k:?} {idx:?} {h:?}")),
        }
    }
    verdict(
        !ts.is_empty() && bad.is_empty(),
        format!("{} tuples, primes <= {OCTIC_BOUND}, {} violations {bad:?}", ts.len(), bad.len()),
    )
}

fn cyclic_structure() -> Verdict {
    let o = MemoOracle::new(WIDE_CAP);
    let mut ts = vec![(3, 19, 7)];
    ts.extend(cyclic_tuples(CYCLIC_BOUND, &o).into_iter().filter(|&t| t != (3, 19, 7)));
    let mut bad = Vec::new();
    for &(q, r, s) in &ts {
        let check = || -> Result<bool, String> {
            if !cyclic_family_hypotheses(q, r, s) || a_minus_one_square(&o, q * r * s, s).map_err(|e| e.to_string())? {
                return Ok(false);
            }
            let m = h2_wide(q * r * s, WIDE_CAP).map_err(|e| e.to_string())?.m;
            let f = MultiquadField::biquadratic(q, r * s).map_err(|e| e.to_string())?;
            let st = iwasawa_structure(&f, &o).map_err(|e| e.to_string())?;
            let h = kuroda_h2(&f, &o).map_err(|e| e.to_string())?.h2;
            Ok(m >= 1 && st.map(|s| s.group) == Some(StableGroup::Cyclic(m - 1)) && h == 1 << (m - 1))
        };
        if check() != Ok(true) {
            bad.push((q, r, s));
        }
    }
    let m399 = h2_wide(399, WIDE_CAP).map(|g| g.m).ok();
    verdict(
        bad.is_empty() && ts.len() > CYCLIC_EXTRA,
        format!(
            "(3,19,7) with m = {m399:?} plus {} tuples, primes <= {CYCLIC_BOUND} (need {CYCLIC_EXTRA}), {} violations {bad:?}",
            ts.len() - 1,
            bad.len()
        ),
    )
}

fn split_family() -> Verdict {
    let o = MemoOracle::new(WIDE_CAP);
    let ts: Vec<_> = family_search(Family::Split, SPLIT_BOUND)
        .into_iter()
        .filter(|&(q, r, s)| split_family_hypotheses(q, r, s) && !a_minus_one_square(&o, q * r * s, q).expect("unit"))
        .collect();
    let mut bad = Vec::new();
    for &(q, r, s) in &ts {
        match h2_wide(q * r * s, WIDE_CAP) {
            Ok(g) if g.two_rank == 2 && g.four_rank == 1 && g.invariant_factors == [2, 1 << (g.m - 1)] => {}
            g => bad.push(format!("({q},{r},{s}): {:?}", g.map(|g| g.invariant_factors))),
        }
    }
    verdict(
        ts.len() >= SPLIT_MIN && bad.is_empty(),
        format!("{} tuples, primes <= {SPLIT_BOUND} (need {SPLIT_MIN}), {} violations {bad:?}", ts.len(), bad.len()),
    )
}

fn unit_suite() -> Verdict {
    let mut pell_bad = Vec::new();
    let mut pell = 0;
    for d in (2..=PELL_MAX_D).filter(|&d| is_squarefree(d)) {
        pell += 1;
        let ok = fundamental_unit(d).is_ok_and(|u| {
            let sigma = BigInt::from(u.sigma);
            let lhs = &u.x * &u.x - BigInt::from(d) * &u.y * &u.y;
            u.x > BigInt::from(0) && u.y > BigInt::from(0) && lhs == BigInt::from(u.norm) * &sigma * &sigma
        });
        if !ok {
            pell_bad.push(d);
        }
    }
    let mut min_bad = Vec::new();
    for d in (2..=MINIMAL_MAX_D).filter(|&d| is_squarefree(d)) {
        if let Err(e) = fundamental_unit(d).map_err(|e| e.to_string()).and_then(|u| minimality::certify(&u)) {
            min_bad.push(e);
        }
    }
    let o = MemoOracle::default();
    let (mut matrices, mut rows, mut prod_bad) = (0, 0, Vec::new());
    for shape in [Shape::A, Shape::B, Shape::C, Shape::A1, Shape::B1, Shape::C1] {
        let mut ts = lemma_tuples(shape, 1, PRODUCT_BOUND_TWO);
        ts.extend(lemma_tuples(shape, 2, PRODUCT_BOUND_TWO));
        ts.extend(lemma_tuples(shape, 3, PRODUCT_BOUND_THREE));
        for t in ts {
            let ext = RelativeQuadExt::new(shape, t.clone()).expect("valid tuple");
            match rank_formula(&ext, &o) {
                Ok(r) => {
                    matrices += 1;
                    for row in &r.matrix.entries {
                        rows += 1;
                        if row.iter().map(|&x| x as i32).product::<i32>() != 1 {
                            prod_bad.push(format!("{shape:?} {t:?}"));
                        }
                    }
                }
                Err(e @ RankError::ProductFormula { .. }) => prod_bad.push(e.to_string()),
                Err(_) => {}
            }
        }
    }
    verdict(
        pell_bad.is_empty() && min_bad.is_empty() && prod_bad.is_empty() && matrices > 0,
        format!(
            "Pell {pell} d <= {PELL_MAX_D}, {} off; minimality d <= {MINIMAL_MAX_D}, {} off {min_bad:?}; product formula {rows} rows in {matrices} matrices, {} off",
            pell_bad.len(),
            min_bad.len(),
            prod_bad.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(u8, &str, fn() -> Verdict); 8] = [
        (1, "parity regression", parity),
        (2, "rank-table equivalence", lemma_tables),
        (3, "classification campaign", main_theorem),
        (4, "exactly one square", exactly_one_square),
        (5, "octic identity", octic_identity),
        (6, "cyclic structure", cyclic_structure),
        (7, "split family", split_family),
        (8, "unit suite", unit_suite),
    ];
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        let v = run();
        let expected = EXPECTED_FAIL.iter().find(|(i, _)| *i == id);
        println!("{} {id} {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        match (v.pass, expected) {
            (false, Some((_, why))) if v.excused => println!("    expected failure: {why}"),
            (false, _) => unexpected += 1,
            _ => {}
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    }
}
