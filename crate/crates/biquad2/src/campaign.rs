//! Tuple search and verification campaigns over the classification items.

use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use biquad2_core::arith::{is_prime, odd_primes};
use biquad2_core::classify::{main_theorem_case, CaseRow, DeltaKind, Form, Roles, CASES};
use biquad2_core::formclass::{field_discriminant, DEFAULT_DISC_CAP};
use biquad2_core::genus2rank::{form_c_roles, rank_formula, PrimeTuple, RankResult, RelativeQuadExt, Shape};
use biquad2_core::multiquad::{
    cyclic_family_hypotheses, fukuda_h2_stable, iwasawa_structure, split_family_hypotheses, MultiquadField,
};
use biquad2_core::oracle::Oracle;

use crate::memo::MemoOracle;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_BOUND_TWO: u64 = 300;
pub const DEFAULT_BOUND_THREE: u64 = 100;
/// Largest accepted bound.
pub const MAX_BOUND: u64 = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CampaignError {
    #[error("unknown case {0}; expected 1..=29")]
    UnknownCase(u8),
    #[error("bound {0} exceeds {MAX_BOUND}")]
    BoundTooLarge(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub bound_two: u64,
    pub bound_three: u64,
    pub disc_cap: u64,
    pub workers: usize,
    /// Also compute h₂(K), h₂(K₁) and the stable group.
    pub orders: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            bound_two: DEFAULT_BOUND_TWO,
            bound_three: DEFAULT_BOUND_THREE,
            disc_cap: DEFAULT_DISC_CAP,
            workers: 1,
            orders: true,
        }
    }
}

impl Config {
    pub fn bound_for(&self, primes: usize) -> u64 {
        if primes >= 3 {
            self.bound_three
        } else {
            self.bound_two
        }
    }
}

/// A tuple found by the search, with roles in the order that matched.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub case_id: u8,
    pub cond: u8,
    pub form: String,
    pub qs: Vec<u64>,
    pub delta: u64,
    pub primes: Vec<u64>,
    pub pred_rank: u32,
}

impl Candidate {
    pub fn tuple(&self) -> PrimeTuple {
        PrimeTuple { qs: self.qs.clone(), delta: self.delta, primes: self.primes.clone() }
    }

    /// Radicands (x, y) with K = Q(√x, √y).
    pub fn field(&self) -> (u64, u64) {
        let x = match self.form.as_str() {
            "B" => 2 * self.qs[0],
            _ => self.qs.iter().product(),
        };
        (x, self.tuple().d())
    }

    fn shape(&self) -> Shape {
        match self.form.as_str() {
            "A" => Shape::A,
            "B" => Shape::B,
            _ => Shape::C,
        }
    }

}

fn form_name(f: Form) -> &'static str {
    match f {
        Form::A => "A",
        Form::B => "B",
        Form::C => "C",
        Form::D => "D",
        Form::E => "E",
        Form::F => "F",
    }
}

fn ordered(pool: &[u64], n: usize, exclude: &[u64], out: &mut Vec<Vec<u64>>, cur: &mut Vec<u64>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for &p in pool {
        if !exclude.contains(&p) && !cur.contains(&p) {
            cur.push(p);
            ordered(pool, n, exclude, out, cur);
            cur.pop();
        }
    }
}

fn deltas(row: &CaseRow, qs: &[u64]) -> Vec<u64> {
    match (row.delta, qs) {
        (DeltaKind::One, _) => vec![1],
        (DeltaKind::Q, _) => vec![qs[0]],
        (DeltaKind::Any, [q1, q2]) => vec![1, *q1, *q2],
        (DeltaKind::Any, _) => vec![1],
    }
}

fn shape_of(f: Form) -> Option<Shape> {
    match f {
        Form::A => Some(Shape::A),
        Form::B => Some(Shape::B),
        Form::C => Some(Shape::C),
        _ => None,
    }
}

fn search_row(row: &CaseRow, bound: u64) -> Vec<Candidate> {
    let Some(shape) = shape_of(row.form) else { return Vec::new() };
    let pool: Vec<u64> = odd_primes(3, bound).into_iter().filter(|&p| matches!(p % 8, 3 | 5 | 7)).collect();
    let q3: Vec<u64> = odd_primes(3, bound).into_iter().filter(|&p| p % 4 == 3).collect();
    let qsets: Vec<Vec<u64>> = match row.form {
        Form::C => {
            let mut v = Vec::new();
            for &a in &q3 {
                for &b in &q3 {
                    if let Some((q1, q2)) = form_c_roles(a, b).filter(|_| a < b) {
                        v.push(vec![q1, q2]);
                    }
                }
            }
            v
        }
        _ => q3.iter().map(|&q| vec![q]).collect(),
    };
    let mut out = Vec::new();
    for qs in qsets {
        let mut tuples = Vec::new();
        ordered(&pool, row.primes, &qs, &mut tuples, &mut Vec::new());
        let (q, q2) = (qs[0], qs.get(1).copied().unwrap_or(1));
        for delta in deltas(row, &qs) {
            for ps in &tuples {
                let mut p = [0u64; 3];
                p[..ps.len()].copy_from_slice(ps);
                let tuple = PrimeTuple { qs: qs.clone(), delta, primes: ps.clone() };
                if (row.pred)(&Roles { q, q2, p }) && RelativeQuadExt::new(shape, tuple).is_ok() {
                    out.push(Candidate {
                        case_id: row.item,
                        cond: row.cond,
                        form: form_name(row.form).into(),
                        qs: qs.clone(),
                        delta,
                        primes: ps.clone(),
                        pred_rank: row.rank,
                    });
                }
            }
        }
    }
    out
}

/// All tuples with every role below `bound` satisfying some condition of
/// the item. A set of primes is listed once, under its first matching
/// condition and order.
pub fn cli_search(case_id: u8, bound: u64) -> Result<Vec<Candidate>, CampaignError> {
    if bound > MAX_BOUND {
        return Err(CampaignError::BoundTooLarge(bound));
    }
    let rows: Vec<&CaseRow> = CASES.iter().filter(|r| r.item == case_id).collect();
    if rows.is_empty() {
        return Err(CampaignError::UnknownCase(case_id));
    }
    let mut seen = HashSet::new();
    let mut out: Vec<Candidate> = Vec::new();
    for row in rows {
        for c in search_row(row, bound) {
            let mut ps = c.primes.clone();
            ps.sort_unstable();
            if seen.insert((c.qs.clone(), c.delta, ps)) {
                out.push(c);
            }
        }
    }
    out.sort_by(|a, b| (&a.qs, a.delta, &a.primes, a.cond).cmp(&(&b.qs, b.delta, &b.primes, b.cond)));
    Ok(out)
}

/// One verified tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub case_id: u8,
    pub cond: u8,
    pub form: String,
    pub q: Option<u64>,
    pub q1: Option<u64>,
    pub q2: Option<u64>,
    pub r: Option<u64>,
    pub s: Option<u64>,
    pub t: Option<u64>,
    pub delta: u64,
    pub pred_rank: u32,
    pub rank0: Option<u32>,
    pub rank1: Option<u32>,
    pub stable: Option<bool>,
    #[serde(rename = "h2_K")]
    pub h2_k: Option<u64>,
    #[serde(rename = "h2_K1")]
    pub h2_k1: Option<u64>,
    pub group: Option<String>,
    pub agree: bool,
    pub diagnostics: Option<Diagnostics>,
}

/// Present whenever a row disagrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub field: (u64, u64),
    pub method0: Option<String>,
    pub method1: Option<String>,
    pub e0: Option<u32>,
    pub e1: Option<u32>,
    pub t0: Option<u32>,
    pub t1: Option<u32>,
    pub classified: Option<String>,
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub tuples: usize,
    pub agree: usize,
    pub mismatches: usize,
    pub errors: usize,
    /// Wall time; not part of the deterministic payload.
    pub runtime_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub case_id: Option<u8>,
    pub config: Config,
    pub rows: Vec<Row>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(case_id: Option<u8>, config: Config, rows: Vec<Row>, runtime_ms: u64) -> Self {
        let summary = Summary {
            tuples: rows.len(),
            agree: rows.iter().filter(|r| r.agree).count(),
            mismatches: rows.iter().filter(|r| !r.agree && r.rank0.is_some() && r.rank1.is_some()).count(),
            errors: rows.iter().filter(|r| r.rank0.is_none() || r.rank1.is_none()).count(),
            runtime_ms,
        };
        VerificationReport { schema_version: SCHEMA_VERSION, case_id, config, rows, summary }
    }

    pub fn all_agree(&self) -> bool {
        self.summary.agree == self.summary.tuples
    }
}

fn blank_row(c: &Candidate) -> Row {
    let (q, q1, q2) = match c.qs[..] {
        [q1, q2] => (None, Some(q1), Some(q2)),
        [q] => (Some(q), None, None),
        _ => (None, None, None),
    };
    let p = |i: usize| c.primes.get(i).copied();
    Row {
        case_id: c.case_id,
        cond: c.cond,
        form: c.form.clone(),
        q,
        q1,
        q2,
        r: p(0),
        s: p(1),
        t: p(2),
        delta: c.delta,
        pred_rank: c.pred_rank,
        rank0: None,
        rank1: None,
        stable: None,
        h2_k: None,
        h2_k1: None,
        group: None,
        agree: false,
        diagnostics: None,
    }
}

/// Classification, ranks at levels 0 and 1, orders of A(K) and A(K₁) and
/// the stable structure where known. Errors land in the row.
/// h₂(K), h₂(K₁) and the stable group are filled in when `orders` is set
/// and every quadratic subfield of K₁ is within `disc_cap`.
pub fn verify_candidate<O: Oracle>(c: &Candidate, oracle: &O, orders: bool, disc_cap: u64) -> Row {
    let (mut row, d) = evaluate(c, oracle, orders, disc_cap);
    if !row.agree {
        row.diagnostics = Some(d);
    }
    row
}

fn note_claim(d: &mut Diagnostics, level: &str, r: &RankResult) {
    if let Some(c) = r.claim.as_ref().filter(|c| !c.admits(r.rank)) {
        d.errors.push(format!("{level}: rank {} outside the lemma table value {c}", r.rank));
    }
}

fn evaluate<O: Oracle>(c: &Candidate, oracle: &O, orders: bool, oracle_cap: u64) -> (Row, Diagnostics) {
    let mut row = blank_row(c);
    let field = c.field();
    let mut d = Diagnostics {
        field,
        method0: None,
        method1: None,
        e0: None,
        e1: None,
        t0: None,
        t1: None,
        classified: None,
        errors: Vec::new(),
    };
    match main_theorem_case(field.0, field.1) {
        Ok(Some(p)) => d.classified = Some(format!("{}.{} rank {}", p.item, p.cond, p.rank)),
        Ok(None) => d.classified = Some("none".into()),
        Err(e) => d.errors.push(e.to_string()),
    }
    match RelativeQuadExt::new(c.shape(), c.tuple()) {
        Ok(k) => {
            match rank_formula(&k, oracle) {
                Ok(r) => {
                    note_claim(&mut d, "level 0", &r);
                    row.rank0 = Some(r.rank);
                    d.method0 = Some(format!("{:?}", r.method));
                    d.e0 = Some(r.e);
                    d.t0 = Some(r.t);
                }
                Err(e) => d.errors.push(format!("level 0: {e}")),
            }
            match k.level_one().map_err(Into::into).and_then(|k1| rank_formula(&k1, oracle)) {
                Ok(r) => {
                    note_claim(&mut d, "level 1", &r);
                    row.rank1 = Some(r.rank);
                    d.method1 = Some(format!("{:?}", r.method));
                    d.e1 = Some(r.e);
                    d.t1 = Some(r.t);
                }
                Err(e) => d.errors.push(format!("level 1: {e}")),
            }
        }
        Err(e) => d.errors.push(e.to_string()),
    }
    if let (Some(a), Some(b)) = (row.rank0, row.rank1) {
        row.stable = Some(a == b);
    }
    let within_cap = |f: &MultiquadField| match f.adjoin(2) {
        Ok(k1) => k1.subfield_radicands().into_iter().all(|d| field_discriminant(d) <= oracle_cap),
        Err(_) => false,
    };
    match MultiquadField::biquadratic(field.0, field.1).map(|f| Some(f).filter(|f| orders && within_cap(f))) {
        Ok(None) => {}
        Ok(Some(f)) => {
            match fukuda_h2_stable(&f, oracle) {
                Ok(st) => {
                    row.h2_k = Some(st.h2_k);
                    row.h2_k1 = Some(st.h2_k1);
                }
                Err(e) => d.errors.push(format!("h2: {e}")),
            }
            match iwasawa_structure(&f, oracle) {
                Ok(s) => row.group = s.map(|s| s.group.to_string()),
                Err(e) => d.errors.push(format!("structure: {e}")),
            }
        }
        Err(e) => d.errors.push(e.to_string()),
    }
    row.agree = row.rank0 == Some(c.pred_rank) && row.rank1 == Some(c.pred_rank);
    (row, d)
}

fn run_rows<T: Sync, F: Fn(&T) -> Row + Sync + Send>(items: &[T], workers: usize, f: F) -> Vec<Row> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().expect("thread pool");
    pool.install(|| items.par_iter().map(&f).collect())
}

/// Verifies every tuple the search finds for the item.
pub fn cli_verify(case_id: u8, config: &Config) -> Result<VerificationReport, CampaignError> {
    let oracle = MemoOracle::new(config.disc_cap);
    verify_with(case_id, config, &oracle)
}

/// As [`cli_verify`], sharing a caller's oracle across items.
pub fn verify_with(case_id: u8, config: &Config, oracle: &MemoOracle) -> Result<VerificationReport, CampaignError> {
    let start = Instant::now();
    let n = CASES.iter().find(|r| r.item == case_id).ok_or(CampaignError::UnknownCase(case_id))?.primes;
    let cands = cli_search(case_id, config.bound_for(n))?;
    let rows = run_rows(&cands, config.workers, |c| verify_candidate(c, oracle, config.orders, config.disc_cap));
    Ok(VerificationReport::new(Some(case_id), *config, rows, start.elapsed().as_millis() as u64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Cyclic,
    Split,
}

/// Tuples (q, r, s) below `bound` meeting a structure family's congruence
/// and symbol hypotheses. The unit condition is checked during verification.
pub fn family_search(family: Family, bound: u64) -> Vec<(u64, u64, u64)> {
    let ps = odd_primes(3, bound);
    let mut out = Vec::new();
    for &q in &ps {
        for &r in &ps {
            for &s in &ps {
                let ok = match family {
                    Family::Cyclic => cyclic_family_hypotheses(q, r, s),
                    Family::Split => split_family_hypotheses(q, r, s),
                };
                if ok && q != r && r != s && q != s && is_prime(q) {
                    out.push((q, r, s));
                }
            }
        }
    }
    out
}

/// Structure rows for K = Q(√q, √rs): ranks from the formula, the order from
/// the class number formula and the stable group. A row agrees when the
/// group's order equals h₂(K) and its rank equals both computed ranks.
pub fn structure_campaign(family: Family, bound: u64, config: &Config) -> VerificationReport {
    let start = Instant::now();
    let oracle = MemoOracle::new(config.disc_cap);
    let cands: Vec<Candidate> = family_search(family, bound)
        .into_iter()
        .map(|(q, r, s)| Candidate {
            case_id: 0,
            cond: match family {
                Family::Cyclic => 1,
                Family::Split => 2,
            },
            form: "A".into(),
            qs: vec![q],
            delta: 1,
            primes: vec![r, s],
            pred_rank: 0,
        })
        .collect();
    let rows = run_rows(&cands, config.workers, |c| {
        let f = MultiquadField::biquadratic(c.qs[0], c.primes[0] * c.primes[1]).expect("valid radicands");
        let st = iwasawa_structure(&f, &oracle);
        let c = Candidate { pred_rank: st.as_ref().ok().and_then(Option::as_ref).map_or(0, |s| s.group.rank()), ..c.clone() };
        let (mut row, mut d) = evaluate(&c, &oracle, true, config.disc_cap);
        let order = st.ok().flatten().map(|s| 1u64 << s.group.log2_order());
        row.agree &= order.is_some() && order == row.h2_k;
        if !row.agree {
            d.errors.push(format!("group order {order:?} against h2(K) {:?}", row.h2_k));
            row.diagnostics = Some(d);
        }
        row
    });
    VerificationReport::new(None, *config, rows, start.elapsed().as_millis() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn search_examples() {
        let c1 = cli_search(1, 30).unwrap();
        let has = |q: u64, r: u64| c1.iter().any(|c| c.qs == vec![q] && c.primes == vec![r]);
        assert!(has(3, 5) && has(3, 13) && has(7, 3));
        assert!(cli_search(2, 3).unwrap().is_empty());
        assert_eq!(cli_search(30, 50), Err(CampaignError::UnknownCase(30)));
        assert_eq!(cli_search(1, MAX_BOUND + 1), Err(CampaignError::BoundTooLarge(MAX_BOUND + 1)));
    }

    #[test]
    fn search_is_deterministic() {
        assert_eq!(cli_search(12, 60).unwrap(), cli_search(12, 60).unwrap());
    }

    #[test]
    fn small_campaign_agrees() {
        let cfg = Config { bound_two: 40, bound_three: 20, ..Config::default() };
        for case in [1u8, 2, 10, 17, 23] {
            let rep = cli_verify(case, &cfg).unwrap();
            assert!(rep.summary.tuples > 0, "case {case}");
            assert!(rep.all_agree(), "case {case}: {:?}", rep.rows.iter().find(|r| !r.agree));
        }
    }

    #[test]
    fn workers_do_not_change_rows() {
        let one = Config { bound_two: 60, ..Config::default() };
        let four = Config { workers: 4, ..one };
        assert_eq!(cli_verify(3, &one).unwrap().rows, cli_verify(3, &four).unwrap().rows);
    }

    #[test]
    fn disagreeing_rows_carry_diagnostics() {
        let c = Candidate {
            case_id: 1,
            cond: 1,
            form: "A".into(),
            qs: vec![3],
            delta: 1,
            primes: vec![19],
            pred_rank: 5,
        };
        let row = verify_candidate(&c, &MemoOracle::default(), true, DEFAULT_DISC_CAP);
        assert!(!row.agree);
        assert!(row.diagnostics.is_some());
    }
}
