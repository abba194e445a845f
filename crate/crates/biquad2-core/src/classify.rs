//! Decision tables: odd class numbers of real quadratic and biquadratic
//! fields, the field forms A–F for which K₁ = K(√2) is a quadratic extension
//! of fields with odd class number, and the classification of forms A–C by
//! the stable rank of A(K_∞).
//!
//! The classification is a table of rows, one per item and sub-condition,
//! each a predicate on the residues modulo 8 and the quadratic characters of
//! the primes in their roles. Every labeling of the field and every
//! permutation of r, s, t is tried.

use alloc::vec;
use alloc::vec::Vec;
use thiserror::Error;

use crate::arith::{is_prime, legendre, prime_divisors, quartic_residue, squarefree_part};
use crate::formclass::odd_class_number_listed;
use crate::genus2rank::{form_c_roles, rank_a, PrimeTuple, RankError, RelativeQuadExt, Shape};
use crate::oracle::Oracle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Rank(#[from] RankError),
    #[error("labelings of Q(√{0}, √{1}) predict different ranks")]
    Conflict(u64, u64),
}

fn l(a: u64, p: u64) -> i8 {
    legendre(a as i64, p)
}

fn q3(p: u64) -> bool {
    is_prime(p) && p % 4 == 3
}

fn p1(p: u64) -> bool {
    is_prime(p) && p % 4 == 1
}

/// Odd class number of Q(√d).
pub fn quad_odd(d: u64) -> bool {
    odd_class_number_listed(d)
}

/// The three quadratic subfields of Q(√a, √b).
pub fn subfields(a: u64, b: u64) -> [u64; 3] {
    let mut s = [a, b, squarefree_part(a * b).0];
    s.sort_unstable();
    s
}

fn two_q3(n: u64) -> Option<(u64, u64)> {
    match prime_divisors(n)[..] {
        [x, y] if x * y == n && q3(x) && q3(y) => Some((x, y)),
        _ => None,
    }
}

fn biquad_pair_odd(x: u64, y: u64) -> bool {
    let pair = |f: &dyn Fn(u64, u64) -> bool| f(x, y) || f(y, x);
    pair(&|a, b| a == 2 && q3(b))
        || (q3(x) && q3(y))
        || pair(&|a, b| {
            let qq = if q3(a) { Some(a) } else if a % 2 == 0 && q3(a / 2) { Some(a / 2) } else { None };
            qq.is_some_and(|q| p1(b) && (l(b, q) == -1 || b % 8 == 5))
        })
        || pair(&|a, b| a == 2 && two_q3(b).is_some_and(|(u, v)| u % 8 == 3 || v % 8 == 3))
        || pair(&|a, b| p1(a) && two_q3(b).is_some_and(|(u, v)| l(u, a) == -1 || l(v, a) == -1))
        || (p1(x) && p1(y) && {
            let s = l(x, y);
            s == -1 || (s == 1 && quartic_residue(x as i64, y) != quartic_residue(y as i64, x))
        })
}

/// Odd class number of the real biquadratic field Q(√a, √b).
pub fn biquad_odd(a: u64, b: u64) -> bool {
    let [x, y, z] = subfields(a, b);
    biquad_pair_odd(x, y) || biquad_pair_odd(x, z) || biquad_pair_odd(y, z)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    A,
    B,
    C,
    D,
    E,
    F,
}

/// A labeling of K = Q(√x, √y) as one of the forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormMatch {
    pub form: Form,
    pub x: u64,
    pub y: u64,
    /// Roles for forms A–C.
    pub tuple: Option<PrimeTuple>,
}

fn odd_primes_of(n: u64) -> Vec<u64> {
    prime_divisors(n).into_iter().filter(|&p| p != 2).collect()
}

fn labeling(x: u64, y: u64) -> Option<FormMatch> {
    let m = |form, tuple| Some(FormMatch { form, x, y, tuple });
    if q3(x) && y > 1 && y % 2 == 1 && y % x != 0 {
        return m(Form::A, Some(PrimeTuple { qs: vec![x], delta: 1, primes: odd_primes_of(y) }));
    }
    if x % 2 == 0 && q3(x / 2) && y % 4 == 1 {
        let q = x / 2;
        let (delta, rest) = if y % q == 0 { (q, y / q) } else { (1, y) };
        if rest > 1 {
            return m(Form::B, Some(PrimeTuple { qs: vec![q], delta, primes: odd_primes_of(rest) }));
        }
    }
    if let Some((a, b)) = two_q3(x) {
        if let Some((q1, q2)) = form_c_roles(a, b) {
            if y % 4 == 1 && y % x != 0 {
                let delta = [q1, q2].into_iter().find(|&qi| y % qi == 0).unwrap_or(1);
                let rest = y / delta;
                if rest > 1 {
                    return m(Form::C, Some(PrimeTuple { qs: vec![q1, q2], delta, primes: odd_primes_of(rest) }));
                }
            }
            let odd = if y % 2 == 0 { y / 2 } else { y };
            if odd % 4 == 3 && odd % x != 0 {
                let f = if q1 % 8 == 7 { Form::D } else { Form::E };
                return m(f, None);
            }
        }
    }
    if p1(x) {
        let f = match two_q3(y) {
            Some((a, b)) => l(a, x) == -1 || l(b, x) == -1 || a % 8 == 3 || b % 8 == 3,
            None => {
                (q3(y) && (l(x, y) == -1 || x % 8 == 5))
                    || (p1(y) && (l(x, y) == -1 || quartic_residue(x as i64, y) != quartic_residue(y as i64, x)))
            }
        };
        if f {
            return m(Form::F, None);
        }
    }
    None
}

/// Every labeling of Q(√a, √b) as one of the forms A–F.
pub fn qo_form(a: u64, b: u64) -> Vec<FormMatch> {
    let s = subfields(a, b);
    let mut out = Vec::new();
    for &x in &s {
        for &y in &s {
            if x != y {
                out.extend(labeling(x, y));
            }
        }
    }
    out
}

/// Q(√δ₀, √r) or Q(√δ₀, √rs) with δ₀ ∈ {q, q₁q₂}, r ≡ 1 (mod 8) and (δ₀/r) = 1.
pub fn is_l_type(a: u64, b: u64) -> bool {
    let s = subfields(a, b);
    s.iter().any(|&d0| {
        (q3(d0) || two_q3(d0).is_some())
            && s.iter().any(|&y| {
                let ps = prime_divisors(y);
                y != d0 && y % 2 == 1 && ps.len() <= 2 && ps.iter().any(|&p| p % 8 == 1 && l(d0, p) == 1)
            })
    })
}

/// Roles after a permutation: q (or q₁ for form C), and r, s, t.
#[derive(Debug, Clone, Copy)]
pub struct Roles {
    pub q: u64,
    pub q2: u64,
    pub p: [u64; 3],
}

impl Roles {
    fn q8(&self) -> u64 {
        self.q % 8
    }
    fn m(&self, i: usize) -> u64 {
        self.p[i] % 8
    }
    /// (q/p_i) for forms A and B, (q₁q₂/p_i) for C.
    fn s(&self, i: usize) -> i8 {
        l(self.q * self.q2, self.p[i])
    }
    /// (q₁/p_i) for form C.
    fn s1(&self, i: usize) -> i8 {
        l(self.q, self.p[i])
    }
    fn signs(&self, v: &[i8]) -> bool {
        v.iter().enumerate().all(|(i, &x)| self.s(i) == x)
    }
    fn mods(&self, v: &[u64]) -> bool {
        v.iter().enumerate().all(|(i, &x)| self.m(i) == x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaKind {
    One,
    Q,
    Any,
}

/// One sub-condition of one item of the classification.
pub struct CaseRow {
    pub item: u8,
    pub cond: u8,
    pub form: Form,
    pub delta: DeltaKind,
    pub primes: usize,
    pub rank: u32,
    pub pred: fn(&Roles) -> bool,
}

const fn row(item: u8, cond: u8, form: Form, delta: DeltaKind, primes: usize, rank: u32, pred: fn(&Roles) -> bool) -> CaseRow {
    CaseRow { item, cond, form, delta, primes, rank, pred }
}

use DeltaKind::{Any, One, Q as DQ};
use Form::{A, B, C};

pub static CASES: &[CaseRow] = &[
    row(1, 1, A, One, 1, 0, |x| matches!(x.m(0), 3 | 5)),
    row(1, 2, A, One, 1, 0, |x| x.m(0) == 7 && x.q8() == 3),
    row(2, 1, A, One, 2, 1, |x| x.signs(&[-1, -1]) && x.mods(&[5, 3])),
    row(2, 2, A, One, 2, 1, |x| x.signs(&[-1, -1]) && matches!(x.m(0), 3 | 5) && x.m(1) == 7 && x.q8() == 3),
    row(3, 1, A, One, 2, 1, |x| x.signs(&[-1, 1]) && x.m(0) == 5 && matches!(x.m(1), 3 | 5)),
    row(3, 2, A, One, 2, 1, |x| x.signs(&[-1, 1]) && x.mods(&[3, 3]) && x.q8() == 7),
    row(3, 3, A, One, 2, 1, |x| x.signs(&[-1, 1]) && x.mods(&[3, 5])),
    row(3, 4, A, One, 2, 1, |x| x.signs(&[-1, 1]) && x.m(0) == 7 && matches!(x.m(1), 3 | 5) && x.q8() == 3),
    row(3, 5, A, One, 2, 1, |x| x.signs(&[-1, 1]) && matches!(x.m(0), 3 | 5) && x.m(1) == 7 && x.q8() == 3),
    row(4, 1, A, One, 2, 1, |x| x.signs(&[1, 1]) && x.m(0) == 7 && matches!(x.m(1), 3 | 5) && x.q8() == 3),
    row(4, 2, A, One, 2, 1, |x| x.signs(&[1, 1]) && x.mods(&[3, 5])),
    row(5, 1, A, One, 2, 2, |x| x.signs(&[1, 1]) && x.m(0) == x.m(1) && matches!(x.m(0), 3 | 5)),
    row(6, 1, A, One, 3, 2, |x| x.signs(&[1, 1, -1]) && x.mods(&[3, 5, 5])),
    row(6, 2, A, One, 3, 2, |x| x.signs(&[1, 1, -1]) && x.mods(&[3, 5, 3]) && x.q8() == 7),
    row(6, 3, A, One, 3, 2, |x| x.signs(&[1, 1, -1]) && x.mods(&[3, 5, 7]) && x.q8() == 3),
    row(7, 1, A, One, 3, 2, |x| x.signs(&[1, -1, -1]) && x.mods(&[5, 3, 5])),
    row(7, 2, A, One, 3, 2, |x| x.signs(&[1, -1, -1]) && x.mods(&[5, 7, 3]) && x.q8() == 3),
    row(8, 1, A, One, 3, 2, |x| x.signs(&[1, -1, -1]) && x.mods(&[3, 3, 5]) && x.q8() == 7),
    row(8, 2, A, One, 3, 2, |x| x.signs(&[1, -1, -1]) && x.mods(&[3, 5, 7]) && x.q8() == 3),
    row(9, 1, A, One, 3, 2, |x| x.signs(&[-1, -1, -1]) && x.mods(&[3, 5, 7]) && x.q8() == 3),
    row(10, 1, B, One, 1, 0, |x| x.m(0) == 5),
    row(11, 1, B, One, 2, 1, |x| x.signs(&[-1, -1]) && x.mods(&[3, 7]) && x.q8() == 3),
    row(12, 1, B, One, 2, 1, |x| x.signs(&[-1, 1]) && x.mods(&[5, 5])),
    row(12, 2, B, One, 2, 1, |x| x.signs(&[-1, 1]) && x.mods(&[3, 3]) && x.q8() == 7),
    row(12, 3, B, One, 2, 1, |x| x.signs(&[-1, 1]) && x.mods(&[7, 3]) && x.q8() == 3),
    row(12, 4, B, One, 2, 1, |x| x.signs(&[-1, 1]) && x.mods(&[3, 7]) && x.q8() == 3),
    row(13, 1, B, One, 2, 1, |x| x.signs(&[1, 1]) && x.mods(&[7, 3]) && x.q8() == 3),
    row(14, 1, B, One, 2, 2, |x| x.signs(&[-1, -1]) && x.m(0) == x.m(1) && matches!(x.m(0), 3 | 5)),
    row(15, 1, B, One, 3, 2, |x| x.signs(&[-1, -1, 1]) && x.mods(&[3, 5, 3]) && x.q8() == 7),
    row(15, 2, B, One, 3, 2, |x| x.signs(&[-1, -1, -1]) && x.mods(&[3, 5, 7]) && x.q8() == 3),
    row(16, 1, B, One, 3, 2, |x| x.signs(&[-1, 1, 1]) && x.mods(&[3, 3, 5]) && x.q8() == 7),
    row(16, 2, B, One, 3, 2, |x| x.signs(&[-1, -1, 1]) && x.mods(&[3, 7, 5]) && x.q8() == 3),
    row(16, 3, B, One, 3, 2, |x| x.signs(&[-1, -1, 1]) && x.mods(&[5, 7, 3]) && x.q8() == 3),
    row(16, 4, B, One, 3, 2, |x| x.signs(&[1, -1, 1]) && x.mods(&[3, 7, 5]) && x.q8() == 3),
    row(17, 1, B, DQ, 1, 0, |x| x.m(0) == 3),
    row(17, 2, B, DQ, 1, 0, |x| x.m(0) == 7 && x.q8() == 3),
    row(18, 1, B, DQ, 2, 1, |x| x.signs(&[-1, -1]) && x.mods(&[5, 3])),
    row(18, 2, B, DQ, 2, 1, |x| x.signs(&[-1, -1]) && x.mods(&[5, 7]) && x.q8() == 3),
    row(19, 1, B, DQ, 2, 1, |x| x.signs(&[-1, 1]) && x.mods(&[5, 3])),
    row(19, 2, B, DQ, 2, 1, |x| x.signs(&[-1, 1]) && x.mods(&[3, 5])),
    row(19, 3, B, DQ, 2, 1, |x| x.signs(&[-1, 1]) && x.mods(&[7, 5]) && x.q8() == 3),
    row(19, 4, B, DQ, 2, 1, |x| x.signs(&[-1, 1]) && x.mods(&[5, 7]) && x.q8() == 3),
    row(20, 1, B, DQ, 2, 1, |x| x.signs(&[1, 1]) && x.mods(&[7, 5]) && x.q8() == 3),
    row(20, 2, B, DQ, 2, 1, |x| x.signs(&[1, 1]) && x.mods(&[3, 5])),
    row(21, 1, B, DQ, 3, 2, |x| x.signs(&[-1, -1, 1]) && x.mods(&[3, 5, 5])),
    row(22, 1, B, DQ, 3, 2, |x| x.signs(&[-1, 1, 1]) && x.mods(&[5, 3, 5])),
    row(23, 1, C, Any, 1, 0, |x| x.m(0) == 3),
    row(23, 2, C, Any, 1, 0, |x| x.m(0) == 5 && x.q8() == 3 && x.s(0) == -1),
    row(23, 3, C, Any, 1, 0, |x| x.m(0) == 5 && x.q8() == 7 && x.s1(0) == -1),
    row(23, 4, C, Any, 1, 0, |x| x.m(0) == 7 && x.q8() == 3),
    row(24, 1, C, One, 1, 1, |x| x.m(0) == 5 && x.s(0) == 1 && x.s1(0) == 1),
    row(25, 1, C, Any, 2, 1, |x| x.signs(&[-1, -1]) && x.mods(&[5, 3]) && (x.q8() == 3 || x.s1(0) == -1)),
    row(25, 2, C, Any, 2, 1, |x| x.signs(&[-1, -1]) && x.mods(&[3, 3]) && x.q8() == 7 && x.s1(0) != x.s1(1)),
    row(25, 3, C, Any, 2, 1, |x| x.signs(&[-1, -1]) && x.mods(&[3, 7]) && x.q8() == 3),
    row(26, 1, C, Any, 2, 1, |x| x.signs(&[-1, 1]) && x.mods(&[3, 3]) && x.q8() == 7 && x.s1(0) == 1 && x.s1(1) == -1),
    row(26, 2, C, Any, 2, 1, |x| x.signs(&[-1, 1]) && x.mods(&[3, 5]) && x.q8() == 7 && x.s1(1) == -1),
    row(26, 3, C, Any, 2, 1, |x| x.signs(&[-1, 1]) && x.mods(&[5, 3]) && (x.q8() == 3 || x.s1(0) == -1)),
    row(27, 1, C, Any, 2, 1, |x| x.signs(&[1, 1]) && x.mods(&[3, 3]) && x.q8() == 7 && x.s1(0) != x.s1(1)),
    row(27, 2, C, Any, 2, 1, |x| x.signs(&[1, 1]) && x.mods(&[5, 3]) && x.q8() == 7 && x.s1(0) == -1),
    row(28, 1, C, Any, 2, 2, |x| {
        x.signs(&[-1, 1])
            && x.mods(&[5, 5])
            && ((x.q8() == 3 && x.s1(1) == 1) || (x.q8() == 7 && x.s1(0) == -1 && x.s1(1) == 1))
    }),
    row(28, 2, C, Any, 2, 2, |x| x.signs(&[-1, 1]) && x.mods(&[3, 5]) && x.s1(1) == 1),
    row(29, 1, C, Any, 2, 2, |x| x.signs(&[1, 1]) && x.mods(&[7, 5]) && x.q8() == 3 && x.s1(1) == 1),
    row(29, 2, C, Any, 2, 2, |x| x.signs(&[1, 1]) && x.mods(&[7, 3]) && x.q8() == 3 && x.s1(0) == x.s1(1)),
    row(29, 3, C, Any, 2, 2, |x| x.signs(&[1, 1]) && x.mods(&[3, 3]) && x.s1(0) == x.s1(1)),
    row(29, 4, C, Any, 2, 2, |x| x.signs(&[1, 1]) && x.mods(&[5, 5]) && x.q8() == 7 && (x.s1(0) == -1 || x.s1(1) == -1)),
    row(29, 5, C, Any, 2, 2, |x| x.signs(&[1, 1]) && x.mods(&[5, 3]) && x.s1(0) == 1),
];

/// A matched row with the labeling and role order that matched it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CasePrediction {
    pub item: u8,
    pub cond: u8,
    pub form: Form,
    pub tuple: PrimeTuple,
    pub rank: u32,
}

fn delta_kind(form: Form, t: &PrimeTuple) -> DeltaKind {
    match (form, t.delta) {
        (_, 1) => One,
        (Form::B, _) => DQ,
        _ => Any,
    }
}

fn permutations(ps: &[u64]) -> Vec<Vec<u64>> {
    match ps.len() {
        1 => vec![ps.to_vec()],
        2 => vec![vec![ps[0], ps[1]], vec![ps[1], ps[0]]],
        3 => {
            let (a, b, c) = (ps[0], ps[1], ps[2]);
            vec![vec![a, b, c], vec![a, c, b], vec![b, a, c], vec![b, c, a], vec![c, a, b], vec![c, b, a]]
        }
        _ => Vec::new(),
    }
}

/// All rows matched by K = Q(√a, √b) under any labeling and permutation.
pub fn matching_rows(a: u64, b: u64) -> Vec<CasePrediction> {
    let mut out: Vec<CasePrediction> = Vec::new();
    if is_l_type(a, b) {
        return out;
    }
    for fm in qo_form(a, b) {
        let Some(t) = fm.tuple else { continue };
        let dk = delta_kind(fm.form, &t);
        let (q, q2) = if fm.form == Form::C { (t.qs[0], t.qs[1]) } else { (t.qs[0], 1) };
        for perm in permutations(&t.primes) {
            let mut p = [0u64; 3];
            p[..perm.len()].copy_from_slice(&perm);
            let roles = Roles { q, q2, p };
            for r in CASES {
                if r.form == fm.form
                    && r.primes == perm.len()
                    && (r.delta == Any || r.delta == dk)
                    && (r.pred)(&roles)
                {
                    let tuple = PrimeTuple { qs: t.qs.clone(), delta: t.delta, primes: perm.clone() };
                    if !out.iter().any(|c| c.item == r.item && c.cond == r.cond) {
                        out.push(CasePrediction { item: r.item, cond: r.cond, form: fm.form, tuple, rank: r.rank });
                    }
                }
            }
        }
    }
    out
}

/// The item of the classification K belongs to, if any.
pub fn main_theorem_case(a: u64, b: u64) -> Result<Option<CasePrediction>, ClassifyError> {
    let rows = matching_rows(a, b);
    match rows.first() {
        None => Ok(None),
        Some(first) if rows.iter().all(|c| c.rank == first.rank) => Ok(Some(first.clone())),
        Some(_) => Err(ClassifyError::Conflict(a, b)),
    }
}

fn shape_of(form: Form) -> Option<Shape> {
    match form {
        Form::A => Some(Shape::A),
        Form::B => Some(Shape::B),
        Form::C => Some(Shape::C),
        _ => None,
    }
}

/// Ranks of A(K) and A(K₁); equal ranks persist along K_∞/K.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stabilization {
    pub rank0: u32,
    pub rank1: u32,
    pub stable: bool,
}

pub fn stabilization_check<O: Oracle + ?Sized>(form: Form, tuple: &PrimeTuple, oracle: &O) -> Result<Option<Stabilization>, ClassifyError> {
    let Some(shape) = shape_of(form) else { return Ok(None) };
    let k = RelativeQuadExt::new(shape, tuple.clone())?;
    let rank0 = rank_a(&k, oracle)?.rank;
    let rank1 = rank_a(&k.level_one()?, oracle)?.rank;
    Ok(Some(Stabilization { rank0, rank1, stable: rank0 == rank1 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::odd_primes;
    use crate::oracle::Direct;

    #[test]
    fn quadratic_parity_list() {
        for d in [2u64, 3, 5, 6, 7, 13, 21, 22] {
            assert!(quad_odd(d), "{d}");
        }
        for d in [10u64, 15, 30, 34, 65] {
            assert!(!quad_odd(d), "{d}");
        }
    }

    #[test]
    fn biquadratic_parity_examples() {
        assert!(biquad_odd(2, 3));
        assert!(biquad_odd(3, 7));
        assert!(biquad_odd(3, 5));
        // (13/3) = 1 and 13 ≡ 5 (mod 8)
        assert!(biquad_odd(3, 13));
        // 73 ≡ 1 (mod 8) and (73/3) = 1
        assert!(!biquad_odd(3, 73));
        assert!(!biquad_odd(3, 95));
    }

    #[test]
    fn forms_of_examples() {
        let f = qo_form(6, 85);
        assert!(f.iter().any(|m| m.form == Form::B && m.tuple.as_ref().unwrap().qs == vec![3]));
        let c = qo_form(21, 5);
        assert!(c.iter().any(|m| m.form == Form::C && m.tuple.as_ref().unwrap().qs == vec![7, 3]));
        assert!(qo_form(5, 21).iter().all(|m| m.form != Form::A));
    }

    #[test]
    fn l_type_detection() {
        assert!(is_l_type(7, 113));
        assert!(is_l_type(3, 73 * 5));
        assert!(!is_l_type(3, 5));
    }

    #[test]
    fn first_items() {
        let c = main_theorem_case(6, 5).unwrap().unwrap();
        assert_eq!((c.item, c.rank), (10, 0));
        let c = main_theorem_case(3, 19).unwrap().unwrap();
        assert_eq!((c.item, c.rank), (1, 0));
        let c = main_theorem_case(3, 19 * 7).unwrap();
        assert_eq!(c.map(|c| c.rank), Some(1));
        assert!(main_theorem_case(3, 73).unwrap().is_none());
    }

    #[test]
    fn every_item_has_a_row() {
        for item in 1..=29u8 {
            assert!(CASES.iter().any(|r| r.item == item), "{item}");
        }
    }

    #[test]
    fn stabilization_of_small_fields() {
        let o = Direct::default();
        let t = PrimeTuple { qs: vec![3], delta: 1, primes: vec![19] };
        let s = stabilization_check(Form::A, &t, &o).unwrap().unwrap();
        assert_eq!((s.rank0, s.rank1, s.stable), (0, 0, true));
        for r in odd_primes(5, 60) {
            let t = PrimeTuple { qs: vec![3], delta: 1, primes: vec![r] };
            if let Some(c) = main_theorem_case(3, r).unwrap() {
                let s = stabilization_check(c.form, &t, &o).unwrap().unwrap();
                assert_eq!((s.rank0, s.rank1), (c.rank, c.rank), "r = {r}");
            }
        }
    }
}
