//! Rank of the 2-class group of a quadratic extension K = F(√d) over a base
//! F of odd class number, from the ambiguous class number formula
//!
//!   rank A(K) = t − 1 − e,
//!
//! where t counts the primes of F ramified in K and 2^e is the index of the
//! units of F that are norms from K. By the Hasse norm theorem e is the
//! GF(2)-rank of the matrix of Hilbert symbols (u, d)_P, with u running over
//! unit generators of F and P over the ramified primes.
//!
//! The symbols are produced by two independent routes. The rule route uses
//! only decomposition types, relative norms and square classes; where it
//! cannot decide an entry, a single-prime extension is settled through the
//! 2-class number of an auxiliary quadratic field. The residue-field route
//! reduces exact unit expressions modulo each prime ideal. Every call
//! compares them and reports a mismatch as an error.

pub mod lemmas;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use thiserror::Error;

use crate::arith::{is_prime, legendre, prime_divisors, scholz_formula, squarefree_part};
use crate::formclass::FormError;
use crate::gf2::{rank as gf2_rank, BitRow};
use crate::multiquad::{wada_unit_index, MqError, MultiquadField};
use crate::oracle::Oracle;
use crate::quadunits::UnitError;
use crate::radical::{Ctx, Elem, MqField, Q};
use crate::residue::{El, Fp2};

pub use lemmas::RankClaim;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankError {
    #[error(transparent)]
    Unit(#[from] UnitError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Multiquad(#[from] MqError),
    #[error("invalid prime tuple for shape {shape:?}: {reason}")]
    BadTuple { shape: Shape, reason: String },
    #[error("no unit generators for base {0:?}")]
    UnsupportedBase(Vec<u64>),
    #[error("F({ext}) is ramified over 2 for base {base:?}")]
    RamifiedAtTwo { base: Vec<u64>, ext: u64 },
    #[error("{p} is not an odd prime unramified in the base {base:?}")]
    NotUnramified { base: Vec<u64>, p: u64 },
    #[error("no prime of the base ramifies in F(√{ext})")]
    Unramified { ext: u64 },
    #[error("a unit coefficient has a denominator divisible by {0}")]
    Denominator(u64),
    #[error("product formula fails for base {base:?}, ext {ext}, row {row}")]
    ProductFormula { base: Vec<u64>, ext: u64, row: String },
    #[error("symbol routes disagree for base {base:?}, ext {ext}: {method:?} gives e = {route_e}, residue fields give {direct_e}")]
    SymbolMismatch { base: Vec<u64>, ext: u64, method: Method, route_e: u32, direct_e: u32 },
    #[error("rank {rank} for {shape:?} {tuple:?} contradicts the table value {claim}")]
    TableMismatch { shape: Shape, tuple: PrimeTuple, rank: u32, claim: RankClaim },
}

/// Base and extension shapes. A, B, C are K/F with F = Q(√q), Q(√2q),
/// Q(√q₁q₂); the suffix 1 is the first layer K₁ = K(√2) over F(√2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    A,
    B,
    C,
    A1,
    B1,
    C1,
}

impl Shape {
    pub fn level(self) -> u32 {
        match self {
            Shape::A | Shape::B | Shape::C => 0,
            _ => 1,
        }
    }

    pub fn level_one(self) -> Shape {
        match self {
            Shape::A | Shape::A1 => Shape::A1,
            Shape::B | Shape::B1 => Shape::B1,
            Shape::C | Shape::C1 => Shape::C1,
        }
    }

    pub fn level_zero(self) -> Shape {
        match self {
            Shape::A | Shape::A1 => Shape::A,
            Shape::B | Shape::B1 => Shape::B,
            Shape::C | Shape::C1 => Shape::C,
        }
    }
}

/// qs = [q] or [q₁, q₂]; d = δ·∏ primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeTuple {
    pub qs: Vec<u64>,
    pub delta: u64,
    pub primes: Vec<u64>,
}

impl PrimeTuple {
    pub fn d(&self) -> u64 {
        self.delta * self.primes.iter().product::<u64>()
    }
}

/// (q₁, q₂) for F = Q(√q₁q₂): q₂ ≡ 3 (mod 8), the smaller one if both are.
pub fn form_c_roles(a: u64, b: u64) -> Option<(u64, u64)> {
    let ok = |p: u64| is_prime(p) && p % 4 == 3;
    if a == b || !ok(a) || !ok(b) {
        return None;
    }
    let (lo, hi) = (a.min(b), a.max(b));
    match (lo % 8, hi % 8) {
        (3, _) => Some((hi, lo)),
        (_, 3) => Some((lo, hi)),
        _ => None,
    }
}

/// Smallest squarefree representative of d modulo squares and the base radicands.
fn canonical_ext(d: u64, base: &[u64]) -> u64 {
    subgroup(base).into_iter().map(|b| squarefree_part(d * b).0).min().unwrap_or(d)
}

/// Squarefree classes generated by the radicands.
fn subgroup(rads: &[u64]) -> Vec<u64> {
    let mut g = vec![1u64];
    for &r in rads {
        let more: Vec<u64> = g.iter().map(|&x| squarefree_part(x * r).0).collect();
        g.extend(more);
    }
    g.sort_unstable();
    g.dedup();
    g
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeQuadExt {
    pub shape: Shape,
    pub tuple: PrimeTuple,
    pub base: Vec<u64>,
    pub ext: u64,
}

impl RelativeQuadExt {
    pub fn new(shape: Shape, tuple: PrimeTuple) -> Result<Self, RankError> {
        let bad = |reason: &str| RankError::BadTuple { shape, reason: reason.into() };
        let mut seen: Vec<u64> = tuple.primes.clone();
        seen.extend(&tuple.qs);
        seen.sort_unstable();
        let n = seen.len();
        seen.dedup();
        if seen.len() != n || tuple.primes.is_empty() {
            return Err(bad("primes must be distinct and d must have a prime factor"));
        }
        if tuple.primes.iter().any(|&p| p == 2 || !is_prime(p)) {
            return Err(bad("r, s, t must be odd primes"));
        }
        let d = tuple.d();
        let base = match shape.level_zero() {
            Shape::A => {
                let [q] = tuple.qs[..] else { return Err(bad("one q expected")) };
                if !(is_prime(q) && q % 4 == 3) || tuple.delta != 1 {
                    return Err(bad("q ≡ 3 (mod 4) prime and δ = 1"));
                }
                vec![q]
            }
            Shape::B => {
                let [q] = tuple.qs[..] else { return Err(bad("one q expected")) };
                if !(is_prime(q) && q % 4 == 3) || !(tuple.delta == 1 || tuple.delta == q) || d % 4 != 1 {
                    return Err(bad("q ≡ 3 (mod 4), δ ∈ {1, q}, d ≡ 1 (mod 4)"));
                }
                vec![2 * q]
            }
            _ => {
                let [q1, q2] = tuple.qs[..] else { return Err(bad("q1, q2 expected")) };
                if form_c_roles(q1, q2) != Some((q1, q2)) {
                    return Err(bad("q1 ≡ 3 (mod 4), q2 ≡ 3 (mod 8) in canonical order"));
                }
                if !(tuple.delta == 1 || tuple.delta == q1 || tuple.delta == q2) || d % 4 != 1 {
                    return Err(bad("δ ∈ {1, q1, q2}, d ≡ 1 (mod 4)"));
                }
                vec![q1 * q2]
            }
        };
        let (base, ext) = if shape.level() == 0 {
            (base, d)
        } else {
            let b1 = match shape {
                Shape::C1 => vec![base[0], 2],
                _ => vec![tuple.qs[0], 2],
            };
            let e = canonical_ext(d, &b1);
            (b1, e)
        };
        Ok(RelativeQuadExt { shape, tuple, base, ext })
    }

    pub fn level_one(&self) -> Result<Self, RankError> {
        Self::new(self.shape.level_one(), self.tuple.clone())
    }

    /// The top field F(√d) as a multiquadratic field.
    pub fn top_field(&self) -> Result<MultiquadField, MqError> {
        let mut g = self.base.clone();
        g.push(self.ext);
        MultiquadField::new(&g)
    }

    /// Odd primes of d that are unramified in F; exactly these ramify in K/F.
    pub fn active_primes(&self) -> Vec<u64> {
        prime_divisors(self.ext).into_iter().filter(|&p| p != 2 && self.base.iter().all(|&b| b % p != 0)).collect()
    }

    fn unramified_at_two(&self) -> bool {
        subgroup(&self.base).into_iter().any(|b| squarefree_part(self.ext * b).0 % 4 == 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGenerator {
    pub label: String,
    pub elem: Elem,
    /// Set when the generator is the fundamental unit of Q(√d).
    pub quadratic: Option<(u64, i8)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum RelNorm {
    Rational(i64),
    SquareClass(i64),
    Unknown,
}

/// What the rule route needs to know about one generator.
#[derive(Debug, Clone, PartialEq, Eq)]
struct GenFacts {
    rational: Option<i64>,
    /// Radicand of the smallest quadratic subfield containing the generator.
    home: Option<u64>,
    /// Norm to Q from the home field.
    home_norm: Option<i64>,
    /// c with c·u a square in the home field, or in F when there is none.
    square_class: Option<i64>,
    /// Relative norms to each quadratic subfield, for generators outside all of them.
    rel: Vec<(u64, RelNorm)>,
    scholz_base: Option<u64>,
}

/// Unit generators of F modulo squares, with precomputed facts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseUnits {
    pub radicands: Vec<u64>,
    pub ctx: Ctx,
    pub field: MqField,
    pub gens: Vec<UnitGenerator>,
    facts: Vec<GenFacts>,
}

impl BaseUnits {
    pub fn labels(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.label.clone()).collect()
    }
}

fn to_i64(c: &Q) -> Option<i64> {
    c.is_integer().then(|| i64::try_from(c.to_integer()).ok()).flatten()
}

fn sub_field(ctx: &Ctx, d: u64) -> MqField {
    MqField::new(vec![ctx.mask(d).expect("radicand over context")])
}

fn square_class_in(ctx: &Ctx, field: &MqField, x: &Elem) -> Option<i64> {
    let k = ctx.primes().len();
    for s in 0u32..(1 << k) {
        let c = ctx.radicand(s) as i64;
        for c in [c, -c] {
            if field.sqrt(ctx, &x.scale(&Q::from_integer(c.into()))).is_some() {
                return Some(c);
            }
        }
    }
    None
}

/// An automorphism of F that fixes the subfield with mask `k` and nothing larger.
fn flip_fixing(ctx: &Ctx, field: &MqField, k: u32) -> u32 {
    let n = ctx.primes().len();
    (1u32..(1 << n))
        .find(|&f| (k & f).count_ones() % 2 == 0 && field.gens.iter().any(|&g| (g & f).count_ones() % 2 == 1))
        .expect("biquadratic field has a nontrivial automorphism over k")
}

fn gen_facts(ctx: &Ctx, field: &MqField, g: &UnitGenerator) -> GenFacts {
    let u = &g.elem;
    let rational = u.rational_part().as_ref().and_then(to_i64);
    let subs: Vec<u32> = field.subfield_masks();
    let home_mask = subs.iter().copied().find(|&k| u.support().all(|m| m == 0 || m == k));
    let home = home_mask.map(|k| ctx.radicand(k) as u64);
    let home_norm = home_mask.and_then(|k| {
        let flip = 1u32 << k.trailing_zeros();
        u.mul(&u.conj(flip), ctx).rational_part().as_ref().and_then(to_i64)
    });
    let square_class = match home {
        Some(d) => square_class_in(ctx, &sub_field(ctx, d), u),
        None => square_class_in(ctx, field, u),
    };
    let mut rel = Vec::new();
    if home.is_none() && field.gens.len() == 2 {
        for &k in &subs {
            let d = ctx.radicand(k) as u64;
            let n = u.mul(&u.conj(flip_fixing(ctx, field, k)), ctx);
            let r = match n.rational_part().as_ref().and_then(to_i64) {
                Some(v) => RelNorm::Rational(v),
                None => match square_class_in(ctx, &sub_field(ctx, d), &n) {
                    Some(c) => RelNorm::SquareClass(c),
                    None => RelNorm::Unknown,
                },
            };
            rel.push((d, r));
        }
    }
    let scholz_base = match g.quadratic {
        Some((d, -1)) if d == 2 || (d % 4 == 1 && is_prime(d)) => Some(d),
        _ => None,
    };
    GenFacts { rational, home, home_norm, square_class, rel, scholz_base }
}

fn generator<O: Oracle + ?Sized>(oracle: &O, ctx: &Ctx, d: u64) -> Result<UnitGenerator, RankError> {
    let u = oracle.unit(d)?;
    Ok(UnitGenerator { label: format!("eps({d})"), elem: u.elem(ctx), quadratic: Some((d, u.norm)) })
}

fn root_of<O: Oracle + ?Sized>(oracle: &O, ctx: &Ctx, ds: &[u64]) -> Result<Option<Elem>, RankError> {
    let mut w = Elem::one();
    for &d in ds {
        match oracle.unit(d)?.sqrt_elem(ctx) {
            Some(r) => w = w.mul(&r, ctx),
            None => return Ok(None),
        }
    }
    Ok(Some(w))
}

fn root_generator<O: Oracle + ?Sized>(
    oracle: &O,
    ctx: &Ctx,
    field: &MqField,
    choices: &[&[u64]],
) -> Result<Option<UnitGenerator>, RankError> {
    for ds in choices {
        if let Some(w) = root_of(oracle, ctx, ds)? {
            if field.contains(&w) {
                let inner: Vec<String> = ds.iter().map(|d| format!("eps({d})")).collect();
                return Ok(Some(UnitGenerator { label: format!("sqrt({})", inner.join("*")), elem: w, quadratic: None }));
            }
        }
    }
    Ok(None)
}

/// Named generators for the bases that occur in the classification; any
/// other base falls back to a saturated basis.
pub fn compute_base_units<O: Oracle + ?Sized>(oracle: &O, base: &[u64]) -> Result<BaseUnits, RankError> {
    let mq = MultiquadField::new(base)?;
    let ctx = mq.ctx().clone();
    let field = mq.field().clone();
    let minus_one = UnitGenerator { label: "-1".into(), elem: Elem::integer(-1), quadratic: None };
    let named: Option<Vec<UnitGenerator>> = match base {
        [d] => Some(vec![minus_one.clone(), generator(oracle, &ctx, *d)?]),
        [a, 2] => {
            let ps = prime_divisors(*a);
            let all3 = ps.iter().all(|&p| p % 4 == 3);
            if ps.len() == 1 && all3 {
                let s1 = root_generator(oracle, &ctx, &field, &[&[*a]])?;
                let s2 = root_generator(oracle, &ctx, &field, &[&[2 * a]])?;
                match (s1, s2) {
                    (Some(x), Some(y)) => Some(vec![minus_one.clone(), generator(oracle, &ctx, 2)?, x, y]),
                    _ => None,
                }
            } else if ps.len() == 2 && all3 {
                root_generator(oracle, &ctx, &field, &[&[2 * a], &[2 * a, *a]])?.map(|eta| {
                    Ok::<_, RankError>(vec![
                        minus_one.clone(),
                        generator(oracle, &ctx, 2)?,
                        generator(oracle, &ctx, *a)?,
                        eta,
                    ])
                })
                .transpose()?
            } else {
                None
            }
        }
        _ => None,
    };
    let gens = match named {
        Some(g) => g,
        None => {
            let idx = wada_unit_index(&mq, oracle)?;
            idx.labels
                .into_iter()
                .zip(idx.basis)
                .map(|(label, elem)| UnitGenerator { label, elem, quadratic: None })
                .collect()
        }
    };
    let facts = gens.iter().map(|g| gen_facts(&ctx, &field, g)).collect();
    Ok(BaseUnits { radicands: base.to_vec(), ctx, field, gens, facts })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleEntry {
    Value(i8),
    /// Not determined by decomposition types, norms and square classes.
    Indirect,
}

/// Symbols of all generators at the primes of F above one rational prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeColumns {
    pub p: u64,
    pub residue_degree: u32,
    /// [generator][prime ideal]
    pub direct: Vec<Vec<i8>>,
    pub rules: Vec<Vec<RuleEntry>>,
}

impl PrimeColumns {
    pub fn ideal_count(&self) -> usize {
        self.direct.first().map_or(0, Vec::len)
    }
}

fn splits(d: u64, p: u64) -> bool {
    legendre(d as i64, p) == 1
}

fn rule_entry(units: &BaseUnits, g: usize, p: u64, f: u32) -> RuleEntry {
    let fa = &units.facts[g];
    let leg = |c: i64| RuleEntry::Value(legendre(c, p));
    if let Some(c) = fa.rational {
        return if f == 1 { leg(c) } else { RuleEntry::Value(1) };
    }
    if let Some(k) = fa.home {
        if !splits(k, p) {
            return fa.home_norm.map_or(RuleEntry::Indirect, leg);
        }
        if f == 2 {
            return RuleEntry::Value(1);
        }
        if let Some(c) = fa.square_class {
            return leg(c);
        }
        if let Some(m) = fa.scholz_base {
            if let Ok(pair) = scholz_formula(m, p) {
                if pair.first == pair.second {
                    return RuleEntry::Value(pair.first);
                }
            }
        }
        return RuleEntry::Indirect;
    }
    if f == 2 {
        let Some((_, rn)) = fa.rel.iter().find(|(k, _)| splits(*k, p)) else { return RuleEntry::Indirect };
        return match *rn {
            RelNorm::Rational(n) => leg(n),
            RelNorm::SquareClass(c) => leg(c),
            RelNorm::Unknown => RuleEntry::Indirect,
        };
    }
    fa.square_class.map_or(RuleEntry::Indirect, leg)
}

fn frobenius(f: &Fp2, x: El) -> El {
    El(x.0, (f.p - x.1) % f.p)
}

pub fn compute_prime_columns(units: &BaseUnits, p: u64) -> Result<PrimeColumns, RankError> {
    if p == 2 || !is_prime(p) || units.radicands.iter().any(|&b| b % p == 0) {
        return Err(RankError::NotUnramified { base: units.radicands.clone(), p });
    }
    let fp = Fp2::new(p);
    let ctx = &units.ctx;
    let base_roots: Vec<El> = ctx.primes().iter().map(|&l| fp.sqrt_int(l)).collect();
    let k = base_roots.len();
    let mut ideals: Vec<(Vec<El>, Vec<El>)> = Vec::new();
    for s in 0u32..(1 << k) {
        let roots: Vec<El> =
            base_roots.iter().enumerate().map(|(i, &r)| if s >> i & 1 == 1 { fp.neg(r) } else { r }).collect();
        let sig: Vec<El> = units
            .field
            .gens
            .iter()
            .map(|&m| (0..k).filter(|i| m >> i & 1 == 1).fold(El(1, 0), |acc, i| fp.mul(acc, roots[i])))
            .collect();
        let conj: Vec<El> = sig.iter().map(|&x| frobenius(&fp, x)).collect();
        if ideals.iter().any(|(_, t)| *t == sig || *t == conj) {
            continue;
        }
        ideals.push((roots, sig));
    }
    let f = if ideals[0].1.iter().all(|&x| fp.in_prime_field(x)) { 1 } else { 2 };
    debug_assert_eq!(ideals.len() as u64 * f as u64, 1 << units.field.gens.len());
    let mut direct = Vec::new();
    let mut rules = Vec::new();
    for (g, gen) in units.gens.iter().enumerate() {
        let mut row = Vec::new();
        for (roots, _) in &ideals {
            let v = gen.elem.eval(&fp, roots).ok_or(RankError::Denominator(p))?;
            row.push(fp.quadratic_character(v, f));
        }
        direct.push(row);
        rules.push(vec![rule_entry(units, g, p, f); ideals.len()]);
    }
    Ok(PrimeColumns { p, residue_degree: f, direct, rules })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Every symbol from decomposition types, norms and square classes.
    Rules,
    /// A single totally split prime settled by an auxiliary 2-class number.
    IndirectH2,
    /// Reduction of the exact unit expressions modulo each prime ideal.
    ResidueField,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolMatrix {
    pub rows: Vec<String>,
    /// (p, index of the prime ideal above p)
    pub columns: Vec<(u64, usize)>,
    pub entries: Vec<Vec<i8>>,
}

impl SymbolMatrix {
    pub fn gf2_rank(&self) -> u32 {
        gf2_rank(&self.entries.iter().map(|r| BitRow::from_signs(r)).collect::<Vec<_>>()) as u32
    }

    /// Each unit's symbols multiply to 1: the remaining places contribute trivially.
    pub fn product_formula_holds(&self) -> bool {
        self.entries.iter().all(|r| r.iter().map(|&x| x as i32).product::<i32>() == 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankResult {
    pub t: u32,
    pub e: u32,
    pub rank: u32,
    pub method: Method,
    pub direct_e: u32,
    pub matrix: SymbolMatrix,
    pub claim: Option<RankClaim>,
}

/// The auxiliary criterion for K₁ = F(√r) with F = Q(√a, √2) and r ≡ 7 (mod 8)
/// totally split: K₁ is unramified over M = Q(√2ar′, √a) for the relevant
/// prime a′ | a, and A(K₁) is trivial exactly when h₂(2a′r) = 2.
fn indirect_h2<O: Oracle + ?Sized>(ext: &RelativeQuadExt, oracle: &O, active: &[u64], t: u32) -> Result<Option<u32>, RankError> {
    let [a, 2] = ext.base[..] else { return Ok(None) };
    let [r] = active[..] else { return Ok(None) };
    if r % 8 != 7 {
        return Ok(None);
    }
    let ps = prime_divisors(a);
    let q = match ps[..] {
        [q] => q,
        [x, y] => match form_c_roles(x, y) {
            Some((q1, _)) => q1,
            None => return Ok(None),
        },
        _ => return Ok(None),
    };
    let h = oracle.h2(2 * q * r)?;
    let rank = if h == 2 { 0 } else { 1 };
    Ok(Some(t - 1 - rank))
}

/// rank = t − 1 − e, checked against the lemma table where one applies.
pub fn rank_a<O: Oracle + ?Sized>(ext: &RelativeQuadExt, oracle: &O) -> Result<RankResult, RankError> {
    let res = rank_formula(ext, oracle)?;
    if let Some(c) = &res.claim {
        if !c.admits(res.rank) {
            return Err(RankError::TableMismatch {
                shape: ext.shape,
                tuple: ext.tuple.clone(),
                rank: res.rank,
                claim: c.clone(),
            });
        }
    }
    Ok(res)
}

/// rank = t − 1 − e with the table value attached but not enforced.
pub fn rank_formula<O: Oracle + ?Sized>(ext: &RelativeQuadExt, oracle: &O) -> Result<RankResult, RankError> {
    if !ext.unramified_at_two() {
        return Err(RankError::RamifiedAtTwo { base: ext.base.clone(), ext: ext.ext });
    }
    let active = ext.active_primes();
    if active.is_empty() {
        return Err(RankError::Unramified { ext: ext.ext });
    }
    let units = oracle.base_units(&ext.base)?;
    let blocks = active.iter().map(|&p| oracle.prime_columns(&ext.base, p)).collect::<Result<Vec<_>, _>>()?;
    let t: u32 = blocks.iter().map(|b| b.ideal_count() as u32).sum();
    let mut columns = Vec::new();
    for b in &blocks {
        columns.extend((0..b.ideal_count()).map(|i| (b.p, i)));
    }
    let entries: Vec<Vec<i8>> =
        (0..units.gens.len()).map(|g| blocks.iter().flat_map(|b| b.direct[g].iter().copied()).collect()).collect();
    let matrix = SymbolMatrix { rows: units.labels(), columns, entries };
    if let Some(i) = matrix.entries.iter().position(|r| r.iter().map(|&x| x as i32).product::<i32>() != 1) {
        return Err(RankError::ProductFormula { base: ext.base.clone(), ext: ext.ext, row: matrix.rows[i].clone() });
    }
    let direct_e = matrix.gf2_rank();
    let rule_rows: Option<Vec<Vec<i8>>> = (0..units.gens.len())
        .map(|g| {
            blocks
                .iter()
                .flat_map(|b| b.rules[g].iter())
                .map(|e| match e {
                    RuleEntry::Value(v) => Some(*v),
                    RuleEntry::Indirect => None,
                })
                .collect()
        })
        .collect();
    let (method, e) = match rule_rows {
        Some(rows) => (Method::Rules, gf2_rank(&rows.iter().map(|r| BitRow::from_signs(r)).collect::<Vec<_>>()) as u32),
        None => match indirect_h2(ext, oracle, &active, t)? {
            Some(e) => (Method::IndirectH2, e),
            None => (Method::ResidueField, direct_e),
        },
    };
    if e != direct_e {
        return Err(RankError::SymbolMismatch { base: ext.base.clone(), ext: ext.ext, method, route_e: e, direct_e });
    }
    let rank = t - 1 - e;
    let claim = lemmas::claim(ext.shape, &ext.tuple);
    Ok(RankResult { t, e, rank, method, direct_e, matrix, claim })
}
