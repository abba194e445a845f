//! Real multiquadratic fields: the unit index q(K) by 2-saturation, 2-class
//! numbers from Kuroda's class number formula, and the stable 2-class
//! structure along the cyclotomic Z₂-extension for families where it is
//! known in closed form.
//!
//! Saturation starts from −1 and the fundamental units of all quadratic
//! subfields. Residue characters at completely split primes propose which
//! products might be squares; each proposal is then proven by exhibiting the
//! square root exactly, so q(K) never rests on a probabilistic test.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use thiserror::Error;

use crate::arith::{is_prime, is_squarefree, legendre};
use crate::formclass::FormError;
use crate::gf2::{left_kernel, BitRow};
use crate::oracle::Oracle;
use crate::quadunits::{decompose, FundamentalUnit, UnitError};
use crate::radical::{span_rank, Ctx, Elem, MqField};
use crate::residue::{El, Fp2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MqError {
    #[error("radicands {0:?} do not generate a multiquadratic field")]
    BadGenerators(Vec<u64>),
    #[error(transparent)]
    Unit(#[from] UnitError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("unit saturation did not converge for {0:?}")]
    Saturation(Vec<u64>),
    #[error("class number formula is not integral for {radicands:?} (2-exponent {exponent})")]
    NonIntegral { radicands: Vec<u64>, exponent: i64 },
}

/// Q(√d₁, …, √d_n) with independent squarefree radicands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiquadField {
    gens: Vec<u64>,
    ctx: Ctx,
    field: MqField,
}

impl MultiquadField {
    pub fn new(gens: &[u64]) -> Result<Self, MqError> {
        let bad = || MqError::BadGenerators(gens.to_vec());
        if gens.is_empty() || gens.iter().any(|&d| d < 2 || !is_squarefree(d)) {
            return Err(bad());
        }
        let ctx = Ctx::for_radicands(gens);
        let masks: Vec<u32> = gens.iter().map(|&d| ctx.mask(d).ok_or_else(bad)).collect::<Result<_, _>>()?;
        if span_rank(&masks) != masks.len() {
            return Err(bad());
        }
        Ok(MultiquadField { gens: gens.to_vec(), ctx, field: MqField::new(masks) })
    }

    pub fn biquadratic(d1: u64, d2: u64) -> Result<Self, MqError> {
        Self::new(&[d1, d2])
    }

    pub fn generators(&self) -> &[u64] {
        &self.gens
    }

    pub fn degree(&self) -> u64 {
        1 << self.gens.len()
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn field(&self) -> &MqField {
        &self.field
    }

    /// Radicands of the 2ⁿ − 1 quadratic subfields, ascending.
    pub fn subfield_radicands(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.field.subfield_masks().into_iter().map(|m| self.ctx.radicand(m) as u64).collect();
        v.sort_unstable();
        v
    }

    pub fn contains_radicand(&self, d: u64) -> bool {
        self.subfield_radicands().contains(&d)
    }

    pub fn same_field(&self, o: &MultiquadField) -> bool {
        self.subfield_radicands() == o.subfield_radicands()
    }

    /// K(√d).
    pub fn adjoin(&self, d: u64) -> Result<Self, MqError> {
        let mut g = self.gens.clone();
        g.push(d);
        Self::new(&g)
    }
}

#[derive(Debug, Clone)]
enum Source {
    MinusOne,
    Quadratic(Arc<FundamentalUnit>),
    Derived,
}

#[derive(Debug, Clone)]
struct Gen {
    elem: Elem,
    label: String,
    source: Source,
}

/// [E_K : ∏ E_k] over the quadratic subfields k, with a basis of E_K.
#[derive(Debug, Clone)]
pub struct UnitIndex {
    pub q: u64,
    pub log2_q: u32,
    pub labels: Vec<String>,
    pub basis: Vec<Elem>,
}

/// Odd primes ℓ outside the context that split completely in K.
fn split_primes(ctx: &Ctx, gens: &[u64], from: u64, count: usize) -> (Vec<u64>, u64) {
    let mut out = Vec::new();
    let mut l = from.max(3);
    while out.len() < count {
        if is_prime(l) && !ctx.primes().contains(&l) && gens.iter().all(|&d| legendre(d as i64, l) == 1) {
            out.push(l);
        }
        l += 2;
    }
    (out, l)
}

/// Quadratic-character bits of each element at every embedding of K into F_ℓ.
/// Context primes outside K may have their roots in F_ℓ² only; the values
/// of elements of K still land in F_ℓ.
fn character_rows(elems: &[&Elem], ctx: &Ctx, primes: &[u64]) -> Vec<BitRow> {
    let k = ctx.primes().len();
    let mut rows: Vec<Vec<bool>> = vec![Vec::new(); elems.len()];
    for &l in primes {
        let fp = Fp2::new(l);
        let base: Vec<El> = ctx.primes().iter().map(|&p| fp.sqrt_int(p)).collect();
        for signs in 0u32..(1 << k) {
            let roots: Vec<El> =
                base.iter().enumerate().map(|(i, &r)| if signs >> i & 1 == 1 { fp.neg(r) } else { r }).collect();
            let Some(vals) = elems.iter().map(|e| e.eval(&fp, &roots)).collect::<Option<Vec<El>>>() else {
                break;
            };
            if vals.iter().any(|&v| v == El(0, 0)) {
                continue;
            }
            for (row, v) in rows.iter_mut().zip(vals) {
                debug_assert!(fp.in_prime_field(v));
                row.push(fp.quadratic_character(v, 1) == -1);
            }
        }
    }
    rows.into_iter().map(BitRow::from_bits).collect()
}

fn product(ctx: &Ctx, gens: &[Gen], members: &[usize]) -> Elem {
    members.iter().fold(Elem::one(), |acc, &i| acc.mul(&gens[i].elem, ctx))
}

/// An exact square root in K of the product of the given generators.
fn exact_root(f: &MultiquadField, gens: &[Gen], members: &[usize]) -> Option<Elem> {
    let ctx = &f.ctx;
    let structured: Option<Vec<&FundamentalUnit>> = members
        .iter()
        .map(|&i| match &gens[i].source {
            Source::Quadratic(u) if u.norm == 1 => Some(u.as_ref()),
            _ => None,
        })
        .collect();
    if let Some(units) = structured {
        // a root in K, if any, is ± this product of compositum roots
        let mut w = Elem::one();
        for u in units {
            w = w.mul(&u.sqrt_elem(ctx)?, ctx);
        }
        return f.field.contains(&w).then_some(w);
    }
    f.field.sqrt(ctx, &product(ctx, gens, members))
}

const INITIAL_PRIMES: usize = 24;
const MAX_RETRIES: usize = 4;

pub fn wada_unit_index<O: Oracle + ?Sized>(f: &MultiquadField, oracle: &O) -> Result<UnitIndex, MqError> {
    let ctx = &f.ctx;
    let mut gens = vec![Gen { elem: Elem::integer(-1), label: "-1".into(), source: Source::MinusOne }];
    for d in f.subfield_radicands() {
        let u = oracle.unit(d)?;
        gens.push(Gen { elem: u.elem(ctx), label: format!("eps({d})"), source: Source::Quadratic(u) });
    }
    let (mut primes, mut next) = split_primes(ctx, &f.gens, 3, INITIAL_PRIMES);
    let mut log2_q = 0u32;
    let mut retries = 0;
    // each round at least doubles the index, and q divides 2^(#units)
    let mut rounds = 0;
    loop {
        let rows = character_rows(&gens.iter().map(|g| &g.elem).collect::<Vec<_>>(), ctx, &primes);
        let ker = left_kernel(&rows);
        if ker.is_empty() {
            break;
        }
        rounds += 1;
        if rounds > gens.len() {
            return Err(MqError::Saturation(f.gens.clone()));
        }
        let mut roots = Vec::new();
        for (pivot, tag) in &ker {
            let members: Vec<usize> = (0..gens.len()).filter(|&i| tag.get(i)).collect();
            match exact_root(f, &gens, &members) {
                Some(w) => {
                    let label = format!(
                        "sqrt({})",
                        members.iter().map(|&i| gens[i].label.as_str()).collect::<Vec<_>>().join("*")
                    );
                    roots.push((*pivot, w, label));
                }
                None => break,
            }
        }
        if roots.len() < ker.len() {
            // a character coincidence: widen the prime set
            retries += 1;
            if retries > MAX_RETRIES {
                return Err(MqError::Saturation(f.gens.clone()));
            }
            let (more, n) = split_primes(ctx, &f.gens, next, INITIAL_PRIMES);
            primes.extend(more);
            next = n;
            rounds -= 1;
            continue;
        }
        log2_q += roots.len() as u32;
        for (pivot, w, label) in roots {
            gens[pivot] = Gen { elem: w, label, source: Source::Derived };
        }
    }
    Ok(UnitIndex {
        q: 1 << log2_q,
        log2_q,
        labels: gens.iter().map(|g| g.label.clone()).collect(),
        basis: gens.into_iter().map(|g| g.elem).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KurodaH2 {
    pub h2: u64,
    pub q: u64,
    /// Exponent of the power of 2 dividing the product side of the formula.
    pub v: u32,
    /// (d, h₂(d)) for each quadratic subfield.
    pub subfields: Vec<(u64, u64)>,
}

/// h₂(K) = q(K)·∏ h₂(k)/2^v over the quadratic subfields k, where
/// v = n(2^(n−1) − 1) for K of degree 2ⁿ.
pub fn kuroda_h2<O: Oracle + ?Sized>(f: &MultiquadField, oracle: &O) -> Result<KurodaH2, MqError> {
    let n = f.gens.len() as u32;
    let subfields: Vec<(u64, u64)> =
        f.subfield_radicands().into_iter().map(|d| Ok((d, oracle.h2(d)?))).collect::<Result<_, FormError>>()?;
    if n == 1 {
        return Ok(KurodaH2 { h2: subfields[0].1, q: 1, v: 0, subfields });
    }
    let idx = wada_unit_index(f, oracle)?;
    let v = n * ((1 << (n - 1)) - 1);
    let exponent =
        idx.log2_q as i64 + subfields.iter().map(|&(_, h)| h.trailing_zeros() as i64).sum::<i64>() - v as i64;
    if exponent < 0 {
        return Err(MqError::NonIntegral { radicands: f.gens.clone(), exponent });
    }
    Ok(KurodaH2 { h2: 1 << exponent, q: idx.q, v, subfields })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilityCheck {
    pub h2_k: u64,
    pub h2_k1: u64,
    /// Equal orders in the first layer force A(K_n) ≅ A(K) for all n.
    pub stable: bool,
}

pub fn fukuda_h2_stable<O: Oracle + ?Sized>(f: &MultiquadField, oracle: &O) -> Result<StabilityCheck, MqError> {
    let h2_k = kuroda_h2(f, oracle)?.h2;
    let h2_k1 = kuroda_h2(&f.adjoin(2)?, oracle)?.h2;
    Ok(StabilityCheck { h2_k, h2_k1, stable: h2_k == h2_k1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StableGroup {
    Trivial,
    /// Z/2^k
    Cyclic(u32),
    /// Z/2 × Z/2^k
    TwoTimesCyclic(u32),
}

impl StableGroup {
    pub fn log2_order(&self) -> u32 {
        match *self {
            StableGroup::Trivial => 0,
            StableGroup::Cyclic(k) => k,
            StableGroup::TwoTimesCyclic(k) => k + 1,
        }
    }

    pub fn rank(&self) -> u32 {
        match *self {
            StableGroup::Trivial => 0,
            StableGroup::Cyclic(k) => (k > 0) as u32,
            StableGroup::TwoTimesCyclic(k) => 1 + (k > 0) as u32,
        }
    }
}

impl core::fmt::Display for StableGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match *self {
            StableGroup::Trivial => write!(f, "1"),
            StableGroup::Cyclic(k) => write!(f, "Z/{}", 1u64 << k),
            StableGroup::TwoTimesCyclic(k) => write!(f, "Z/2xZ/{}", 1u64 << k),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureFamily {
    /// q ≡ r ≡ 3, s ≡ 7 (mod 8), (q/r) = (q/s) = −1, (s/r) = 1, s(a−1) not a square
    CyclicQrs,
    /// r ≡ s ≡ 3, q ≡ 7 (mod 8), (q/r) = (q/s) = 1, q(a−1) not a square
    SplitQrs,
    /// q ≡ r ≡ s ≡ 3 (mod 4) in one of five symbol patterns; A(K∞) ≅ Z/2
    ElementaryQrs,
    /// h₂(K) = h₂(K₁) ≤ 2, so the module is determined by its order
    SmallStable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IwasawaInvariants {
    pub lambda: u32,
    pub mu: u32,
    pub nu: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    pub family: StructureFamily,
    pub group: StableGroup,
    pub invariants: IwasawaInvariants,
    /// (q, r, s) when K = Q(√q, √rs)
    pub roles: Option<(u64, u64, u64)>,
    /// h₂(qrs) = 2^m for the two qrs families
    pub m: Option<u32>,
}

/// |A(K_n)| = 2^(μ2ⁿ + λn + ν) for n past the stabilization index.
pub fn iwasawa_hn(inv: &IwasawaInvariants, n: u32) -> u128 {
    1u128 << (inv.mu as u128 * (1u128 << n) + (inv.lambda * n) as u128 + inv.nu as u128)
}

/// Splits K = Q(√q, √rs) into its roles; both orders of (r, s) are returned.
pub fn qrs_roles(f: &MultiquadField) -> Vec<(u64, u64, u64)> {
    if f.gens.len() != 2 {
        return Vec::new();
    }
    let subs = f.subfield_radicands();
    let mut out = Vec::new();
    for &q in &subs {
        if !(is_prime(q) && q % 4 == 3) {
            continue;
        }
        for &rs in &subs {
            let ps = crate::arith::prime_divisors(rs);
            if rs % q != 0 && ps.len() == 2 && ps[0] > 2 {
                out.push((q, ps[0], ps[1]));
                out.push((q, ps[1], ps[0]));
            }
        }
    }
    out
}

fn leg(a: u64, p: u64) -> i8 {
    legendre(a as i64, p)
}

/// Whether the order-two pattern holds for (q, r, s) in this order.
pub fn elementary_pattern(q: u64, r: u64, s: u64) -> bool {
    let (q8, r8, s8) = (q % 8, r % 8, s % 8);
    let c1 = r8 == 3 && q8 == 3 && s8 == 7 && leg(q, s) == -1 && leg(q, r) == -1 && leg(s, r) == -1;
    let c2 = r8 == 3 && s8 == 3 && q8 == 7 && leg(q, r) == -1 && leg(q, s) == 1;
    let c3 = s8 == 3 && q8 == 3 && r8 == 7 && leg(q, r) == -1 && leg(q, s) == 1 && leg(r, s) == -1;
    let c4 = r8 == 3 && q8 == 3 && s8 == 7 && leg(q, r) == -1 && leg(q, s) == 1 && leg(r, s) == -1;
    let c5 = s8 == 3 && q8 == 3 && r8 == 7 && leg(q, s) == 1 && leg(q, r) == 1 && leg(r, s) == 1;
    c1 || c2 || c3 || c4 || c5
}

pub fn cyclic_family_hypotheses(q: u64, r: u64, s: u64) -> bool {
    q % 8 == 3 && r % 8 == 3 && s % 8 == 7 && leg(q, r) == -1 && leg(q, s) == -1 && leg(s, r) == 1
}

pub fn split_family_hypotheses(q: u64, r: u64, s: u64) -> bool {
    q % 8 == 7 && r % 8 == 3 && s % 8 == 3 && r < s && leg(q, r) == 1 && leg(q, s) == 1
}

/// Whether δ·(a − 1) is a square, for ε_qrs = a + b√qrs.
pub fn a_minus_one_square<O: Oracle + ?Sized>(oracle: &O, qrs: u64, delta: u64) -> Result<bool, MqError> {
    let u = oracle.unit(qrs)?;
    let dec = decompose(&u).ok_or(UnitError::NormMinusOne(qrs))?;
    Ok(u.sigma == 1 && dec.m_minus == crate::arith::squarefree_part(delta).0)
}

/// The stable 2-class group of K∞ when K lies in one of the known families.
pub fn iwasawa_structure<O: Oracle + ?Sized>(f: &MultiquadField, oracle: &O) -> Result<Option<Structure>, MqError> {
    let inv = |g: StableGroup| IwasawaInvariants { lambda: 0, mu: 0, nu: g.log2_order() };
    for (q, r, s) in qrs_roles(f) {
        let qrs = q * r * s;
        if cyclic_family_hypotheses(q, r, s) && !a_minus_one_square(oracle, qrs, s)? {
            let m = oracle.h2(qrs)?.trailing_zeros();
            let group = StableGroup::Cyclic(m.saturating_sub(1));
            return Ok(Some(Structure {
                family: StructureFamily::CyclicQrs,
                group,
                invariants: inv(group),
                roles: Some((q, r, s)),
                m: Some(m),
            }));
        }
        if split_family_hypotheses(q, r, s) && !a_minus_one_square(oracle, qrs, q)? {
            let m = oracle.h2(qrs)?.trailing_zeros();
            let group = StableGroup::TwoTimesCyclic(m.saturating_sub(2));
            return Ok(Some(Structure {
                family: StructureFamily::SplitQrs,
                group,
                invariants: inv(group),
                roles: Some((q, r, s)),
                m: Some(m),
            }));
        }
        if [q, r, s].iter().all(|p| p % 4 == 3) && elementary_pattern(q, r, s) {
            let group = StableGroup::Cyclic(1);
            return Ok(Some(Structure {
                family: StructureFamily::ElementaryQrs,
                group,
                invariants: inv(group),
                roles: Some((q, r, s)),
                m: None,
            }));
        }
    }
    let st = fukuda_h2_stable(f, oracle)?;
    if st.stable && st.h2_k <= 2 {
        let group = if st.h2_k == 1 { StableGroup::Trivial } else { StableGroup::Cyclic(1) };
        return Ok(Some(Structure {
            family: StructureFamily::SmallStable,
            group,
            invariants: inv(group),
            roles: None,
            m: None,
        }));
    }
    Ok(None)
}
