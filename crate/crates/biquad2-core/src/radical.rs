//! Exact elements of multiquadratic fields.
//!
//! A context fixes primes p_0 < … < p_{k−1}; an element is a finite sum
//! Σ c_M √(∏_{i∈M} p_i) over bitmasks M with rational coefficients. A
//! multiquadratic field is a GF(2)-subspace of masks; its elements are the
//! sums supported on that subspace.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{big_mod, inv_mod, prime_divisors, sqrt_exact};
use crate::residue::{El, Fp2};

pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ctx {
    primes: Vec<u64>,
}

impl Ctx {
    pub fn new(mut primes: Vec<u64>) -> Self {
        primes.sort_unstable();
        primes.dedup();
        assert!(primes.len() <= 31, "too many primes for a mask");
        Ctx { primes }
    }

    /// The primes dividing any of the radicands, together with 2.
    pub fn for_radicands(rads: &[u64]) -> Self {
        let mut ps: Vec<u64> = rads.iter().flat_map(|&r| prime_divisors(r)).collect();
        ps.push(2);
        Ctx::new(ps)
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Mask of a squarefree integer composed of context primes.
    pub fn mask(&self, mut n: u64) -> Option<u32> {
        let mut m = 0u32;
        for (i, &p) in self.primes.iter().enumerate() {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return None;
                }
                m |= 1 << i;
            }
        }
        (n == 1).then_some(m)
    }

    pub fn radicand(&self, mask: u32) -> u128 {
        self.primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p as u128)
            .product()
    }

    fn cross(&self, a: u32, b: u32) -> BigInt {
        BigInt::from(self.radicand(a & b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Elem {
    terms: BTreeMap<u32, Q>,
}

fn q_int(n: impl Into<BigInt>) -> Q {
    Q::from_integer(n.into())
}

impl Elem {
    pub fn zero() -> Self {
        Elem::default()
    }

    pub fn one() -> Self {
        Elem::term(0, Q::one())
    }

    pub fn rational(c: Q) -> Self {
        Elem::term(0, c)
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Elem::rational(q_int(n))
    }

    pub fn term(mask: u32, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mask, c);
        }
        Elem { terms }
    }

    pub fn sqrt_of(mask: u32) -> Self {
        Elem::term(mask, Q::one())
    }

    /// (x + y√d)/σ for a context mask of d.
    pub fn quadratic(x: &BigInt, y: &BigInt, sigma: u8, dmask: u32) -> Self {
        let s = BigInt::from(sigma);
        let mut e = Elem::rational(Q::new(x.clone(), s.clone()));
        e.add_term(dmask, Q::new(y.clone(), s));
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Q)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, mask: u32) -> Q {
        self.terms.get(&mask).cloned().unwrap_or_else(Q::zero)
    }

    pub fn rational_part(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, mask: u32, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, o: &Elem) -> Elem {
        let mut r = self.clone();
        for (&m, c) in &o.terms {
            r.add_term(m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Elem) -> Elem {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Elem {
        Elem { terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect() }
    }

    pub fn scale(&self, k: &Q) -> Elem {
        if k.is_zero() {
            return Elem::zero();
        }
        Elem { terms: self.terms.iter().map(|(&m, c)| (m, c * k)).collect() }
    }

    pub fn mul(&self, o: &Elem, ctx: &Ctx) -> Elem {
        let mut r = Elem::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &o.terms {
                let c = ca * cb * q_int(ctx.cross(a, b));
                r.add_term(a ^ b, c);
            }
        }
        r
    }

    pub fn square(&self, ctx: &Ctx) -> Elem {
        self.mul(self, ctx)
    }

    pub fn pow(&self, e: u32, ctx: &Ctx) -> Elem {
        let mut acc = Elem::one();
        for _ in 0..e {
            acc = acc.mul(self, ctx);
        }
        acc
    }

    /// Image under the automorphism negating √p_i for every bit i of `flip`.
    pub fn conj(&self, flip: u32) -> Elem {
        Elem {
            terms: self
                .terms
                .iter()
                .map(|(&m, c)| (m, if (m & flip).count_ones() % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Reduction modulo a prime ideal given by images of the context roots.
    /// None when a coefficient denominator is divisible by the characteristic.
    pub fn eval(&self, f: &Fp2, roots: &[El]) -> Option<El> {
        let p = f.p;
        let mut acc = El(0, 0);
        for (&m, c) in &self.terms {
            let den = big_mod(c.denom(), p);
            let dinv = inv_mod(den, p)?;
            let k = crate::arith::mul_mod(big_mod(c.numer(), p), dinv, p);
            let mut v = El(k, 0);
            for (i, r) in roots.iter().enumerate() {
                if m >> i & 1 == 1 {
                    v = f.mul(v, *r);
                }
            }
            acc = f.add(acc, v);
        }
        Some(acc)
    }

    /// Least common denominator of the coefficients.
    pub fn denominator(&self) -> BigInt {
        self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

/// Whether `m` lies in the GF(2)-span of `gens`.
pub fn in_span(gens: &[u32], m: u32) -> bool {
    let mut basis: Vec<u32> = Vec::new();
    for &g in gens {
        let r = reduce_vec(&basis, g);
        if r != 0 {
            basis.push(r);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    reduce_vec(&basis, m) == 0
}

fn reduce_vec(basis: &[u32], mut v: u32) -> u32 {
    for &b in basis {
        let hb = 31 - b.leading_zeros();
        if v >> hb & 1 == 1 {
            v ^= b;
        }
    }
    v
}

/// Rank over GF(2) of a list of masks.
pub fn span_rank(gens: &[u32]) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for &g in gens {
        let r = reduce_vec(&basis, g);
        if r != 0 {
            basis.push(r);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// A multiquadratic field inside a context, generated by independent masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MqField {
    pub gens: Vec<u32>,
}

impl MqField {
    pub fn new(gens: Vec<u32>) -> Self {
        assert_eq!(span_rank(&gens), gens.len(), "generators must be independent");
        MqField { gens }
    }

    pub fn degree_log2(&self) -> usize {
        self.gens.len()
    }

    /// All nonzero masks of the field, i.e. its quadratic subfields.
    pub fn subfield_masks(&self) -> Vec<u32> {
        let k = self.gens.len();
        (1u32..(1 << k))
            .map(|s| (0..k).filter(|i| s >> i & 1 == 1).fold(0, |acc, i| acc ^ self.gens[i]))
            .collect()
    }

    pub fn contains_mask(&self, m: u32) -> bool {
        in_span(&self.gens, m)
    }

    pub fn contains(&self, x: &Elem) -> bool {
        x.support().all(|m| self.contains_mask(m))
    }

    pub fn sqrt(&self, ctx: &Ctx, x: &Elem) -> Option<Elem> {
        debug_assert!(self.contains(x));
        sqrt_rec(ctx, &self.gens, x)
    }

    pub fn inverse(&self, ctx: &Ctx, x: &Elem) -> Option<Elem> {
        inverse_rec(ctx, &self.gens, x)
    }
}

/// x = α + β√g with α, β supported on span(sub).
fn split(ctx: &Ctx, sub: &[u32], g: u32, x: &Elem) -> (Elem, Elem) {
    let mut alpha = Elem::zero();
    let mut beta = Elem::zero();
    for (m, c) in x.terms() {
        if in_span(sub, m) {
            alpha.add_term(m, c.clone());
        } else {
            let a = m ^ g;
            debug_assert!(in_span(sub, a));
            beta.add_term(a, c / q_int(ctx.cross(a, g)));
        }
    }
    (alpha, beta)
}

fn sqrt_rational(c: &Q) -> Option<Q> {
    if c.is_negative() {
        return None;
    }
    Some(Q::new(sqrt_exact(c.numer())?, sqrt_exact(c.denom())?))
}

fn sqrt_rec(ctx: &Ctx, gens: &[u32], x: &Elem) -> Option<Elem> {
    if x.is_zero() {
        return Some(Elem::zero());
    }
    let Some((&g, sub)) = gens.split_last() else {
        return sqrt_rational(&x.rational_part()?).map(Elem::rational);
    };
    let gval = q_int(ctx.radicand(g));
    let (alpha, beta) = split(ctx, sub, g, x);
    let root_g = Elem::sqrt_of(g);
    if beta.is_zero() {
        if let Some(a) = sqrt_rec(ctx, sub, &alpha) {
            return Some(a);
        }
        let c = sqrt_rec(ctx, sub, &alpha.scale(&gval.recip()))?;
        return Some(c.mul(&root_g, ctx));
    }
    let norm = alpha.square(ctx).sub(&beta.square(ctx).scale(&gval));
    let n = sqrt_rec(ctx, sub, &norm)?;
    let half = Q::new(BigInt::one(), BigInt::from(2));
    for cand in [alpha.add(&n), alpha.sub(&n)] {
        let Some(a) = sqrt_rec(ctx, sub, &cand.scale(&half)) else { continue };
        if a.is_zero() {
            continue;
        }
        let Some(inv2a) = inverse_rec(ctx, sub, &a.scale(&q_int(2))) else { continue };
        let b = beta.mul(&inv2a, ctx);
        let y = a.add(&b.mul(&root_g, ctx));
        if y.square(ctx) == *x {
            return Some(y);
        }
    }
    None
}

fn inverse_rec(ctx: &Ctx, gens: &[u32], x: &Elem) -> Option<Elem> {
    if x.is_zero() {
        return None;
    }
    let Some((&g, sub)) = gens.split_last() else {
        return Some(Elem::rational(x.rational_part()?.recip()));
    };
    let gval = q_int(ctx.radicand(g));
    let (alpha, beta) = split(ctx, sub, g, x);
    let root_g = Elem::sqrt_of(g);
    let norm = alpha.square(ctx).sub(&beta.square(ctx).scale(&gval));
    let ninv = inverse_rec(ctx, sub, &norm)?;
    let conj = alpha.sub(&beta.mul(&root_g, ctx));
    Some(conj.mul(&ninv, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx() -> Ctx {
        Ctx::new(alloc::vec![2, 3, 5, 7])
    }

    fn elem_from(coeffs: &[i64]) -> Elem {
        let mut e = Elem::zero();
        for (m, &c) in coeffs.iter().enumerate() {
            e.add_term(m as u32, q_int(c));
        }
        e
    }

    #[test]
    fn masks_round_trip() {
        let c = ctx();
        assert_eq!(c.mask(42), Some(0b1011));
        assert_eq!(c.mask(11), None);
        assert_eq!(c.mask(12), None);
        assert_eq!(c.radicand(0b1011), 42);
    }

    #[test]
    fn products_of_roots() {
        let c = ctx();
        // √6·√15 = 3√10
        let x = Elem::sqrt_of(c.mask(6).unwrap()).mul(&Elem::sqrt_of(c.mask(15).unwrap()), &c);
        assert_eq!(x, Elem::term(c.mask(10).unwrap(), q_int(3)));
    }

    #[test]
    fn unit_square_root_in_biquadratic_field() {
        let c = ctx();
        // (1+√3)² = 2(2+√3)
        let f = MqField::new(alloc::vec![c.mask(2).unwrap(), c.mask(3).unwrap()]);
        let two_eps = Elem::quadratic(&BigInt::from(4), &BigInt::from(2), 1, c.mask(3).unwrap());
        let r = f.sqrt(&c, &two_eps).unwrap();
        assert_eq!(r.square(&c), two_eps);
        let eps = Elem::quadratic(&BigInt::from(2), &BigInt::from(1), 1, c.mask(3).unwrap());
        // √(2+√3) = (√2 + √6)/2 lies in Q(√2, √3) but not in Q(√3)
        assert!(f.sqrt(&c, &eps).is_some());
        assert!(MqField::new(alloc::vec![c.mask(3).unwrap()]).sqrt(&c, &eps).is_none());
    }

    #[test]
    fn nonsquares_rejected() {
        let c = ctx();
        let f = MqField::new(alloc::vec![1, 2, 4]);
        assert!(f.sqrt(&c, &Elem::integer(-1)).is_none());
        assert!(f.sqrt(&c, &Elem::integer(7)).is_none());
        assert!(f.sqrt(&c, &Elem::integer(30)).is_some());
    }

    proptest! {
        #[test]
        fn square_then_sqrt(coeffs in proptest::collection::vec(-20i64..20, 8)) {
            let c = ctx();
            let f = MqField::new(alloc::vec![1, 2, 4]);
            let y = elem_from(&coeffs);
            let x = y.square(&c);
            let r = f.sqrt(&c, &x);
            prop_assert!(r.is_some());
            let r = r.unwrap();
            prop_assert!(r == y || r == y.neg());
        }

        #[test]
        fn inverse_is_inverse(coeffs in proptest::collection::vec(-20i64..20, 8)) {
            let c = ctx();
            let f = MqField::new(alloc::vec![1, 2, 4]);
            let y = elem_from(&coeffs);
            prop_assume!(!y.is_zero());
            let inv = f.inverse(&c, &y).unwrap();
            prop_assert_eq!(inv.mul(&y, &c), Elem::one());
        }

        #[test]
        fn conjugation_is_ring_map(a in proptest::collection::vec(-9i64..9, 16), b in proptest::collection::vec(-9i64..9, 16), flip in 0u32..16) {
            let c = ctx();
            let (x, y) = (elem_from(&a), elem_from(&b));
            prop_assert_eq!(x.mul(&y, &c).conj(flip), x.conj(flip).mul(&y.conj(flip), &c));
        }

        #[test]
        fn reduction_is_ring_map(a in proptest::collection::vec(-9i64..9, 16), b in proptest::collection::vec(-9i64..9, 16)) {
            let c = ctx();
            let f = Fp2::new(1009);
            let roots: Vec<El> = c.primes().iter().map(|&p| f.sqrt_int(p)).collect();
            let (x, y) = (elem_from(&a), elem_from(&b));
            let lhs = x.mul(&y, &c).eval(&f, &roots).unwrap();
            let rhs = f.mul(x.eval(&f, &roots).unwrap(), y.eval(&f, &roots).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
