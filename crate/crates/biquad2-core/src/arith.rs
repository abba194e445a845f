//! Integer kernel: primality, exact square roots, residue symbols and
//! congruence-filtered prime search.

use alloc::vec::Vec;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("modulus {0} must be odd and positive")]
    BadModulus(i64),
    #[error("{0} is not a prime congruent to 1 mod 4")]
    NotOneModFour(u64),
    #[error("{a} is not a quadratic residue mod {p}")]
    NonResidue { a: i64, p: u64 },
    #[error("{r} does not split in Q(sqrt {p})")]
    NotSplit { p: u64, r: u64 },
    #[error("scholz pair needs p = 2 or p = 1 mod 4, got {0}")]
    BadScholzBase(u64),
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

/// Returns (g, x, y) with a·x + b·y = g = gcd(a, b) ≥ 0.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Deterministic Miller–Rabin; the first twelve prime bases suffice below 2^64.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn sqrt_exact_u64(n: u64) -> Option<u64> {
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

pub fn sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Trial-division factorization, ascending primes with multiplicity.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && factor(n).iter().all(|&(_, e)| e == 1)
}

/// Splits n > 0 as (squarefree part, root) with n = part · root².
pub fn squarefree_part(n: u64) -> (u64, u64) {
    let (mut part, mut root) = (1u64, 1u64);
    for (p, e) in factor(n) {
        if e % 2 == 1 {
            part *= p;
        }
        root *= p.pow(e / 2);
    }
    (part, root)
}

/// Squarefree kernel of a positive big integer, assuming every prime of odd
/// multiplicity lies in `primes`; None if that assumption fails.
pub fn squarefree_part_over(n: &BigInt, primes: &[u64]) -> Option<(u64, BigInt)> {
    if n.sign() != Sign::Plus {
        return None;
    }
    let mut rest = n.clone();
    let mut part = 1u64;
    for &p in primes {
        let bp = BigInt::from(p);
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e % 2 == 1 {
            part *= p;
        }
    }
    sqrt_exact(&rest)?;
    let root = sqrt_exact(&(n / BigInt::from(part)))?;
    Some((part, root))
}

pub fn big_mod(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits")
}

fn jacobi_raw(a: i128, n: u64) -> i8 {
    let mut a = a.rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        core::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Jacobi symbol (a/n) for odd n ≥ 1.
pub fn jacobi(a: i64, n: i64) -> Result<i8, ArithError> {
    if n <= 0 || n % 2 == 0 {
        return Err(ArithError::BadModulus(n));
    }
    Ok(jacobi_raw(a as i128, n as u64))
}

/// Legendre symbol for an odd prime p; callers guarantee p is odd.
pub fn legendre(a: i64, p: u64) -> i8 {
    debug_assert!(p % 2 == 1);
    jacobi_raw(a as i128, p)
}

/// Kronecker symbol (D/p) for a prime p, including p = 2.
pub fn kronecker_prime(d: i64, p: u64) -> i8 {
    if p == 2 {
        if d % 2 == 0 {
            0
        } else if d.rem_euclid(8) == 1 || d.rem_euclid(8) == 7 {
            1
        } else {
            -1
        }
    } else {
        legendre(d, p)
    }
}

/// Rational quartic symbol (a/p)_4 = a^((p−1)/4) mod p for p ≡ 1 (mod 4) and (a/p) = 1.
pub fn quartic_residue(a: i64, p: u64) -> Result<i8, ArithError> {
    if p % 4 != 1 || !is_prime(p) {
        return Err(ArithError::NotOneModFour(p));
    }
    if legendre(a, p) != 1 {
        return Err(ArithError::NonResidue { a, p });
    }
    let v = pow_mod(a.rem_euclid(p as i64) as u64, (p - 1) / 4, p);
    Ok(if v == 1 { 1 } else { -1 })
}

/// (r/2)_4 := (−1)^((r−1)/8) for r ≡ 1 (mod 8), the convention used with Q(√2).
pub fn quartic_at_two(r: u64) -> i8 {
    debug_assert!(r % 8 == 1);
    if ((r - 1) / 8) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Square root of a quadratic residue modulo an odd prime (Tonelli–Shanks).
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// The two values (ε_p / R), (ε_p / R′) at the primes of Q(√p) above r.
/// The first value is +1 whenever the pair is mixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScholzPair {
    pub first: i8,
    pub second: i8,
}

impl ScholzPair {
    pub fn product(&self) -> i8 {
        self.first * self.second
    }
}

/// Evaluates ε_p at both primes above r by reducing the unit modulo r.
pub fn scholz_pair(p: u64, r: u64) -> Result<ScholzPair, ArithError> {
    if !(p == 2 || (p % 4 == 1 && is_prime(p))) {
        return Err(ArithError::BadScholzBase(p));
    }
    if r == 2 || !is_prime(r) || legendre(p as i64, r) != 1 {
        return Err(ArithError::NotSplit { p, r });
    }
    let eps = crate::quadunits::fundamental_unit(p).expect("p squarefree");
    let root = sqrt_mod(p, r).expect("split prime");
    let x = big_mod(&eps.x, r);
    let y = big_mod(&eps.y, r);
    let sig_inv = inv_mod(eps.sigma as u64, r).expect("r odd");
    let at = |rho: u64| {
        let v = mul_mod((x + mul_mod(y, rho, r)) % r, sig_inv, r);
        legendre(v as i64, r)
    };
    let (a, b) = (at(root), at(r - root));
    Ok(if a >= b {
        ScholzPair { first: a, second: b }
    } else {
        ScholzPair { first: b, second: a }
    })
}

/// Closed-form prediction of the pair from quartic symbols.
pub fn scholz_formula(p: u64, r: u64) -> Result<ScholzPair, ArithError> {
    if legendre(p as i64, r) != 1 {
        return Err(ArithError::NotSplit { p, r });
    }
    let mixed = ScholzPair { first: 1, second: -1 };
    if p == 2 {
        match r % 8 {
            1 => {
                let v = quartic_residue(2, r)? * quartic_at_two(r);
                Ok(ScholzPair { first: v, second: v })
            }
            7 => Ok(mixed),
            _ => Err(ArithError::NotSplit { p, r }),
        }
    } else if p % 4 == 1 {
        if r % 4 == 1 {
            let v = quartic_residue(p as i64, r)? * quartic_residue(r as i64, p)?;
            Ok(ScholzPair { first: v, second: v })
        } else {
            Ok(mixed)
        }
    } else {
        Err(ArithError::BadScholzBase(p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceSpec {
    pub residue: u64,
    pub modulus: u64,
    /// (base, required Legendre value) pairs.
    pub symbol_constraints: Vec<(i64, i8)>,
    pub lower: u64,
    pub upper: u64,
}

impl CongruenceSpec {
    pub fn new(residue: u64, lower: u64, upper: u64) -> Self {
        CongruenceSpec { residue, modulus: 8, symbol_constraints: Vec::new(), lower, upper }
    }

    pub fn with_symbol(mut self, base: i64, value: i8) -> Self {
        self.symbol_constraints.push((base, value));
        self
    }

    pub fn accepts(&self, p: u64) -> bool {
        p >= self.lower
            && p <= self.upper
            && p % self.modulus == self.residue
            && is_prime(p)
            && self.symbol_constraints.iter().all(|&(b, v)| legendre(b, p) == v)
    }
}

pub fn find_primes(spec: &CongruenceSpec) -> Vec<u64> {
    let start = spec.lower.max(3);
    (start..=spec.upper).filter(|&p| spec.accepts(p)).collect()
}

/// Odd primes in [lo, hi], ascending.
pub fn odd_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&p| is_prime(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn brute_prime(n: u64) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    fn brute_legendre(a: i64, p: u64) -> i8 {
        let a = a.rem_euclid(p as i64) as u64;
        if a == 0 {
            return 0;
        }
        if (1..p).any(|x| x * x % p == a) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(2));
        assert!(!is_prime(1));
        // 399 = 3·7·19
        assert!(!is_prime(399));
        assert_eq!(factor(399), vec![(3, 1), (7, 1), (19, 1)]);
        // strong pseudoprime to several small bases
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000 {
            assert_eq!(is_prime(n), brute_prime(n), "n = {n}");
        }
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_exact(&BigInt::from(361)), Some(BigInt::from(19)));
        assert_eq!(sqrt_exact(&BigInt::from(0)), Some(BigInt::from(0)));
        assert_eq!(sqrt_exact(&BigInt::from(114)), None);
        assert_eq!(sqrt_exact(&BigInt::from(-4)), None);
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(2, 7), Ok(1));
        assert_eq!(jacobi(1, 15), Ok(1));
        assert_eq!(jacobi(3, 19), Ok(-1));
        assert_eq!(jacobi(3, 15), Ok(0));
        assert!(jacobi(3, 8).is_err());
        assert!(jacobi(3, -7).is_err());
    }

    #[test]
    fn legendre_matches_brute_force() {
        for p in odd_primes(3, 200) {
            for a in -30..60 {
                assert_eq!(legendre(a, p), brute_legendre(a, p), "({a}/{p})");
            }
        }
    }

    #[test]
    fn quadratic_reciprocity_exhaustive() {
        let ps = odd_primes(3, 200);
        for &p in &ps {
            for &q in &ps {
                if p == q {
                    continue;
                }
                let lhs = legendre(p as i64, q) * legendre(q as i64, p);
                let rhs = if (p - 1) / 2 * ((q - 1) / 2) % 2 == 0 { 1 } else { -1 };
                assert_eq!(lhs, rhs, "p={p} q={q}");
            }
        }
    }

    #[test]
    fn quartic_examples() {
        // 2^4 = 16 ≡ −1 mod 17
        assert_eq!(quartic_residue(2, 17), Ok(-1));
        assert_eq!(quartic_residue(1, 13), Ok(1));
        assert_eq!(quartic_residue(4, 17), Ok(1));
        assert!(quartic_residue(2, 7).is_err());
        assert!(quartic_residue(3, 17).is_err());
    }

    #[test]
    fn quartic_matches_fourth_powers() {
        for p in odd_primes(5, 300).into_iter().filter(|p| p % 4 == 1) {
            let fourth: alloc::collections::BTreeSet<u64> =
                (1..p).map(|x| pow_mod(x, 4, p)).collect();
            for a in 1..p {
                if brute_legendre(a as i64, p) == 1 {
                    let want = if fourth.contains(&a) { 1 } else { -1 };
                    assert_eq!(quartic_residue(a as i64, p), Ok(want));
                }
            }
        }
    }

    #[test]
    fn scholz_examples() {
        // mixed case for p = 2, r ≡ 7 mod 8
        assert_eq!(scholz_pair(2, 7), Ok(ScholzPair { first: 1, second: -1 }));
        // 1+√2 with √2 ≡ 6 mod 17: (7/17) = (12/17) = −1
        assert_eq!(scholz_pair(2, 17), Ok(ScholzPair { first: -1, second: -1 }));
        // mixed case for p ≡ 1 mod 4, r ≡ 3 mod 4
        assert_eq!(scholz_pair(5, 11), Ok(ScholzPair { first: 1, second: -1 }));
        assert!(scholz_pair(2, 5).is_err());
        assert!(scholz_pair(3, 11).is_err());
    }

    #[test]
    fn scholz_direct_matches_formula() {
        let bases: Vec<u64> =
            core::iter::once(2).chain(odd_primes(5, 120).into_iter().filter(|p| p % 4 == 1)).collect();
        for &p in &bases {
            for r in odd_primes(3, 400) {
                if r == p || legendre(p as i64, r) != 1 {
                    continue;
                }
                let direct = scholz_pair(p, r).unwrap();
                assert_eq!(Ok(direct), scholz_formula(p, r), "p={p} r={r}");
                assert_eq!(direct.product(), legendre(-1, r), "norm symbol p={p} r={r}");
            }
        }
    }

    #[test]
    fn find_primes_examples() {
        assert_eq!(find_primes(&CongruenceSpec::new(7, 3, 50)), vec![7, 23, 31, 47]);
        assert_eq!(find_primes(&CongruenceSpec::new(3, 5, 30).with_symbol(3, -1)), vec![19]);
        assert!(find_primes(&CongruenceSpec::new(1, 3, 16)).is_empty());
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(72), (2, 6));
        assert_eq!(squarefree_part(1), (1, 1));
        assert!(is_squarefree(399));
        assert!(!is_squarefree(12));
        assert_eq!(squarefree_part_over(&BigInt::from(72), &[2, 3]), Some((2, BigInt::from(6))));
        assert_eq!(squarefree_part_over(&BigInt::from(70), &[2, 5]), None);
    }

    proptest! {
        #[test]
        fn jacobi_multiplicative(a in -500i64..500, b in -500i64..500, k in 0i64..400) {
            let n = 2 * k + 1;
            prop_assert_eq!(jacobi(a * b, n).unwrap(), jacobi(a, n).unwrap() * jacobi(b, n).unwrap());
        }

        #[test]
        fn quartic_squares(a in 1i64..10_000, idx in 0usize..40) {
            let ps: Vec<u64> = odd_primes(5, 600).into_iter().filter(|p| p % 4 == 1).collect();
            let p = ps[idx % ps.len()];
            if a as u64 % p != 0 {
                let sq = (a * a) % p as i64;
                prop_assert_eq!(quartic_residue(sq, p).unwrap(), legendre(a, p));
                prop_assert_eq!(quartic_residue(sq * sq % p as i64, p).unwrap(), 1);
                if let Ok(v) = quartic_residue(a, p) {
                    prop_assert_eq!(v * v, 1);
                }
            }
        }

        #[test]
        fn sqrt_mod_roundtrip(x in 1u64..100_000, idx in 0usize..60) {
            let ps = odd_primes(3, 2000);
            let p = ps[idx % ps.len()];
            let a = mul_mod(x, x, p);
            let r = sqrt_mod(a, p).unwrap();
            prop_assert_eq!(mul_mod(r, r, p), a);
        }

        #[test]
        fn find_primes_respects_filters(res in prop::sample::select(vec![1u64, 3, 5, 7]), base in 2i64..40, upper in 10u64..400) {
            let spec = CongruenceSpec::new(res, 3, upper).with_symbol(base, -1);
            let got = find_primes(&spec);
            for w in got.windows(2) { prop_assert!(w[0] < w[1]); }
            for &p in &got {
                prop_assert!(brute_prime(p));
                prop_assert_eq!(p % 8, res);
                prop_assert_eq!(brute_legendre(base, p), -1);
            }
            let want: Vec<u64> = (3..=upper).filter(|&p| brute_prime(p) && p % 8 == res && brute_legendre(base, p) == -1).collect();
            prop_assert_eq!(got, want);
        }
    }
}
