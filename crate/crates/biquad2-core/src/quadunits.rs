//! Fundamental units of real quadratic fields and square roots of units.
//!
//! For a unit ε = (x + y√d)/σ of norm +1 one has
//! 2σε = (√(x+σ) + √(x−σ))², so √(2σε) = b₊√m₊ + b₋√m₋ where m± is the
//! squarefree kernel of x ± σ. The catalog below names which kernel occurs
//! for the prime-tuple shapes that appear in the rank computations.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::arith::{is_squarefree, legendre, prime_divisors, squarefree_part, squarefree_part_over};
use crate::radical::{Ctx, Elem, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnitError {
    #[error("{0} is not a squarefree integer > 1")]
    BadRadicand(u64),
    #[error("no cataloged square-root pattern holds for d = {0}")]
    NoPattern(u64),
    #[error("several cataloged patterns hold for d = {0}")]
    Ambiguous(u64),
    #[error("prime tuple does not fit the shape {0:?}")]
    ShapeMismatch(UnitShape),
    #[error("unit of Q(sqrt {0}) has norm -1")]
    NormMinusOne(u64),
}

/// ε = (x + y√d)/σ, the least unit > 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalUnit {
    pub d: u64,
    pub x: BigInt,
    pub y: BigInt,
    pub sigma: u8,
    pub norm: i8,
}

pub fn fundamental_unit(d: u64) -> Result<FundamentalUnit, UnitError> {
    if d < 2 || !is_squarefree(d) {
        return Err(UnitError::BadRadicand(d));
    }
    let s = d.isqrt() as i128;
    let di = d as i128;
    let (p0, q0) = if d % 4 == 1 { (1i128, 2i128) } else { (0, 1) };
    let (mut p, mut q) = (p0, q0);
    let (mut h1, mut h2) = (BigInt::one(), BigInt::from(0));
    let (mut k1, mut k2) = (BigInt::from(0), BigInt::one());
    loop {
        let a = (p + s).div_euclid(q);
        let ab = BigInt::from(a);
        let h = &ab * &h1 + &h2;
        let k = &ab * &k1 + &k2;
        let pn = a * q - p;
        let qn = (di - pn * pn) / q;
        (h2, h1) = (h1, h);
        (k2, k1) = (k1, k);
        (p, q) = (pn, qn);
        if q == q0 {
            break;
        }
    }
    let (mut x, mut y, mut sigma) = if q0 == 2 {
        (BigInt::from(2) * &h1 - &k1, k1, 2u8)
    } else {
        (h1, k1, 1u8)
    };
    if sigma == 2 && (&x % 2u32 == BigInt::from(0)) && (&y % 2u32 == BigInt::from(0)) {
        x /= 2u32;
        y /= 2u32;
        sigma = 1;
    }
    let n = &x * &x - BigInt::from(d) * &y * &y;
    let sq = BigInt::from(sigma as u32 * sigma as u32);
    let norm = if n == sq {
        1
    } else {
        debug_assert_eq!(n, -sq);
        -1
    };
    Ok(FundamentalUnit { d, x, y, sigma, norm })
}

impl FundamentalUnit {
    /// x² − d·y² − norm·σ², zero for a correct unit.
    pub fn pell_defect(&self) -> BigInt {
        let s = BigInt::from(self.sigma as i32 * self.sigma as i32);
        &self.x * &self.x - BigInt::from(self.d) * &self.y * &self.y - BigInt::from(self.norm) * s
    }

    pub fn elem(&self, ctx: &Ctx) -> Elem {
        Elem::quadratic(&self.x, &self.y, self.sigma, ctx.mask(self.d).expect("d over context"))
    }

    /// √ε in the compositum, positive under the embedding with all roots positive.
    /// Only norm +1 units are totally positive, so only they have one.
    pub fn sqrt_elem(&self, ctx: &Ctx) -> Option<Elem> {
        let dec = decompose(self)?;
        let mut s = Elem::zero();
        for (m, b) in [(dec.m_plus, &dec.b_plus), (dec.m_minus, &dec.b_minus)] {
            s = s.add(&Elem::term(ctx.mask(m)?, Q::from_integer(b.clone())));
        }
        let half = Q::new(BigInt::one(), BigInt::from(2));
        Some(if self.sigma == 1 {
            s.mul(&Elem::term(ctx.mask(2)?, half), ctx)
        } else {
            s.scale(&half)
        })
    }
}

/// x + σ = m₊·b₊², x − σ = m₋·b₋² for a norm +1 unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub m_plus: u64,
    pub b_plus: BigInt,
    pub m_minus: u64,
    pub b_minus: BigInt,
}

pub fn decompose(u: &FundamentalUnit) -> Option<Decomposition> {
    if u.norm != 1 {
        return None;
    }
    let primes = prime_divisors(2 * u.d);
    let s = BigInt::from(u.sigma);
    let (m_plus, b_plus) = squarefree_part_over(&(&u.x + &s), &primes)?;
    let (m_minus, b_minus) = squarefree_part_over(&(&u.x - &s), &primes)?;
    Some(Decomposition { m_plus, b_plus, m_minus, b_minus })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnitShape {
    /// d = q, q ≡ 3 (mod 4)
    Q,
    /// d = 2q
    TwoQ,
    /// d = qr with q ≡ r ≡ 7 (mod 8)
    QR,
    /// d = 2qr with q ≡ r ≡ 7 (mod 8)
    TwoQR,
    /// d = qrs with q ≡ r ≡ 3, s ≡ 7 (mod 8), (q/r) = (q/s) = −1, (s/r) = 1
    QRS,
    /// d = 2qrs under the same hypotheses
    TwoQRS,
    /// d = q1q2 with q1, q2 ≡ 3 (mod 4)
    Q1Q2,
    /// d = 2q1q2
    TwoQ1Q2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternSign {
    Plus,
    Minus,
}

/// δ·(x ± σ) is a perfect square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    pub delta: u64,
    pub sign: PatternSign,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareRootProfile {
    pub d: u64,
    pub shape: UnitShape,
    pub pattern: Pattern,
    pub b1: BigInt,
    pub b2: BigInt,
    /// (b1√m1 + b2√m2)² = scale·ε; m1 comes from x + σ and m2 from x − σ.
    pub radicands: (u64, u64),
    pub scale: u8,
    pub scaled: bool,
    pub gamma: Option<u8>,
}

impl SquareRootProfile {
    /// Expands (b1√m1 + b2√m2)² and compares with scale·ε.
    pub fn expansion_holds(&self, u: &FundamentalUnit) -> bool {
        let (m1, m2) = self.radicands;
        let ctx = Ctx::for_radicands(&[m1, m2, u.d]);
        let (Some(k1), Some(k2)) = (ctx.mask(m1), ctx.mask(m2)) else { return false };
        let root = Elem::term(k1, Q::from_integer(self.b1.clone()))
            .add(&Elem::term(k2, Q::from_integer(self.b2.clone())));
        root.square(&ctx) == u.elem(&ctx).scale(&Q::from_integer(BigInt::from(self.scale)))
    }
}

fn shape_radicand(shape: UnitShape, primes: &[u64]) -> Result<u64, UnitError> {
    let need = match shape {
        UnitShape::Q | UnitShape::TwoQ => 1,
        UnitShape::QR | UnitShape::TwoQR | UnitShape::Q1Q2 | UnitShape::TwoQ1Q2 => 2,
        UnitShape::QRS | UnitShape::TwoQRS => 3,
    };
    if primes.len() != need || primes.iter().any(|&p| p < 3 || !crate::arith::is_prime(p)) {
        return Err(UnitError::ShapeMismatch(shape));
    }
    let prod: u64 = primes.iter().product();
    let two = matches!(shape, UnitShape::TwoQ | UnitShape::TwoQR | UnitShape::TwoQRS | UnitShape::TwoQ1Q2);
    Ok(if two { 2 * prod } else { prod })
}

fn shape_ok(shape: UnitShape, p: &[u64]) -> bool {
    let l = |a: u64, b: u64| legendre(a as i64, b);
    match shape {
        UnitShape::Q | UnitShape::TwoQ => p[0] % 4 == 3,
        UnitShape::QR | UnitShape::TwoQR => p[0] % 8 == 7 && p[1] % 8 == 7 && l(p[1], p[0]) == 1,
        UnitShape::QRS | UnitShape::TwoQRS => {
            let (q, r, s) = (p[0], p[1], p[2]);
            q % 8 == 3 && r % 8 == 3 && s % 8 == 7 && l(q, r) == -1 && l(q, s) == -1 && l(s, r) == 1
        }
        UnitShape::Q1Q2 | UnitShape::TwoQ1Q2 => p[0] % 4 == 3 && p[1] % 4 == 3 && p[0] != p[1],
    }
}

fn candidates(shape: UnitShape, p: &[u64]) -> Vec<Pattern> {
    use PatternSign::{Minus, Plus};
    let pat = |delta, sign| Pattern { delta, sign };
    match shape {
        UnitShape::Q | UnitShape::TwoQ => alloc::vec![pat(1, Plus), pat(1, Minus)],
        UnitShape::QR => alloc::vec![pat(2 * p[1], Plus)],
        UnitShape::TwoQR => alloc::vec![pat(1, Plus), pat(p[1], Plus), pat(2 * p[1], Plus)],
        UnitShape::QRS => alloc::vec![pat(2 * p[0], Minus), pat(p[1], Minus), pat(p[2], Minus)],
        UnitShape::TwoQRS => alloc::vec![pat(p[2], Minus)],
        UnitShape::Q1Q2 => alloc::vec![
            pat(p[0], Plus),
            pat(p[0], Minus),
            pat(2 * p[0], Plus),
            pat(2 * p[0], Minus)
        ],
        UnitShape::TwoQ1Q2 => alloc::vec![
            pat(1, Plus),
            pat(1, Minus),
            pat(2 * p[0], Plus),
            pat(2 * p[0], Minus)
        ],
    }
}

/// The cataloged square-root profile for a prime tuple of the given shape.
/// For d = qr the tuple is reordered so that (r/q) = 1.
pub fn unit_sqrt_profile(shape: UnitShape, primes: &[u64]) -> Result<SquareRootProfile, UnitError> {
    let mut p = primes.to_vec();
    let d = shape_radicand(shape, &p)?;
    if matches!(shape, UnitShape::QR | UnitShape::TwoQR) && legendre(p[1] as i64, p[0]) != 1 {
        p.swap(0, 1);
    }
    if !shape_ok(shape, &p) {
        return Err(UnitError::ShapeMismatch(shape));
    }
    let u = fundamental_unit(d)?;
    if u.norm != 1 {
        return Err(UnitError::NormMinusOne(d));
    }
    let dec = decompose(&u).ok_or(UnitError::NoPattern(d))?;
    let holds = |pt: &Pattern| {
        let m = match pt.sign {
            PatternSign::Plus => dec.m_plus,
            PatternSign::Minus => dec.m_minus,
        };
        squarefree_part(pt.delta).0 == m
    };
    let hits: Vec<Pattern> = candidates(shape, &p).into_iter().filter(holds).collect();
    let pattern = match hits.as_slice() {
        [] => return Err(UnitError::NoPattern(d)),
        [one] => *one,
        _ => return Err(UnitError::Ambiguous(d)),
    };
    let (mut m1, mut m2) = (dec.m_plus, dec.m_minus);
    let (mut scale, mut scaled) = (2 * u.sigma, true);
    if u.sigma == 1 && m1 % 2 == 0 && m2 % 2 == 0 {
        m1 /= 2;
        m2 /= 2;
        scale = 1;
        scaled = false;
    }
    let gamma = match shape {
        UnitShape::Q | UnitShape::TwoQ | UnitShape::Q1Q2 => Some(match pattern.sign {
            PatternSign::Plus => 0,
            PatternSign::Minus => 1,
        }),
        UnitShape::TwoQ1Q2 if pattern.delta != 1 => Some(match pattern.sign {
            PatternSign::Plus => 0,
            PatternSign::Minus => 1,
        }),
        _ => None,
    };
    Ok(SquareRootProfile {
        d,
        shape,
        pattern,
        b1: dec.b_plus,
        b2: dec.b_minus,
        radicands: (m1, m2),
        scale,
        scaled,
        gamma,
    })
}

/// Whether √ε lies in the multiquadratic field generated by `field_basis`.
pub fn sqrt_unit_in_field(profile: &SquareRootProfile, field_basis: &[u64]) -> bool {
    let (m1, m2) = profile.radicands;
    // √ε = (b1√m1 + b2√m2)/√scale
    let adjust = |m: u64| match profile.scale {
        2 => squarefree_part(2 * m).0,
        _ => m,
    };
    let (n1, n2) = (adjust(m1), adjust(m2));
    let mut rads: Vec<u64> = field_basis.to_vec();
    rads.extend([n1, n2]);
    let ctx = Ctx::for_radicands(&rads);
    let gens: Vec<u32> = field_basis.iter().filter_map(|&r| ctx.mask(r)).collect();
    let inside = |n: u64| n == 1 || ctx.mask(n).is_some_and(|m| crate::radical::in_span(&gens, m));
    inside(n1) && inside(n2)
}

/// Minimality certificates independent of the continued-fraction solver.
pub mod minimality {
    use num_bigint::BigInt;

    use super::FundamentalUnit;
    use crate::arith::{is_prime, sqrt_exact};

    pub const BRUTE_BOUND: u64 = 200_000;

    /// Least Y ≤ BRUTE_BOUND with X² − dY² = ±4, X > 0, as (x, y, σ, norm).
    pub fn brute_unit(d: u64) -> Option<(u64, u64, u8, i8)> {
        for y in 1..=BRUTE_BOUND {
            let dy2 = d as u128 * y as u128 * y as u128;
            for (t, norm) in [(dy2.saturating_sub(4), -1i8), (dy2 + 4, 1)] {
                let x = t.isqrt();
                if x > 0 && x * x == t {
                    let x = x as u64;
                    return Some(if x % 2 == 0 && y % 2 == 0 { (x / 2, y / 2, 1, norm) } else { (x, y, 2, norm) });
                }
            }
        }
        None
    }

    /// Lucas V_k(t, n) = η^k + η̄^k for η a root of X² − tX + n.
    fn lucas_v(t: &BigInt, n: i8, k: u32) -> BigInt {
        let (mut v0, mut v1) = (BigInt::from(2), t.clone());
        for _ in 1..k {
            let v2 = t * &v1 - BigInt::from(n) * &v0;
            v0 = v1;
            v1 = v2;
        }
        v1
    }

    /// Whether ε is the k-th power of a unit η > 1 of Q(√d), for some prime k.
    pub fn is_proper_power(u: &FundamentalUnit) -> bool {
        let trace = BigInt::from(2) * &u.x / BigInt::from(u.sigma);
        let bits = trace.bits() as u32;
        // η ≥ (1+√5)/2 > 2^(2/3), so k < 1.5·log2(ε) + 2
        for k in (2..(3 * bits / 2 + 2)).filter(|&k| is_prime(k as u64)) {
            for n in [-1i8, 1] {
                if u.norm == -1 && (n == 1 || k == 2) || u.norm == 1 && n == -1 && k % 2 == 1 {
                    continue;
                }
                let (mut lo, mut hi) = (BigInt::from(1), trace.clone() + 1);
                while lo < hi {
                    let mid: BigInt = (&lo + &hi) / 2;
                    if lucas_v(&mid, n, k) < trace {
                        lo = mid + 1;
                    } else {
                        hi = mid;
                    }
                }
                if lucas_v(&lo, n, k) == trace {
                    let disc = &lo * &lo - BigInt::from(4 * n as i64);
                    let dd = BigInt::from(u.d);
                    if disc > BigInt::from(0) && (&disc % &dd) == BigInt::from(0) && sqrt_exact(&(disc / dd)).is_some() {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Checks `u` against the bounded search and, past its window, shows no
    /// smaller unit exists there and that `u` is not a proper power.
    pub fn certify(u: &FundamentalUnit) -> Result<(), alloc::string::String> {
        match brute_unit(u.d) {
            Some((x, y, sigma, norm)) => {
                let got = (u.x.clone(), u.y.clone(), u.sigma, u.norm);
                if got == (BigInt::from(x), BigInt::from(y), sigma, norm) {
                    Ok(())
                } else {
                    Err(alloc::format!("d={}: search found ({x}, {y}, {sigma}, {norm})", u.d))
                }
            }
            None if u.y <= BigInt::from(BRUTE_BOUND / 2) => Err(alloc::format!("d={}: unit inside the window", u.d)),
            None if is_proper_power(u) => Err(alloc::format!("d={}: unit is a proper power", u.d)),
            None => Ok(()),
        }
    }
}


#[cfg(test)]
mod tests {
    use super::minimality::*;
    use super::*;
    use crate::arith::odd_primes;
    use crate::radical::MqField;

    #[test]
    fn unit_examples() {
        let u = fundamental_unit(2).unwrap();
        assert_eq!((u.x, u.y, u.sigma, u.norm), (BigInt::from(1), BigInt::from(1), 1, -1));
        let u = fundamental_unit(5).unwrap();
        assert_eq!((u.x, u.y, u.sigma, u.norm), (BigInt::from(1), BigInt::from(1), 2, -1));
        let u = fundamental_unit(399).unwrap();
        assert_eq!((u.x, u.y, u.sigma, u.norm), (BigInt::from(20), BigInt::from(1), 1, 1));
        assert!(fundamental_unit(12).is_err());
        assert!(fundamental_unit(1).is_err());
    }

    #[test]
    fn minimal_against_brute_force() {
        for d in 2..=500u64 {
            if !is_squarefree(d) {
                continue;
            }
            certify(&fundamental_unit(d).unwrap()).unwrap();
        }
    }

    #[test]
    fn power_test_detects_powers() {
        for d in [2u64, 3, 5, 6, 7, 13, 21, 94] {
            let u = fundamental_unit(d).unwrap();
            assert!(!is_proper_power(&u), "d={d}");
            let ctx = Ctx::for_radicands(&[d]);
            for k in [2u32, 3, 5] {
                let p = u.elem(&ctx).pow(k, &ctx);
                let x2 = p.coeff(0) * Q::from_integer(BigInt::from(2));
                let y2 = p.coeff(ctx.mask(d).unwrap()) * Q::from_integer(BigInt::from(2));
                let (x, y, sigma) = if x2.is_integer() && x2.to_integer() % 2 == BigInt::from(0) && y2.to_integer() % 2 == BigInt::from(0) {
                    (x2.to_integer() / 2, y2.to_integer() / 2, 1)
                } else {
                    (x2.to_integer(), y2.to_integer(), 2)
                };
                let norm = if u.norm == -1 && k % 2 == 1 { -1 } else { 1 };
                let pw = FundamentalUnit { d, x, y, sigma, norm };
                assert_eq!(pw.pell_defect(), BigInt::from(0));
                assert!(is_proper_power(&pw), "d={d} k={k}");
            }
        }
    }

    #[test]
    fn norm_plus_one_when_a_prime_three_mod_four_divides() {
        for d in 2..2000u64 {
            if !is_squarefree(d) {
                continue;
            }
            let u = fundamental_unit(d).unwrap();
            assert_eq!(u.pell_defect(), BigInt::from(0));
            if prime_divisors(d).iter().any(|p| p % 4 == 3) {
                assert_eq!(u.norm, 1, "d={d}");
            }
        }
    }

    #[test]
    fn profile_examples() {
        // a = 20: a − 1 = 19, a + 1 = 21
        let pr = unit_sqrt_profile(UnitShape::QRS, &[3, 19, 7]).unwrap();
        assert_eq!(pr.pattern, Pattern { delta: 19, sign: PatternSign::Minus });
        assert_eq!(pr.radicands, (21, 19));
        assert_eq!((pr.b1.clone(), pr.b2.clone()), (BigInt::from(1), BigInt::from(1)));
        assert!(pr.scaled);
        // ε_7 = 8 + 3√7, (3 + √7)² = 2ε_7
        let pr = unit_sqrt_profile(UnitShape::Q, &[7]).unwrap();
        assert_eq!(pr.radicands, (1, 7));
        assert_eq!((pr.b1.clone(), pr.b2.clone()), (BigInt::from(3), BigInt::from(1)));
        assert_eq!(pr.gamma, Some(0));
        // ε_3 = 2 + √3, (1 + √3)² = 2ε_3
        let pr = unit_sqrt_profile(UnitShape::Q, &[3]).unwrap();
        assert_eq!(pr.radicands, (3, 1));
        assert_eq!(pr.gamma, Some(1));
        assert!(unit_sqrt_profile(UnitShape::QRS, &[3, 11, 7]).is_err());
    }

    #[test]
    fn gamma_follows_class_mod_eight() {
        for q in odd_primes(3, 400).into_iter().filter(|q| q % 4 == 3) {
            let want = if q % 8 == 7 { 0 } else { 1 };
            for shape in [UnitShape::Q, UnitShape::TwoQ] {
                let pr = unit_sqrt_profile(shape, &[q]).unwrap();
                assert_eq!(pr.gamma, Some(want), "q={q} {shape:?}");
                assert!(pr.expansion_holds(&fundamental_unit(pr.d).unwrap()));
            }
        }
    }

    #[test]
    fn two_q1q2_profiles() {
        let ps: Vec<u64> = odd_primes(3, 120).into_iter().filter(|q| q % 4 == 3).collect();
        for &q1 in &ps {
            for &q2 in &ps {
                if q1 == q2 || q2 % 8 != 3 {
                    continue;
                }
                let pr = unit_sqrt_profile(UnitShape::TwoQ1Q2, &[q1, q2]).unwrap();
                assert!(pr.expansion_holds(&fundamental_unit(pr.d).unwrap()));
                if q1 % 8 == 3 {
                    assert_eq!(pr.pattern, Pattern { delta: 1, sign: PatternSign::Minus }, "q1={q1} q2={q2}");
                } else {
                    let g = if legendre(q2 as i64, q1) == -1 { 0 } else { 1 };
                    assert_eq!(pr.pattern.delta, 2 * q1, "q1={q1} q2={q2}");
                    assert_eq!(pr.gamma, Some(g), "q1={q1} q2={q2}");
                }
                let pr = unit_sqrt_profile(UnitShape::Q1Q2, &[q1, q2]).unwrap();
                assert!(pr.expansion_holds(&fundamental_unit(pr.d).unwrap()));
            }
        }
    }

    #[test]
    fn seven_mod_eight_pairs() {
        let ps: Vec<u64> = odd_primes(3, 200).into_iter().filter(|q| q % 8 == 7).collect();
        for (i, &q) in ps.iter().enumerate() {
            for &r in &ps[i + 1..] {
                for shape in [UnitShape::QR, UnitShape::TwoQR] {
                    let pr = unit_sqrt_profile(shape, &[q, r]).unwrap();
                    assert!(pr.expansion_holds(&fundamental_unit(pr.d).unwrap()), "{q} {r} {shape:?}");
                }
            }
        }
    }

    #[test]
    fn sqrt_membership() {
        let pr = unit_sqrt_profile(UnitShape::QRS, &[3, 19, 7]).unwrap();
        // √ε_399 = (√21 + √19)/√2 needs √42 and √38
        assert!(sqrt_unit_in_field(&pr, &[2, 21, 19]));
        assert!(!sqrt_unit_in_field(&pr, &[21, 19]));
        let pr3 = unit_sqrt_profile(UnitShape::Q, &[3]).unwrap();
        assert!(!sqrt_unit_in_field(&pr3, &[3, 5]));
        assert!(sqrt_unit_in_field(&pr3, &[3, 2]));
    }

    #[test]
    fn sqrt_elem_squares_to_unit() {
        for d in [3u64, 6, 7, 21, 30, 399, 798, 1155] {
            let u = fundamental_unit(d).unwrap();
            if u.norm != 1 {
                continue;
            }
            let ctx = Ctx::for_radicands(&[d]);
            let s = u.sqrt_elem(&ctx).unwrap();
            assert_eq!(s.square(&ctx), u.elem(&ctx), "d={d}");
            let full = MqField::new(ctx.primes().iter().enumerate().map(|(i, _)| 1u32 << i).collect());
            assert!(full.contains(&s));
        }
    }
}
