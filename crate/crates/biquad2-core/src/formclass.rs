//! Narrow and wide class groups of real quadratic fields through cycles of
//! reduced indefinite binary quadratic forms.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use thiserror::Error;

use crate::arith::{ext_gcd, factor, is_squarefree, prime_divisors};
use crate::quadunits::fundamental_unit;

pub const DEFAULT_DISC_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("{0} is not a positive fundamental discriminant")]
    NotFundamental(u64),
    #[error("{0} is not a squarefree integer > 1")]
    BadRadicand(u64),
    #[error("discriminant {disc} exceeds the configured cap {cap}")]
    OverCap { disc: u64, cap: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn disc(&self) -> i128 {
        self.b as i128 * self.b as i128 - 4 * self.a as i128 * self.c as i128
    }
}

/// Discriminant of Q(√d).
pub fn field_discriminant(d: u64) -> u64 {
    if d % 4 == 1 {
        d
    } else {
        4 * d
    }
}

pub fn is_fundamental(disc: u64) -> bool {
    match disc % 4 {
        1 => disc > 1 && is_squarefree(disc),
        0 => {
            let m = disc / 4;
            (m % 4 == 2 || m % 4 == 3) && is_squarefree(m)
        }
        _ => false,
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factor(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds
}

/// The form class group of a positive fundamental discriminant: reduced forms
/// partitioned into ρ-cycles, one cycle per proper equivalence class.
#[derive(Debug, Clone)]
pub struct FormClassGroup {
    pub disc: u64,
    isqrt: i64,
    pub forms: Vec<QuadForm>,
    index: BTreeMap<(i64, i64), usize>,
    pub cycle_of: Vec<usize>,
    pub cycles: Vec<Vec<usize>>,
    pub identity: usize,
}

impl FormClassGroup {
    pub fn new(disc: u64) -> Result<Self, FormError> {
        if !is_fundamental(disc) {
            return Err(FormError::NotFundamental(disc));
        }
        let s = disc.isqrt() as i64;
        let dd = disc as i64;
        let mut forms = Vec::new();
        let mut b = if dd % 2 == 0 { 2 } else { 1 };
        while b <= s {
            let n = ((dd - b * b) / 4) as u64;
            for a in divisors(n) {
                let a = a as i64;
                // s < 2|a| + b and 2|a| − b ≤ s
                if s < 2 * a + b && 2 * a - b <= s {
                    let c = n as i64 / a;
                    forms.push(QuadForm { a, b, c: -c });
                    forms.push(QuadForm { a: -a, b, c });
                }
            }
            b += 2;
        }
        forms.sort();
        let index: BTreeMap<(i64, i64), usize> =
            forms.iter().enumerate().map(|(i, f)| ((f.a, f.b), i)).collect();
        let mut g = FormClassGroup {
            disc,
            isqrt: s,
            forms,
            index,
            cycle_of: Vec::new(),
            cycles: Vec::new(),
            identity: 0,
        };
        let mut cycle_of = vec![usize::MAX; g.forms.len()];
        let mut cycles = Vec::new();
        for start in 0..g.forms.len() {
            if cycle_of[start] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut cyc = Vec::new();
            let mut i = start;
            loop {
                cycle_of[i] = id;
                cyc.push(i);
                let next = g.rho(g.forms[i]);
                i = g.index[&(next.a, next.b)];
                if i == start {
                    break;
                }
                assert_eq!(cycle_of[i], usize::MAX, "rho is not a permutation of reduced forms");
            }
            cycles.push(cyc);
        }
        g.cycle_of = cycle_of;
        g.cycles = cycles;
        let b0 = (disc % 2) as i64;
        g.identity = g.class_of(QuadForm { a: 1, b: b0, c: (b0 * b0 - dd) / 4 });
        Ok(g)
    }

    pub fn narrow_class_number(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_reduced(&self, f: QuadForm) -> bool {
        let s = self.isqrt;
        let a = f.a.abs();
        f.b > 0 && f.b <= s && s < 2 * a + f.b && 2 * a - f.b <= s
    }

    fn normalize(&self, f: QuadForm) -> QuadForm {
        let s = self.isqrt as i128;
        let a = f.a as i128;
        let m = 2 * a.abs();
        let lo = if a.abs() > s { -a.abs() + 1 } else { s + 1 - m };
        let b = lo + (f.b as i128 - lo).rem_euclid(m);
        let c = (b * b - self.disc as i128) / (4 * a);
        QuadForm { a: f.a, b: b as i64, c: c as i64 }
    }

    pub fn rho(&self, f: QuadForm) -> QuadForm {
        self.normalize(QuadForm { a: f.c, b: -f.b, c: f.a })
    }

    pub fn reduce(&self, f: QuadForm) -> QuadForm {
        let mut f = self.normalize(f);
        while !self.is_reduced(f) {
            f = self.rho(f);
        }
        f
    }

    /// Narrow class of an arbitrary primitive form of this discriminant.
    pub fn class_of(&self, f: QuadForm) -> usize {
        let r = self.reduce(f);
        self.cycle_of[self.index[&(r.a, r.b)]]
    }

    pub fn representative(&self, class: usize) -> QuadForm {
        self.forms[self.cycles[class][0]]
    }

    /// Dirichlet composition.
    pub fn compose_forms(&self, f: QuadForm, g: QuadForm) -> QuadForm {
        let d = self.disc as i128;
        let (a1, b1) = (f.a as i128, f.b as i128);
        let (a2, b2) = (g.a as i128, g.b as i128);
        let m = (b1 + b2) / 2;
        let (g1, x1, y1) = ext_gcd(a1, a2);
        let (e, x2, w) = ext_gcd(g1, m);
        let (u, v) = (x1 * x2, y1 * x2);
        let a3 = a1 * a2 / (e * e);
        let num = u * a1 * b2 + v * a2 * b1 + w * (b1 * b2 + d) / 2;
        let b3 = (num / e).rem_euclid(2 * a3.abs());
        let c3 = (b3 * b3 - d) / (4 * a3);
        debug_assert_eq!(b3 * b3 - 4 * a3 * c3, d);
        QuadForm { a: a3 as i64, b: b3 as i64, c: c3 as i64 }
    }

    pub fn compose(&self, x: usize, y: usize) -> usize {
        self.class_of(self.compose_forms(self.representative(x), self.representative(y)))
    }

    /// Class of the form (−1, b₀, ·), which is trivial exactly when N(ε) = −1.
    pub fn minus_one_class(&self) -> usize {
        let dd = self.disc as i64;
        let b0 = dd % 2;
        self.class_of(QuadForm { a: -1, b: b0, c: (dd - b0 * b0) / 4 })
    }

    /// Invariant-factor exponents of the 2-Sylow subgroup of G/H, where H is
    /// the subgroup generated by `kernel` (an element of order ≤ 2).
    pub fn two_sylow_exponents(&self, kernel: usize) -> Vec<u32> {
        let h = self.narrow_class_number();
        let sq: Vec<usize> = (0..h).map(|x| self.compose(x, x)).collect();
        let in_h = |x: usize| x == self.identity || x == kernel;
        let hsize = if kernel == self.identity { 1 } else { 2 };
        let mut cur: Vec<usize> = (0..h).collect();
        let mut prev_log = 0u32;
        let mut counts = Vec::new();
        loop {
            cur = cur.iter().map(|&x| sq[x]).collect();
            let n = cur.iter().filter(|&&x| in_h(x)).count() / hsize;
            debug_assert!(n.is_power_of_two());
            let lg = n.trailing_zeros();
            if lg == prev_log {
                break;
            }
            counts.push(lg - prev_log);
            prev_log = lg;
        }
        // counts[k] = number of invariant factors with exponent ≥ k + 1
        let mut exps = Vec::new();
        for (k, &c) in counts.iter().enumerate() {
            let next = counts.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(c - next) {
                exps.push(k as u32 + 1);
            }
        }
        exps.sort_unstable();
        exps
    }
}

pub fn narrow_class_number(disc: u64) -> Result<usize, FormError> {
    Ok(FormClassGroup::new(disc)?.narrow_class_number())
}

/// 2-part of the class group of Q(√d).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroup2 {
    pub d: u64,
    /// h_2 = 2^m for the wide class group.
    pub m: u32,
    pub m_narrow: u32,
    /// 2-power invariant factors of the wide 2-class group.
    pub invariant_factors: Vec<u64>,
    pub narrow_invariant_factors: Vec<u64>,
    /// 2-rank and 4-rank of the wide 2-class group.
    pub two_rank: u32,
    pub four_rank: u32,
    pub narrow_two_rank: u32,
    pub h_plus: u64,
    pub h: u64,
    pub unit_norm: i8,
}

impl ClassGroup2 {
    pub fn h2(&self) -> u64 {
        1 << self.m
    }
}

pub fn h2_wide(d: u64, cap: u64) -> Result<ClassGroup2, FormError> {
    if d < 2 || !is_squarefree(d) {
        return Err(FormError::BadRadicand(d));
    }
    let disc = field_discriminant(d);
    if disc > cap {
        return Err(FormError::OverCap { disc, cap });
    }
    let g = FormClassGroup::new(disc)?;
    let j = g.minus_one_class();
    let unit_norm = fundamental_unit(d).map_err(|_| FormError::BadRadicand(d))?.norm;
    assert_eq!(j == g.identity, unit_norm == -1, "narrow/wide ratio disagrees with N(ε) for d = {d}");
    let narrow = g.two_sylow_exponents(g.identity);
    let wide = g.two_sylow_exponents(j);
    let h_plus = g.narrow_class_number() as u64;
    let h = if unit_norm == -1 { h_plus } else { h_plus / 2 };
    let pow2 = |e: &u32| 1u64 << e;
    let cg = ClassGroup2 {
        d,
        m: wide.iter().sum(),
        m_narrow: narrow.iter().sum(),
        invariant_factors: wide.iter().map(pow2).collect(),
        narrow_invariant_factors: narrow.iter().map(pow2).collect(),
        two_rank: wide.len() as u32,
        four_rank: wide.iter().filter(|&&e| e >= 2).count() as u32,
        narrow_two_rank: narrow.len() as u32,
        h_plus,
        h,
        unit_norm,
    };
    debug_assert_eq!(1u64 << cg.m, h & h.wrapping_neg());
    Ok(cg)
}

/// Number of prime divisors of the discriminant of Q(√d).
pub fn ramified_prime_count(d: u64) -> u32 {
    let mut ps = prime_divisors(field_discriminant(d));
    ps.dedup();
    ps.len() as u32
}

/// Whether d is on the list of radicands with odd class number:
/// 2, primes p ≡ 1 (mod 4), q, 2q and q1q2 with primes q, q_i ≡ 3 (mod 4).
pub fn odd_class_number_listed(d: u64) -> bool {
    let ps = prime_divisors(d);
    if !is_squarefree(d) {
        return false;
    }
    let odd: Vec<u64> = ps.iter().copied().filter(|&p| p != 2).collect();
    let two = d % 2 == 0;
    match (two, odd.as_slice()) {
        (true, []) => true,
        (false, [_]) => true,
        (true, [q]) => q % 4 == 3,
        (false, [q1, q2]) => q1 % 4 == 3 && q2 % 4 == 3,
        _ => false,
    }
}

/// Agreement between the computed parity of h(d) and the listed criterion.
pub fn parity_table_check(d: u64, cap: u64) -> Result<bool, FormError> {
    let cg = h2_wide(d, cap)?;
    Ok((cg.m == 0) == odd_class_number_listed(d))
}
