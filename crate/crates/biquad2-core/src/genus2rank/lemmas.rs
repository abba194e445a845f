//! Closed-form rank values for the shapes of [`Shape`], as functions of the
//! residues of r, s, t modulo 8 and their quadratic characters.
//!
//! Level-one tables assume K₁ is not one of the exceptional fields where a
//! prime p | d has p ≡ 1 (mod 8) and (δ₀/p) = 1; there they return `None`.
//! Three-prime level-one tables refine the level-zero value 2 only.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{PrimeTuple, Shape};
use crate::arith::legendre;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RankClaim {
    Exact(u32),
    OneOf(Vec<u32>),
    AtLeast(u32),
}

impl RankClaim {
    pub fn admits(&self, rank: u32) -> bool {
        match self {
            RankClaim::Exact(n) => rank == *n,
            RankClaim::OneOf(v) => v.contains(&rank),
            RankClaim::AtLeast(n) => rank >= *n,
        }
    }

    /// True when every admitted rank is at most 2.
    pub fn at_most_two(&self) -> bool {
        match self {
            RankClaim::Exact(n) => *n <= 2,
            RankClaim::OneOf(v) => v.iter().all(|&n| n <= 2),
            RankClaim::AtLeast(_) => false,
        }
    }
}

impl fmt::Display for RankClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankClaim::Exact(n) => write!(f, "{n}"),
            RankClaim::OneOf(v) => {
                write!(f, "{{")?;
                for (i, n) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{n}")?;
                }
                write!(f, "}}")
            }
            RankClaim::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

use RankClaim::{AtLeast, Exact, OneOf};

fn l(a: u64, p: u64) -> i8 {
    legendre(a as i64, p)
}

fn perms2(ps: &[u64]) -> [(u64, u64); 2] {
    [(ps[0], ps[1]), (ps[1], ps[0])]
}

fn perms3(ps: &[u64]) -> [(u64, u64, u64); 6] {
    let (a, b, c) = (ps[0], ps[1], ps[2]);
    [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]
}

pub fn claim(shape: Shape, t: &PrimeTuple) -> Option<RankClaim> {
    let ps = &t.primes;
    match shape {
        Shape::A => Some(level0(t.qs[0], ps, Variant::A)),
        Shape::B => Some(level0(t.qs[0], ps, Variant::B)),
        Shape::C => level0_c(t.qs[0], t.qs[1], ps),
        Shape::A1 => level1_a(t.qs[0], ps),
        Shape::B1 => level1_b(t.qs[0], ps),
        Shape::C1 => level1_c(t.qs[0], t.qs[1], ps),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Variant {
    A,
    B,
}

/// Levels zero for F = Q(√q) and Q(√2q); the character is (q/·) resp. (2q/·).
fn level0(q: u64, ps: &[u64], v: Variant) -> RankClaim {
    let a = if v == Variant::A { q } else { 2 * q };
    let in_pq = |p: u64| p % 8 == 1 && l(q, p) == 1;
    match ps.len() {
        1 => {
            let r = ps[0];
            Exact(u32::from(in_pq(r)))
        }
        2 => {
            if ps.iter().all(|&p| in_pq(p)) {
                return AtLeast(3);
            }
            let one = perms2(ps).iter().any(|&(r, s)| {
                let (x, y) = (l(a, r), l(a, s));
                let (r8, s8) = (r % 8, s % 8);
                (x == -1 && y == -1)
                    || (x == -1 && y == 1 && s8 != 1)
                    || (x == 1
                        && y == 1
                        && match v {
                            Variant::A => (r8 == 7 && (s8 == 3 || s8 == 5)) || (r8 == 3 && s8 == 5),
                            Variant::B => r8 == 7 && s8 == 3,
                        })
            });
            if one {
                Exact(1)
            } else {
                Exact(2)
            }
        }
        3 => {
            let two = perms3(ps).iter().any(|&(r, s, t)| {
                let (x, y, z) = (l(a, r), l(a, s), l(a, t));
                let (r8, s8) = (r % 8, s % 8);
                (x == 1 && y == 1 && z == -1 && r8 == 3 && (s8 == 5 || s8 == 7))
                    || (x == 1 && y == -1 && z == -1 && matches!(r8, 3 | 5 | 7))
                    || (x == -1 && y == -1 && z == -1)
            });
            if two {
                Exact(2)
            } else {
                AtLeast(3)
            }
        }
        _ => AtLeast(3),
    }
}

/// The s-condition of the mixed level-zero case for F = Q(√q₁q₂).
fn c_mixed_ok(q1: u64, s: u64) -> bool {
    let m1 = if s % 4 == 1 { 1 } else { -1 };
    let a = l(q1, s);
    a != m1 || a == -1
}

fn level0_c(q1: u64, q2: u64, ps: &[u64]) -> Option<RankClaim> {
    let n = q1 * q2;
    let m1 = |p: u64| if p % 4 == 1 { 1i8 } else { -1 };
    match ps.len() {
        1 => {
            let r = ps[0];
            Some(Exact(u32::from(l(n, r) == 1 && m1(r) == 1 && l(q1, r) == 1)))
        }
        2 => {
            let all = ps.iter().all(|&p| l(n, p) == 1 && m1(p) == 1 && l(q1, p) == 1);
            if all {
                return Some(AtLeast(3));
            }
            let one = perms2(ps).iter().any(|&(r, s)| {
                let (x, y) = (l(n, r), l(n, s));
                (x == -1 && y == -1)
                    || (x == -1 && y == 1 && c_mixed_ok(q1, s))
                    || (x == 1
                        && y == 1
                        && (l(q1, r) == -1 || l(q1, s) == -1)
                        && (m1(r) == -1 || m1(s) == -1)
                        && (l(q1, r) * m1(r) == -1 || l(q1, s) * m1(s) == -1))
            });
            Some(if one { Exact(1) } else { Exact(2) })
        }
        3 => {
            let two = perms3(ps).iter().any(|&(r, s, t)| {
                let (x, y, z) = (l(n, r), l(n, s), l(n, t));
                (x == -1 && y == -1 && z == -1) || (x == -1 && y == 1 && z == -1 && c_mixed_ok(q1, s))
            });
            Some(if two { Exact(2) } else { AtLeast(3) })
        }
        _ => Some(AtLeast(3)),
    }
}

fn exceptional(delta0: u64, ps: &[u64]) -> bool {
    ps.len() <= 2 && ps.iter().any(|&p| p % 8 == 1 && l(delta0, p) == 1)
}

fn any2(ps: &[u64], f: impl Fn(u64, u64) -> bool) -> bool {
    perms2(ps).iter().any(|&(r, s)| f(r, s))
}

fn level1_a(q: u64, ps: &[u64]) -> Option<RankClaim> {
    if exceptional(q, ps) {
        return None;
    }
    let q8 = q % 8;
    match ps.len() {
        1 => {
            let r8 = ps[0] % 8;
            Some(if r8 == 3 || r8 == 5 || (r8 == 7 && q8 == 3) { Exact(0) } else { Exact(1) })
        }
        2 => {
            let t35 = |x: u64| x == 3 || x == 5;
            let one = any2(ps, |r, s| {
                let (x, y, r8, s8) = (l(q, r), l(q, s), r % 8, s % 8);
                match (x, y) {
                    (-1, -1) => (r8 == 5 && s8 == 3) || (t35(r8) && s8 == 7 && q8 == 3),
                    (-1, 1) => {
                        (r8 == 5 && t35(s8))
                            || (r8 == 3 && s8 == 3 && q8 == 7)
                            || (r8 == 3 && s8 == 5)
                            || (r8 == 7 && t35(s8) && q8 == 3)
                            || (t35(r8) && s8 == 7 && q8 == 3)
                    }
                    (1, 1) => (r8 == 7 && t35(s8) && q8 == 3) || (r8 == 3 && s8 == 5),
                    _ => false,
                }
            });
            let two = any2(ps, |r, s| {
                let (x, y, r8, s8) = (l(q, r), l(q, s), r % 8, s % 8);
                match (x, y) {
                    (-1, -1) => {
                        (t35(r8) && s8 == 7 && q8 == 7)
                            || (r8 == s8 && t35(r8))
                            || (t35(r8) && s8 == 1)
                            || (r8 == 7 && (s8 == 7 || s8 == 1) && q8 == 3)
                    }
                    (-1, 1) => {
                        (r8 == 7 && s8 == 7 && q8 == 3)
                            || (r8 == 3 && s8 == 3 && q8 == 3)
                            || (r8 == 1 && s8 == 7 && q8 == 3)
                            || (r8 == 1 && t35(s8))
                            || (r8 == 7 && t35(s8) && q8 == 7)
                            || (t35(r8) && s8 == 7 && q8 == 7)
                    }
                    (1, 1) => (r8 == s8 && t35(r8)) || (r8 == 7 && t35(s8) && q8 == 7),
                    _ => false,
                }
            });
            Some(pick(one, two))
        }
        3 if level0(q, ps, Variant::A) == Exact(2) => level1_a_three(q, ps),
        _ => None,
    }
}

fn pick(one: bool, two: bool) -> RankClaim {
    match (one, two) {
        (true, true) => OneOf(vec![1, 2]),
        (true, false) => Exact(1),
        (false, true) => Exact(2),
        _ => OneOf(vec![3, 4]),
    }
}

fn level1_a_three(q: u64, ps: &[u64]) -> Option<RankClaim> {
    let q8 = q % 8;
    let plus: Vec<u64> = ps.iter().copied().filter(|&p| l(q, p) == 1).collect();
    let minus: Vec<u64> = ps.iter().copied().filter(|&p| l(q, p) == -1).collect();
    let pair = |a: u64, b: u64, x: u64, y: u64| (a % 8 == x && b % 8 == y) || (a % 8 == y && b % 8 == x);
    match plus.len() {
        2 => {
            let t8 = minus[0] % 8;
            if pair(plus[0], plus[1], 3, 5) {
                Some(Exact(if t8 == 5 || (t8 == 3 && q8 == 7) || (t8 == 7 && q8 == 3) { 2 } else { 3 }))
            } else if pair(plus[0], plus[1], 3, 7) {
                Some(Exact(if (t8 == 1 || t8 == 7) && q8 == 7 { 4 } else { 3 }))
            } else {
                None
            }
        }
        1 => {
            let (s, t) = (minus[0], minus[1]);
            let p = |x, y| pair(s, t, x, y);
            match plus[0] % 8 {
                7 => Some(Exact(if (p(1, 1) || p(7, 7)) && q8 == 7 {
                    5
                } else if q8 == 3 && [(3, 3), (5, 5), (3, 5), (7, 5), (1, 5), (7, 3), (1, 3)].iter().any(|&(x, y)| p(x, y)) {
                    3
                } else {
                    4
                })),
                5 => Some(Exact(if p(3, 5) || (p(7, 3) && q8 == 3) {
                    2
                } else if p(1, 1) || ((p(7, 1) || p(7, 7)) && q8 == 7) {
                    4
                } else {
                    3
                })),
                3 => Some(Exact(if (p(3, 5) && q8 == 7) || (p(5, 7) && q8 == 3) {
                    2
                } else if p(1, 1) || ((p(7, 7) || p(7, 1)) && q8 == 7) || (p(3, 3) && q8 == 3) {
                    4
                } else {
                    3
                })),
                _ => None,
            }
        }
        0 => {
            let hit = perms3(ps).iter().any(|&(r, s, t)| r % 8 == 3 && s % 8 == 5 && t % 8 == 7);
            Some(if hit && q8 == 3 { Exact(2) } else { OneOf(vec![3, 4, 5]) })
        }
        _ => None,
    }
}

fn level1_b(q: u64, ps: &[u64]) -> Option<RankClaim> {
    match ps.len() {
        1 | 2 => level1_a(q, ps),
        3 if level0(q, ps, Variant::B) == Exact(2) => {
            let q8 = q % 8;
            // (r, s, t mod 8, q mod 8 or 0 for any, characters (q/·))
            const ROWS: [(u64, u64, u64, u64, [i8; 3]); 8] = [
                (3, 5, 3, 7, [-1, -1, 1]),
                (3, 5, 5, 0, [-1, -1, 1]),
                (3, 5, 7, 3, [-1, -1, -1]),
                (3, 3, 5, 7, [-1, 1, 1]),
                (3, 7, 5, 3, [-1, -1, 1]),
                (5, 3, 5, 0, [-1, 1, 1]),
                (5, 7, 3, 3, [-1, -1, 1]),
                (3, 7, 5, 3, [1, -1, 1]),
            ];
            let hit = perms3(ps).iter().any(|&(r, s, t)| {
                ROWS.iter().any(|&(a, b, c, qq, sy)| {
                    r % 8 == a
                        && s % 8 == b
                        && t % 8 == c
                        && (qq == 0 || q8 == qq)
                        && [l(q, r), l(q, s), l(q, t)] == sy
                })
            });
            Some(if hit { Exact(2) } else { AtLeast(3) })
        }
        _ => None,
    }
}

fn level1_c(q1: u64, q2: u64, ps: &[u64]) -> Option<RankClaim> {
    let n = q1 * q2;
    if exceptional(n, ps) {
        return None;
    }
    let q3 = q1 % 8 == 3;
    let q7 = q1 % 8 == 7;
    match ps.len() {
        1 => {
            let r = ps[0];
            let r8 = r % 8;
            let zero = r8 == 3
                || (r8 == 5 && q7 && l(q1, r) == -1)
                || (r8 == 5 && q3 && l(n, r) == -1)
                || (r8 == 7 && q3);
            Some(Exact(if zero { 0 } else { 1 }))
        }
        2 => {
            let one = any2(ps, |r, s| {
                let (x, y, r8, s8) = (l(n, r), l(n, s), r % 8, s % 8);
                let (lr, ls) = (l(q1, r), l(q1, s));
                let five_three = r8 == 5 && s8 == 3 && (q3 || (q7 && lr == -1));
                let three_three_ne = r8 == 3 && s8 == 3 && q7 && lr != ls;
                match (x, y) {
                    (-1, -1) => five_three || three_three_ne || (r8 == 3 && s8 == 7 && q3),
                    (-1, 1) => three_three_ne || (r8 == 3 && s8 == 5 && q7 && ls == -1) || five_three,
                    (1, 1) => three_three_ne || (r8 == 5 && s8 == 3 && q7 && lr == -1),
                    _ => false,
                }
            });
            let two = any2(ps, |r, s| {
                let (x, y, r8, s8) = (l(n, r), l(n, s), r % 8, s % 8);
                let (lr, ls) = (l(q1, r), l(q1, s));
                let five_five = r8 == 5 && s8 == 5 && (q3 || (q7 && (lr == -1 || ls == -1)));
                let three_three_eq = r8 == 3 && s8 == 3 && (q3 || (q7 && lr == ls));
                let five_three_plus = r8 == 5 && s8 == 3 && q7 && lr == 1;
                match (x, y) {
                    (-1, -1) => {
                        five_three_plus
                            || five_five
                            || three_three_eq
                            || (r8 == 3 && s8 == 7 && q7)
                            || (r8 == 5 && (s8 == 7 || s8 == 1) && (q3 || (q7 && lr == -1)))
                            || (r8 == 3 && s8 == 1)
                            || (r8 == 7 && (s8 == 7 || s8 == 1) && q3)
                    }
                    (-1, 1) => {
                        ((r8 == 7 || r8 == 1) && s8 == 7 && q3)
                            || five_five
                            || three_three_eq
                            || (r8 == 3 && s8 == 5 && (q3 || (q7 && ls == 1)))
                            || five_three_plus
                            || (r8 == 1 && s8 == 5 && q7 && ls == -1)
                            || (r8 == 1 && s8 == 3)
                    }
                    (1, 1) => {
                        (r8 == 7 && s8 == 5 && (q3 || (q7 && ls == -1)))
                            || (r8 == 7 && s8 == 3 && (q3 || (q7 && lr != ls)))
                            || three_three_eq
                            || (r8 == 5 && s8 == 5 && q7 && (lr == -1 || ls == -1))
                            || (r8 == 5 && s8 == 3 && (q3 || (q7 && lr == 1)))
                    }
                    _ => false,
                }
            });
            Some(pick(one, two))
        }
        3 => {
            let hit = perms3(ps).iter().any(|&(r, s, t)| {
                let (x, y, z) = (l(n, r), l(n, s), l(n, t));
                x == -1 && z == -1 && (y == -1 || y == 1)
            });
            hit.then(|| OneOf(vec![3, 4, 5]))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{find_primes, odd_primes, CongruenceSpec};

    #[test]
    fn claims_admit() {
        assert!(Exact(2).admits(2));
        assert!(!Exact(2).admits(3));
        assert!(AtLeast(3).admits(7));
        assert!(OneOf(vec![3, 4]).admits(4));
        assert!(Exact(1).at_most_two());
        assert!(!AtLeast(3).at_most_two());
    }

    #[test]
    fn level_one_tables_are_consistent() {
        // no tuple satisfies both a rank 1 and a rank 2 row
        let qs = find_primes(&CongruenceSpec::new(3, 3, 60));
        let ps = odd_primes(3, 120);
        for &q in &qs {
            for (i, &r) in ps.iter().enumerate() {
                for &s in &ps[i + 1..] {
                    if r == q || s == q {
                        continue;
                    }
                    if let Some(c) = level1_a(q, &[r, s]) {
                        assert_ne!(c, OneOf(vec![1, 2]), "A1 {q} {r} {s}");
                    }
                }
            }
        }
        for (i, &a) in qs.iter().enumerate() {
            for &b in &qs[i + 1..] {
                let Some((q1, q2)) = super::super::form_c_roles(a, b) else { continue };
                for (j, &r) in ps.iter().enumerate() {
                    for &s in &ps[j + 1..] {
                        if [q1, q2].contains(&r) || [q1, q2].contains(&s) {
                            continue;
                        }
                        if let Some(c) = level1_c(q1, q2, &[r, s]) {
                            assert_ne!(c, OneOf(vec![1, 2]), "C1 {q1} {q2} {r} {s}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn single_prime_values() {
        assert_eq!(level0(7, &[113], Variant::A), Exact(1));
        assert_eq!(level0(3, &[5], Variant::A), Exact(0));
        assert_eq!(level1_a(3, &[7]), Some(Exact(0)));
        assert_eq!(level1_a(7, &[31]), Some(Exact(1)));
        assert_eq!(level1_a(7, &[113]), None);
    }
}
