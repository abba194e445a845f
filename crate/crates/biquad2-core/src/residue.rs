//! Arithmetic in F_ℓ and F_ℓ² = F_ℓ[i]/(i² − n) for an odd prime ℓ.

use crate::arith::{legendre, mul_mod, pow_mod, sqrt_mod};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp2 {
    pub p: u64,
    /// A fixed quadratic nonresidue modulo p.
    pub n: u64,
}

/// a + b·i
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct El(pub u64, pub u64);

impl Fp2 {
    pub fn new(p: u64) -> Self {
        let mut n = 2;
        while legendre(n as i64, p) != -1 {
            n += 1;
        }
        Fp2 { p, n }
    }

    pub fn from_int(&self, a: i64) -> El {
        El(a.rem_euclid(self.p as i64) as u64, 0)
    }

    pub fn add(&self, x: El, y: El) -> El {
        El((x.0 + y.0) % self.p, (x.1 + y.1) % self.p)
    }

    pub fn neg(&self, x: El) -> El {
        El((self.p - x.0) % self.p, (self.p - x.1) % self.p)
    }

    pub fn mul(&self, x: El, y: El) -> El {
        let p = self.p;
        let re = (mul_mod(x.0, y.0, p) + mul_mod(mul_mod(x.1, y.1, p), self.n, p)) % p;
        let im = (mul_mod(x.0, y.1, p) + mul_mod(x.1, y.0, p)) % p;
        El(re, im)
    }

    pub fn scale(&self, x: El, k: u64) -> El {
        El(mul_mod(x.0, k, self.p), mul_mod(x.1, k, self.p))
    }

    pub fn pow(&self, mut x: El, mut e: u128) -> El {
        let mut acc = El(1, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        acc
    }

    /// A square root of the integer a in F_p², i.e. in F_p when a is a residue.
    pub fn sqrt_int(&self, a: u64) -> El {
        let a = a % self.p;
        if let Some(r) = sqrt_mod(a, self.p) {
            El(r, 0)
        } else {
            let ninv = pow_mod(self.n, self.p - 2, self.p);
            let r = sqrt_mod(mul_mod(a, ninv, self.p), self.p).expect("a/n is a residue");
            El(0, r)
        }
    }

    /// Quadratic character of x in the subfield of order p^f (f ∈ {1, 2}).
    pub fn quadratic_character(&self, x: El, f: u32) -> i8 {
        debug_assert!(f == 1 || f == 2);
        if x == El(0, 0) {
            return 0;
        }
        let q = if f == 1 { self.p as u128 } else { self.p as u128 * self.p as u128 };
        let v = self.pow(x, (q - 1) / 2);
        if v == El(1, 0) {
            1
        } else {
            debug_assert_eq!(v, El(self.p - 1, 0));
            -1
        }
    }

    pub fn in_prime_field(&self, x: El) -> bool {
        x.1 == 0
    }
}
