use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arithmetic in `ℤ/p^K` on `u128` residues, for `p^K < 2^127`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModRing {
    p: u64,
    #[serde(rename = "K")]
    k: u32,
    #[serde(skip)]
    modulus: u128,
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod_u64(r, b, m);
        }
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl ModRing {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::OutOfRange("precision K must be positive".into()));
        }
        let mut m: u128 = 1;
        for _ in 0..k {
            m = m
                .checked_mul(p as u128)
                .filter(|&m| m < 1 << 127)
                .ok_or(Error::ModulusTooLarge { p, k })?;
        }
        Ok(ModRing { p, k, modulus: m })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `p^K`.
    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    pub fn add(&self, a: u128, b: u128) -> u128 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    pub fn sub(&self, a: u128, b: u128) -> u128 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    pub fn neg(&self, a: u128) -> u128 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    pub fn mul(&self, a: u128, b: u128) -> u128 {
        if self.p == 2 {
            return a.wrapping_mul(b) & (self.modulus - 1);
        }
        if self.modulus <= 1 << 64 {
            return a * b % self.modulus;
        }
        let (mut a, mut b, mut r) = (a, b, 0u128);
        while b > 0 {
            if b & 1 == 1 {
                r = self.add(r, a);
            }
            a = self.add(a, a);
            b >>= 1;
        }
        r
    }

    /// `p`-adic valuation of a residue; `K` for zero.
    pub fn valuation(&self, a: u128) -> u32 {
        if a == 0 {
            return self.k;
        }
        if self.p == 2 {
            return a.trailing_zeros();
        }
        let (p, mut a, mut v) = (self.p as u128, a, 0);
        while a % p == 0 {
            a /= p;
            v += 1;
        }
        v
    }

    /// `p^e mod p^K`.
    pub fn pow_p(&self, e: u32) -> u128 {
        if e >= self.k {
            0
        } else {
            (self.p as u128).pow(e)
        }
    }

    /// Inverse of a unit by extended Euclid on `(a, p^K)`.
    pub fn inverse(&self, a: u128) -> Option<u128> {
        if a % self.p as u128 == 0 {
            return None;
        }
        let m = self.modulus as i128;
        let (mut r0, mut r1) = (m, a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Some(s0.rem_euclid(m) as u128)
    }
}
