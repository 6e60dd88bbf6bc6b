use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{to_f64, Rational};
use crate::error::{Error, Result};

/// Default truncation tolerance for infinite products.
pub const DEFAULT_TOL: f64 = 1e-17;

/// A finite count or infinity (number of factors, number of variables).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extent {
    Finite(usize),
    Infinite,
}

impl Extent {
    pub fn finite(self) -> Option<usize> {
        match self {
            Extent::Finite(n) => Some(n),
            Extent::Infinite => None,
        }
    }
}

/// `C(n, 2) = n(n-1)/2` for any integer `n`.
pub fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Exact `(a; t)_n = ∏_{i<n} (1 - a t^i)`.
pub fn qpoch(a: &Rational, t: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut at = a.clone();
    for _ in 0..n {
        acc *= Rational::one() - &at;
        at *= t;
    }
    acc
}

/// `(t; t)_0, …, (t; t)_n`.
pub fn tfact_table(t: &Rational, n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Rational::one());
    let mut tp = t.clone();
    for i in 1..=n {
        let next = &out[i - 1] * (Rational::one() - &tp);
        out.push(next);
        tp *= t;
    }
    out
}

/// `(t; t)_n`.
pub fn tfact(t: &Rational, n: usize) -> Rational {
    qpoch(t, t, n)
}

fn infinite_terms(a_abs: f64, t_abs: f64, tol: f64) -> Result<usize> {
    if t_abs >= 1.0 || t_abs.is_nan() {
        return Err(Error::DivergentProduct(t_abs));
    }
    let mut m = 0usize;
    let mut bound = a_abs / (1.0 - t_abs);
    while bound >= tol {
        bound *= t_abs;
        m += 1;
        if m > 100_000 {
            break;
        }
    }
    Ok(m)
}

/// Floating `(a; t)_n`; for `n = ∞` the product stops at the first `m` with
/// `|a| |t|^m / (1 - |t|) < tol`.
pub fn qpoch_f64(a: f64, t: f64, n: Extent, tol: f64) -> Result<f64> {
    let m = match n {
        Extent::Finite(n) => n,
        Extent::Infinite => infinite_terms(a.abs(), t.abs(), tol)?,
    };
    let mut acc = 1.0;
    let mut at = a;
    for _ in 0..m {
        acc *= 1.0 - at;
        at *= t;
    }
    Ok(acc)
}

/// `(a; t)_∞` at the default tolerance. Panics unless `|t| < 1`.
pub fn qpoch_inf(a: f64, t: f64) -> f64 {
    qpoch_f64(a, t, Extent::Infinite, DEFAULT_TOL).expect("|t| < 1")
}

/// Complex `(a; t)_n` with real `t`, same truncation rule as [`qpoch_f64`].
pub fn qpoch_c64(a: Complex64, t: f64, n: Extent, tol: f64) -> Result<Complex64> {
    let m = match n {
        Extent::Finite(n) => n,
        Extent::Infinite => infinite_terms(a.norm(), t.abs(), tol)?,
    };
    let mut acc = Complex64::new(1.0, 0.0);
    let mut at = a;
    for _ in 0..m {
        acc *= 1.0 - at;
        at *= t;
    }
    Ok(acc)
}

/// Exact q-binomial `(t;t)_a / ((t;t)_b (t;t)_{a-b})`, zero unless `0 ≤ b ≤ a`.
pub fn qbinom(a: usize, b: i64, t: &Rational) -> Rational {
    if b < 0 || b as usize > a {
        return Rational::zero();
    }
    let b = (b as usize).min(a - b as usize);
    // ∏_{i<b} (1 - t^{a-i}) / (1 - t^{i+1})
    let mut num = Rational::one();
    let mut den = Rational::one();
    for i in 0..b {
        num *= Rational::one() - num_traits::pow(t.clone(), a - i);
        den *= Rational::one() - num_traits::pow(t.clone(), i + 1);
    }
    num / den
}

/// Floating q-binomial.
pub fn qbinom_f64(a: usize, b: i64, t: f64) -> f64 {
    if b < 0 || b as usize > a {
        return 0.0;
    }
    let b = (b as usize).min(a - b as usize);
    let mut acc = 1.0;
    for i in 0..b {
        acc *= (1.0 - t.powi((a - i) as i32)) / (1.0 - t.powi(i as i32 + 1));
    }
    acc
}

/// Checks `0 < t < 1`.
pub fn check_t(t: &Rational) -> Result<()> {
    if t.is_positive() && t < &Rational::one() {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("t = {} must lie in (0, 1)", to_f64(t))))
    }
}
