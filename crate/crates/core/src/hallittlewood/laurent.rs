use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{qbinom_f64, Signature};

/// Largest number of variables accepted by [`qw_laurent_p`].
pub const MAX_LAURENT_VARS: usize = 3;

/// Monomial expansion `P_μ(w; q, 0) = Σ c_e w^e` over Gelfand-Tsetlin
/// patterns with top row `μ`. Exponent vectors may be negative.
pub fn qw_laurent_monomials(mu: &Signature, q: f64) -> Result<Vec<(Vec<i64>, f64)>> {
    let k = mu.len();
    if k > MAX_LAURENT_VARS {
        return Err(Error::OutOfRange(format!("{k} variables exceeds the limit {MAX_LAURENT_VARS}")));
    }
    let mut acc: BTreeMap<Vec<i64>, f64> = BTreeMap::new();
    let mut exps = vec![0i64; k];
    fn rec(row: &[i64], w: f64, exps: &mut Vec<i64>, q: f64, acc: &mut BTreeMap<Vec<i64>, f64>) {
        let n = row.len();
        if n == 0 {
            *acc.entry(exps.clone()).or_insert(0.0) += w;
            return;
        }
        let top: i64 = row.iter().sum();
        let mut below = Vec::with_capacity(n - 1);
        fn inner(
            row: &[i64],
            i: usize,
            below: &mut Vec<i64>,
            w: f64,
            top: i64,
            exps: &mut Vec<i64>,
            q: f64,
            acc: &mut BTreeMap<Vec<i64>, f64>,
        ) {
            let n = row.len();
            if i + 1 == n {
                let psi: f64 = (0..n - 1)
                    .map(|j| qbinom_f64((row[j] - row[j + 1]) as usize, row[j] - below[j], q))
                    .product();
                exps[n - 1] = top - below.iter().sum::<i64>();
                let saved = exps.clone();
                rec(below, w * psi, exps, q, acc);
                *exps = saved;
                return;
            }
            for v in row[i + 1]..=row[i] {
                below.push(v);
                inner(row, i + 1, below, w, top, exps, q, acc);
                below.pop();
            }
        }
        inner(row, 0, &mut below, w, top, exps, q, acc);
    }
    rec(mu.parts(), 1.0, &mut exps, q, &mut acc);
    Ok(acc.into_iter().filter(|(_, c)| *c != 0.0).collect())
}

/// `P_μ(w_1, …, w_k; q, 0)` for a signature `μ` of length `k ≤ 3`.
pub fn qw_laurent_p(mu: &Signature, w: &[Complex64], q: f64) -> Result<Complex64> {
    if w.len() != mu.len() {
        return Err(Error::LengthMismatch(mu.len(), w.len()));
    }
    if w.iter().any(|z| z.norm() == 0.0) {
        return Err(Error::OutOfRange("Laurent polynomial evaluated at w = 0".into()));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for (e, c) in qw_laurent_monomials(mu, q)? {
        let mut term = Complex64::new(c, 0.0);
        for (z, &ei) in w.iter().zip(&e) {
            term *= z.powi(ei as i32);
        }
        total += term;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64]) -> Signature {
        Signature::new(v.to_vec()).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn one_row() {
        let w = c(0.7, -1.2);
        for j in -3..4 {
            let v = qw_laurent_p(&s(&[j]), &[w], 0.5).unwrap();
            assert!((v - w.powi(j as i32)).norm() < 1e-13);
        }
    }

    #[test]
    fn elementary() {
        let w = [c(0.3, 0.4), c(-1.1, 0.2)];
        let v = qw_laurent_p(&s(&[1, 0]), &w, 0.5).unwrap();
        assert!((v - (w[0] + w[1])).norm() < 1e-14);
    }

    #[test]
    fn constant_rows() {
        let w = [c(0.3, 0.4), c(-1.1, 0.2), c(0.9, -0.5)];
        for d in -2..3 {
            let v = qw_laurent_p(&s(&[d, d, d]), &w, 0.3).unwrap();
            let expect = (w[0] * w[1] * w[2]).powi(d as i32);
            assert!((v - expect).norm() < 1e-12 * expect.norm().max(1.0));
        }
    }

    #[test]
    fn symmetric_in_variables() {
        let mu = s(&[3, 1, -1]);
        let w = [c(0.3, 0.4), c(-1.1, 0.2), c(0.9, -0.5)];
        let a = qw_laurent_p(&mu, &w, 0.5).unwrap();
        let b = qw_laurent_p(&mu, &[w[2], w[0], w[1]], 0.5).unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn guards() {
        assert!(qw_laurent_p(&s(&[1, 0]), &[c(0.0, 0.0), c(1.0, 0.0)], 0.5).is_err());
        assert!(qw_laurent_p(&s(&[1, 0, 0, 0]), &[c(1.0, 0.0); 4], 0.5).is_err());
    }
}
