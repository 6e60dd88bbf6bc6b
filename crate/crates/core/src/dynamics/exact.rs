use std::collections::BTreeMap;

use super::cauchy::exact_cauchy_pmf;
use crate::error::{Error, Result};
use crate::hallittlewood::{principal_p, q_gamma_alpha};
use crate::qcore::{check_t, to_f64, DiscreteLaw, Extent, Partition, Rational, Signature};

fn tfact_f64(t: f64, max: usize) -> Vec<f64> {
    let mut out = vec![1.0];
    let mut tp = 1.0;
    for m in 1..=max {
        tp *= t;
        out.push(out[m - 1] * (1.0 - tp));
    }
    out
}

/// Partitions `ν ⊇ λ` with at most `n` parts and `|ν| ≤ max_size`.
fn containing(lambda: &Partition, n: usize, max_size: usize) -> Vec<Partition> {
    fn rec(lam: &[usize], n: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        let i = cur.len();
        if i == n {
            out.push(Partition::new(cur.clone()).expect("decreasing"));
            return;
        }
        let lo = lam.get(i).copied().unwrap_or(0);
        let rest: usize = lam.iter().skip(i + 1).sum();
        let used: usize = cur.iter().sum();
        let hi_budget = budget.saturating_sub(used + rest);
        let hi = if i == 0 { hi_budget } else { cur[i - 1].min(hi_budget) };
        for v in lo..=hi {
            cur.push(v);
            rec(lam, n, budget, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    if lambda.len() <= n && lambda.size() <= max_size {
        rec(lambda.parts(), n, max_size, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// `P_{ν/λ}(t, t², …; 0, t)` in floating point.
fn skew_principal_f64(nu: &Partition, lambda: &Partition, t: f64, tf: &[f64]) -> f64 {
    let (nc, lc) = (nu.conjugate(), lambda.conjugate());
    let mut acc = t.powi((nu.size() - lambda.size()) as i32);
    for x in 1..=nc.len() {
        let (l, m, l1, m1) = (nc.part(x), lc.part(x), nc.part(x + 1), lc.part(x + 1));
        acc *= t.powi(((l - m) * (l - m).saturating_sub(1) / 2) as i32);
        acc *= tf[l - m1] / (tf[l - m] * tf[l - l1]);
    }
    acc
}

/// Row of the one-step kernel of `SN(A_{s+1} ⋯ A_1)` for additive Haar
/// `N × N` factors: `Q_{ν/λ}(t, t², …) P_ν(1, …, t^{N-1}) / (P_λ(…) Π)`,
/// over `|ν| ≤ max_size`.
pub fn additive_haar_kernel_row(lambda: &Partition, n: usize, t: f64, max_size: usize) -> Vec<(Partition, f64)> {
    let tf = tfact_f64(t, n.max(max_size) + 1);
    let (ll, nl) = (lambda.len(), lambda.nlam());
    containing(lambda, n, max_size)
        .into_iter()
        .map(|nu| {
            let v = tf[n] * t.powi(nu.nlam() as i32 - nl as i32) * tf[n - ll] / tf[n - nu.len()]
                * skew_principal_f64(&nu, lambda, t, &tf);
            (nu, v)
        })
        .collect()
}

fn to_sig(p: &Partition, n: usize) -> Signature {
    p.to_signature(n).expect("at most n parts")
}

/// Law of `SN(A_s ⋯ A_1)` for additive Haar `N × N` factors by exact
/// convolution of the one-step kernel; the support is cut at `|λ| ≤ max_size`
/// and the missing mass is left out of `total_mass`.
pub fn additive_haar_chain_law(n: usize, s: usize, t: f64, max_size: usize) -> Result<DiscreteLaw> {
    if !(t > 0.0 && t < 1.0) || n == 0 {
        return Err(Error::OutOfRange("need 0 < t < 1 and N ≥ 1".into()));
    }
    let mut cur: BTreeMap<Partition, f64> = BTreeMap::from([(Partition::empty(), 1.0)]);
    for _ in 0..s {
        let mut next = BTreeMap::new();
        for (lam, &p) in &cur {
            for (nu, k) in additive_haar_kernel_row(lam, n, t, max_size) {
                *next.entry(nu).or_insert(0.0) += p * k;
            }
        }
        cur = next;
    }
    let mut law = DiscreteLaw::new(n);
    for (lam, p) in cur {
        law.add(to_sig(&lam, n), p)?;
    }
    Ok(law)
}

/// Signatures `ν ≻ λ` with `|ν| ≤ max_size`.
fn interlacing_above(lambda: &[i64], max_size: i64) -> Vec<Vec<i64>> {
    let mut out = vec![];
    let n = lambda.len();
    let base: i64 = lambda.iter().sum();
    fn rec(lam: &[i64], n: usize, room: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let i = cur.len();
        if i == n {
            out.push(cur.clone());
            return;
        }
        let hi = if i == 0 { lam[0] + room } else { lam[i - 1].min(lam[i] + room) };
        for v in lam[i]..=hi {
            cur.push(v);
            rec(lam, n, room - (v - lam[i]), cur, out);
            cur.pop();
        }
    }
    if base <= max_size {
        rec(lambda, n, max_size - base, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// Applies one exact Cauchy substep per entry of `alphas` to `init`,
/// keeping states with `|ν| ≤ max_size`.
pub fn cauchy_chain_law(init: &DiscreteLaw, alphas: &[Rational], t: &Rational, max_size: i64) -> Result<DiscreteLaw> {
    check_t(t)?;
    let n = init.length;
    let mut cur = init.support.clone();
    for x in alphas {
        let mut next: BTreeMap<Signature, f64> = BTreeMap::new();
        for (lam, &p) in &cur {
            for nu in interlacing_above(lam.parts(), max_size) {
                let nu = Signature::new(nu)?;
                let k = to_f64(&exact_cauchy_pmf(lam, &nu, x, Extent::Finite(n), t));
                *next.entry(nu).or_insert(0.0) += p * k;
            }
        }
        cur = next;
    }
    let mut law = DiscreteLaw::new(n);
    for (sig, p) in cur {
        law.add(sig, p)?;
    }
    Ok(law)
}

/// `Pr(λ^{(n)}(τ) = λ) = P_λ(1, …, t^{n-1}) Q_λ(γ(τ)) e^{-τ(1-t^n)/(1-t)}`.
pub fn plancherel_pmf(lambda: &Partition, tau: f64, n: usize, t: &Rational) -> Result<f64> {
    check_t(t)?;
    if lambda.len() > n {
        return Ok(0.0);
    }
    let tf = to_f64(t);
    let one = Rational::from_integer(1.into());
    let p = to_f64(&principal_p(lambda, &one, Extent::Finite(n), t)?);
    let q = q_gamma_alpha(lambda, tau / (1.0 - tf), &Rational::from_integer(0.into()), t);
    Ok(p * q * (-tau * (1.0 - tf.powi(n as i32)) / (1.0 - tf)).exp())
}

/// [`plancherel_pmf`] over all `λ` with at most `n` parts and `|λ| ≤ max_size`.
pub fn plancherel_law(n: usize, tau: f64, t: &Rational, max_size: usize) -> Result<DiscreteLaw> {
    let mut law = DiscreteLaw::new(n);
    for lam in containing(&Partition::empty(), n, max_size) {
        let p = plancherel_pmf(&lam, tau, n, t)?;
        law.add(to_sig(&lam, n), p)?;
    }
    Ok(law)
}
