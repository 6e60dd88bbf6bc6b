use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::qcore::{rational_from_f64, to_f64, Partition, Rational};

/// A sub-partition `ρ ⊆ λ` with the total `φ`-weight of chains `ρ → λ`.
#[derive(Clone, Debug, Serialize)]
pub struct GTChainWeight {
    pub partition: Partition,
    #[serde(with = "crate::qcore::rational_serde")]
    pub weight: Rational,
}

fn subpartitions(lambda: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(lambda.len());
    fn rec(lambda: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == lambda.len() {
            out.push(cur.clone());
            return;
        }
        let cap = if i == 0 { lambda[0] } else { lambda[i].min(cur[i - 1]) };
        for v in 0..=cap {
            cur.push(v);
            rec(lambda, cur, out);
            cur.pop();
        }
    }
    rec(lambda, &mut cur, &mut out);
    out
}

/// Weighted chain counts `F(ρ) = Σ_{ρ = ρ_0 ⊂ … ⊂ ρ_r = λ} ∏ φ_{ρ_{j+1}/ρ_j}(0, t)`,
/// one box per step, keyed by zero-padded parts.
fn chain_table(lambda: &Partition, t: &Rational) -> HashMap<Vec<usize>, Rational> {
    let lam = lambda.parts();
    let n = lam.len();
    let mut tpow = vec![Rational::one()];
    for k in 1..=n + 1 {
        let next = &tpow[k - 1] * t;
        tpow.push(next);
    }
    let mut subs = subpartitions(lam);
    subs.sort_by_key(|r| std::cmp::Reverse(r.iter().sum::<usize>()));
    let mut table: HashMap<Vec<usize>, Rational> = HashMap::with_capacity(subs.len());
    for rho in subs {
        if rho.as_slice() == lam {
            table.insert(rho, Rational::one());
            continue;
        }
        let mut acc = Rational::zero();
        for r in 0..n {
            if rho[r] >= lam[r] || (r > 0 && rho[r - 1] == rho[r]) {
                continue;
            }
            let v = rho[r] + 1;
            let m = rho.iter().filter(|&&x| x == v).count();
            let mut up = rho.clone();
            up[r] += 1;
            let w = &table[&up];
            if !w.is_zero() {
                acc += (Rational::one() - &tpow[m + 1]) * w;
            }
        }
        table.insert(rho, acc);
    }
    table
}

/// The chain-weight table for `λ`, sorted by decreasing size.
pub fn tableau_weights(lambda: &Partition, t: &Rational) -> Vec<GTChainWeight> {
    let mut v: Vec<GTChainWeight> = chain_table(lambda, t)
        .into_iter()
        .map(|(k, w)| GTChainWeight { partition: Partition::new(k).expect("sub-partition"), weight: w })
        .collect();
    v.sort_by(|a, b| b.partition.size().cmp(&a.partition.size()).then(b.partition.cmp(&a.partition)));
    v
}

/// Coefficients `c_j` with `Q_λ(γ(g), α(a); 0, t) = Σ_j c_j g^j`, where `g` is
/// the image of `p_1` under the Plancherel part.
pub fn q_gamma_alpha_coeffs(lambda: &Partition, a: &Rational, t: &Rational) -> Vec<Rational> {
    let n = lambda.size();
    let mut coeffs = vec![Rational::zero(); n + 1];
    if lambda.is_empty() {
        coeffs[0] = Rational::one();
        return coeffs;
    }
    let table = chain_table(lambda, t);
    let mut fact = vec![BigInt::one()];
    for k in 1..=n {
        let next = &fact[k - 1] * BigInt::from(k);
        fact.push(next);
    }
    let mut apow = Rational::one();
    for c in 0..=lambda.part(1) {
        let mut start = vec![0usize; lambda.len()];
        start[0] = c;
        let w = &table[&start];
        let phi = if c == 0 { Rational::one() } else { Rational::one() - t };
        let j = n - c;
        coeffs[j] += phi * &apow * w / Rational::from_integer(fact[j].clone());
        apow *= a;
    }
    coeffs
}

/// `Q_λ(γ(g), α(a); 0, t)` evaluated exactly at the double `g`, then rounded.
pub fn q_gamma_alpha(lambda: &Partition, g: f64, a: &Rational, t: &Rational) -> f64 {
    let coeffs = q_gamma_alpha_coeffs(lambda, a, t);
    let g = rational_from_f64(g).expect("finite g");
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * &g + c;
    }
    to_f64(&acc)
}
