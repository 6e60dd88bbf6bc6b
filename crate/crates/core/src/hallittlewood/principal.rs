use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::branching::phi_hl;
use crate::error::{Error, Result};
use crate::qcore::{binom2, rpow, tfact, Extent, Partition, Rational};

/// `P_λ(u, ut, …, ut^{N-1}; 0, t)`; for `N = ∞` the ratio
/// `(t;t)_N / (t;t)_{N - len λ}` is replaced by its limit `1`.
pub fn principal_p(lambda: &Partition, u: &Rational, n: Extent, t: &Rational) -> Result<Rational> {
    let mut acc = rpow(u, lambda.size() as i64) * rpow(t, lambda.nlam() as i64);
    if let Extent::Finite(n) = n {
        if lambda.len() > n {
            return Err(Error::TooManyParts { len: lambda.len(), n });
        }
        acc = acc * tfact(t, n) / tfact(t, n - lambda.len());
    }
    let values: BTreeSet<usize> = lambda.parts().iter().copied().collect();
    for i in values {
        acc /= tfact(t, lambda.multiplicity(i));
    }
    Ok(acc)
}

/// `P_{λ/μ}(u, ut, ut², …; 0, t)` as a product over columns:
/// `1(μ ⊆ λ) u^{|λ|-|μ|} ∏_x t^{C(λ'_x - μ'_x, 2)} (t;t)_{λ'_x - μ'_{x+1}} / ((t;t)_{λ'_x - μ'_x} (t;t)_{λ'_x - λ'_{x+1}})`.
pub fn skew_principal_p(lambda: &Partition, mu: &Partition, u: &Rational, t: &Rational) -> Rational {
    if !lambda.contains(mu) {
        return Rational::zero();
    }
    let (lc, mc) = (lambda.conjugate(), mu.conjugate());
    let mut acc = rpow(u, (lambda.size() - mu.size()) as i64);
    for x in 1..=lc.len() {
        let (l, m, l1, m1) = (lc.part(x), mc.part(x), lc.part(x + 1), mc.part(x + 1));
        acc *= rpow(t, binom2((l - m) as i64));
        acc *= tfact(t, l - m1);
        acc /= tfact(t, l - m) * tfact(t, l - l1);
    }
    acc
}

/// One-box transition probability
/// `((1-t)/(1-t^N)) (φ_{ν/μ}/(1-t)) P_ν(1,…,t^{N-1}) / P_μ(1,…,t^{N-1})`.
pub fn pieri_transition(mu: &Partition, nu: &Partition, n: usize, t: &Rational) -> Rational {
    if nu.size() != mu.size() + 1 || nu.len() > n || mu.len() > n || !mu.interlaces(nu) {
        return Rational::zero();
    }
    let one = Rational::one();
    let u = Rational::one();
    let pn = principal_p(nu, &u, Extent::Finite(n), t).expect("len checked");
    let pm = principal_p(mu, &u, Extent::Finite(n), t).expect("len checked");
    phi_hl(nu, mu, t) / (one - rpow(t, n as i64)) * pn / pm
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hallittlewood::hl_p;
    use crate::qcore::rat;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn principal_examples() {
        let t = rat(1, 2);
        let one = rat(1, 1);
        assert_eq!(principal_p(&p(&[]), &one, Extent::Finite(3), &t).unwrap(), one);
        for n in 1..6 {
            let v = principal_p(&p(&[1]), &one, Extent::Finite(n), &t).unwrap();
            assert_eq!(v, (rat(1, 1) - rpow(&t, n as i64)) / (rat(1, 1) - &t));
        }
        let v = principal_p(&p(&[2, 1]), &one, Extent::Finite(2), &t).unwrap();
        assert_eq!(v, &t * (rat(1, 1) + &t));
        assert!(principal_p(&p(&[1, 1, 1]), &one, Extent::Finite(2), &t).is_err());
    }

    #[test]
    fn principal_matches_branching() {
        let t = rat(1, 3);
        let u = rat(2, 5);
        for n in 1..4usize {
            let xs: Vec<Rational> = (0..n).map(|i| &u * rpow(&t, i as i64)).collect();
            for lam in [p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1]), p(&[3, 1, 1]), p(&[2, 2])] {
                let direct = hl_p(&lam, &xs, &t);
                match principal_p(&lam, &u, Extent::Finite(n), &t) {
                    Ok(v) => assert_eq!(v, direct, "{lam} n={n}"),
                    Err(_) => assert!(direct.is_zero()),
                }
            }
        }
    }

    #[test]
    fn skew_principal_examples() {
        let t = rat(1, 2);
        let u = rat(3, 1);
        let lam = p(&[3, 1, 1]);
        assert_eq!(skew_principal_p(&lam, &lam, &u, &t), rat(1, 1));
        assert_eq!(skew_principal_p(&p(&[2]), &p(&[1, 1]), &u, &t), rat(0, 1));
        assert_eq!(skew_principal_p(&lam, &p(&[]), &u, &t), principal_p(&lam, &u, Extent::Infinite, &t).unwrap());
        // P_{(1,1)/(1)} = e_1
        assert_eq!(skew_principal_p(&p(&[1, 1]), &p(&[1]), &u, &t), &u / (rat(1, 1) - &t));
    }

    #[test]
    fn skew_principal_splits_variables() {
        // P_λ(u, ut, …) = Σ_μ P_{λ/μ}(ut^M, ut^{M+1}, …) P_μ(u, …, ut^{M-1})
        let t = rat(1, 3);
        let u = rat(1, 2);
        let all = |k: usize| -> Vec<Partition> {
            let mut v = vec![];
            for a in 0..=k {
                for b in 0..=a {
                    for c in 0..=b {
                        v.push(p(&[a, b, c]));
                    }
                }
            }
            v
        };
        for lam in [p(&[2, 1]), p(&[3, 1, 1]), p(&[2, 2, 1])] {
            for m in 1..4usize {
                let mut total = rat(0, 1);
                for mu in all(3) {
                    if !lam.contains(&mu) || mu.len() > m {
                        continue;
                    }
                    let shift = rpow(&t, (m * (lam.size() - mu.size())) as i64);
                    total += shift
                        * skew_principal_p(&lam, &mu, &u, &t)
                        * principal_p(&mu, &u, Extent::Finite(m), &t).unwrap();
                }
                assert_eq!(total, principal_p(&lam, &u, Extent::Infinite, &t).unwrap(), "{lam} M={m}");
            }
        }
    }

    #[test]
    fn pieri_rows_sum_to_one() {
        let t = rat(1, 3);
        let mu = p(&[2, 1]);
        let mut total = rat(0, 1);
        for i in 0..=mu.len() {
            let mut v = mu.parts().to_vec();
            if i == v.len() {
                v.push(0);
            }
            v[i] += 1;
            if let Ok(nu) = Partition::new(v) {
                total += pieri_transition(&mu, &nu, 3, &t);
            }
        }
        assert_eq!(total, rat(1, 1));
        assert_eq!(pieri_transition(&p(&[]), &p(&[1]), 2, &rat(1, 2)), rat(1, 1));
    }

    #[test]
    fn pieri_explicit() {
        // μ=(1) → ν=(1,1), N=2, t=1/2: φ = 1-t², P_(1,1)(1,t) = t, P_(1)(1,t) = 1+t
        let t = rat(1, 2);
        let expect = (rat(1, 1) - &t * &t) / (rat(1, 1) - &t * &t) * &t / (rat(1, 1) + &t);
        assert_eq!(pieri_transition(&p(&[1]), &p(&[1, 1]), 2, &t), expect);
        assert_eq!(expect, rat(1, 3));
    }
}
