use num_traits::{One, Zero};
use rand::Rng;
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};

use super::insertion::insertion;
use crate::error::{Error, Result};
use crate::hallittlewood::{phi_hl, principal_p};
use crate::qcore::{rpow, Extent, Partition, Rational, Signature};

/// Parameters of the law `G_x` of `max(Geom(x) - Geom(t), 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GxParams {
    pub x: f64,
    pub t: f64,
}

impl GxParams {
    pub fn new(x: f64, t: f64) -> Result<Self> {
        if !(x > 0.0 && x < 1.0 && t > 0.0 && t < 1.0) {
            return Err(Error::OutOfRange(format!("need 0 < x, t < 1, got x = {x}, t = {t}")));
        }
        Ok(GxParams { x, t })
    }
}

/// `G_x(ℓ) = (1-x)/(1-tx) (1-t)^{1(ℓ>0)} x^ℓ`.
pub fn gx_pmf(x: &Rational, t: &Rational, l: u64) -> Rational {
    let one = Rational::one();
    let mut v = (&one - x) / (&one - t * x) * rpow(x, l as i64);
    if l > 0 {
        v *= &one - t;
    }
    v
}

/// `Pr(k) = (1-q) q^k` on `k ≥ 0`.
fn geom<R: Rng + ?Sized>(q: f64, rng: &mut R) -> u64 {
    if q <= 0.0 {
        return 0;
    }
    Geometric::new(1.0 - q).expect("0 < q < 1").sample(rng)
}

/// One draw of `G_x` as `max(Geom(x) - Geom(t), 0)`.
pub fn sample_gx<R: Rng + ?Sized>(params: GxParams, rng: &mut R) -> u64 {
    geom(params.x, rng).saturating_sub(geom(params.t, rng))
}

/// Nonzero entries `(i, X_i)` (1-based) of independent `X_i ~ G_{x t^{i-1}}`,
/// `1 ≤ i ≤ n`, scanning with the exact tail probabilities
/// `Pr(X_i = … = X_n = 0) = (1 - x t^{i-1}) / (1 - x t^n)`.
///
/// With `nonzero` the vector is conditioned to have a nonzero entry.
pub fn sample_impulses<R: Rng + ?Sized>(x: f64, n: Extent, t: f64, nonzero: bool, rng: &mut R) -> Vec<(usize, u64)> {
    let tn = match n {
        Extent::Finite(n) => t.powi(n as i32),
        Extent::Infinite => 0.0,
    };
    let mut out = vec![];
    let mut cond = nonzero;
    let mut xi = x; // x t^{i-1}
    let mut i = 1usize;
    loop {
        if let Extent::Finite(n) = n {
            if i > n {
                break;
            }
        }
        if !cond {
            let all_zero = (1.0 - xi) / (1.0 - x * tn);
            if rng.gen::<f64>() < all_zero {
                break;
            }
            cond = true;
        }
        // Pr(X_i > 0 | some X_j > 0, j ≥ i)
        let tail = match n {
            Extent::Finite(n) => 1.0 - t.powi((n - i + 1) as i32),
            Extent::Infinite => 1.0,
        };
        let q = (1.0 - t) * (1.0 - x * tn) / ((1.0 - xi * t) * tail);
        if rng.gen::<f64>() < q {
            out.push((i, 1 + geom(xi, rng)));
            cond = false;
        }
        xi *= t;
        i += 1;
    }
    out
}

fn check_step_input(lambda: &Signature, n: Extent) -> Result<()> {
    match n {
        Extent::Finite(n) if lambda.len() != n => Err(Error::LengthMismatch(lambda.len(), n)),
        Extent::Infinite if lambda.parts().last().is_some_and(|&x| x < 0) => {
            Err(Error::NegativePart(lambda.parts().to_vec()))
        }
        _ => Ok(()),
    }
}

fn apply_impulses(lambda: &Signature, imp: &[(usize, u64)]) -> Result<Signature> {
    let Some(&(last, _)) = imp.last() else {
        return Ok(lambda.clone());
    };
    let mut a = vec![0u64; last];
    for &(i, v) in imp {
        a[i - 1] = v;
    }
    insertion(&a, lambda)
}

/// One Hall-Littlewood Cauchy step `ν = ι(X_1, …, X_n; λ)` with
/// `X_i ~ G_{x t^{i-1}}`. For `n = ∞`, `λ` is a partition with implicit
/// trailing zeros and the result has trailing zeros trimmed.
pub fn hl_cauchy_step<R: Rng + ?Sized>(lambda: &Signature, x: f64, n: Extent, t: f64, rng: &mut R) -> Result<Signature> {
    GxParams::new(x, t)?;
    check_step_input(lambda, n)?;
    let imp = sample_impulses(x, n, t, false, rng);
    finish_step(lambda, &imp, n)
}

fn finish_step(lambda: &Signature, imp: &[(usize, u64)], n: Extent) -> Result<Signature> {
    let nu = apply_impulses(lambda, imp)?;
    Ok(match n {
        Extent::Finite(_) => nu,
        Extent::Infinite => {
            let mut v = nu.into_parts();
            while v.last() == Some(&0) {
                v.pop();
            }
            Signature::new(v)?
        }
    })
}

/// Alpha parameters of one multi-variable Cauchy step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaList {
    List(Vec<f64>),
    /// `t, t², t³, …`, the additive Haar step.
    PowersOfT,
}

impl AlphaList {
    /// `t, …, t^d`, the step of a corner of a Haar element of `GL_{N+d}`.
    pub fn corner(t: f64, d: usize) -> Self {
        AlphaList::List((1..=d).map(|j| t.powi(j as i32)).collect())
    }
}

/// `Pr(substeps j, j+1, … of t^j, t^{j+1}, … are all trivial)`.
fn trivial_tail(j: usize, n: Extent, t: f64) -> f64 {
    let mut log = 0.0;
    let mut tj = t.powi(j as i32);
    let mut i = 0usize;
    while tj > 1e-18 {
        if let Extent::Finite(n) = n {
            if i == n {
                break;
            }
        }
        log += (-tj).ln_1p();
        tj *= t;
        i += 1;
    }
    log.exp()
}

/// Sequential Cauchy steps over `alphas`. For [`AlphaList::PowersOfT`] the
/// trivial substeps are skipped with exact tail probabilities, so no
/// truncation is involved.
pub fn hl_cauchy_multi<R: Rng + ?Sized>(
    lambda: &Signature,
    alphas: &AlphaList,
    n: Extent,
    t: f64,
    rng: &mut R,
) -> Result<Signature> {
    check_step_input(lambda, n)?;
    let mut cur = lambda.clone();
    match alphas {
        AlphaList::List(xs) => {
            for &x in xs {
                GxParams::new(x, t)?;
                cur = finish_step(&cur, &sample_impulses(x, n, t, false, rng), n)?;
            }
        }
        AlphaList::PowersOfT => {
            GxParams::new(t, t)?;
            let tn = match n {
                Extent::Finite(n) => t.powi(n as i32),
                Extent::Infinite => 0.0,
            };
            let mut cond = false;
            let mut j = 1usize;
            loop {
                let tail = trivial_tail(j, n, t);
                if !cond {
                    if rng.gen::<f64>() < tail {
                        break;
                    }
                    cond = true;
                }
                let x = t.powi(j as i32);
                let nontrivial = x * (1.0 - tn) / (1.0 - x * tn);
                if rng.gen::<f64>() < nontrivial / (1.0 - tail) {
                    cur = finish_step(&cur, &sample_impulses(x, n, t, true, rng), n)?;
                    cond = false;
                }
                j += 1;
            }
        }
    }
    Ok(cur)
}

fn padded_pair(lambda: &Signature, nu: &Signature, n: Extent) -> Option<(Vec<i64>, Vec<i64>)> {
    match n {
        Extent::Finite(n) => (lambda.len() == n && nu.len() == n).then(|| (lambda.parts().to_vec(), nu.parts().to_vec())),
        Extent::Infinite => {
            let len = lambda.len().max(nu.len());
            let (mut a, mut b) = (lambda.parts().to_vec(), nu.parts().to_vec());
            if a.last().is_some_and(|&x| x < 0) || b.last().is_some_and(|&x| x < 0) {
                return None;
            }
            a.resize(len, 0);
            b.resize(len, 0);
            Some((a, b))
        }
    }
}

/// `Pr(ι(X; λ) = ν) = (1-x)/(1-t^n x) ∏_{j: m_j(λ) = m_j(ν)+1} (1 - t^{m_j(λ)}) ∏_i (x t^{i-1})^{ν_i - λ_i}`,
/// zero unless `λ ≺ ν`; `t^n x = 0` and `j ≠ 0` for `n = ∞`.
pub fn exact_cauchy_pmf(lambda: &Signature, nu: &Signature, x: &Rational, n: Extent, t: &Rational) -> Rational {
    let Some((lam, nv)) = padded_pair(lambda, nu, n) else {
        return Rational::zero();
    };
    let len = lam.len();
    let interlaced = (0..len).all(|i| nv[i] >= lam[i] && (i == 0 || nv[i] <= lam[i - 1]));
    if !interlaced {
        return Rational::zero();
    }
    let one = Rational::one();
    let mut v = match n {
        Extent::Finite(n) => (&one - x) / (&one - rpow(t, n as i64) * x),
        Extent::Infinite => &one - x,
    };
    let mut values: Vec<i64> = lam.clone();
    values.dedup();
    for j in values {
        if n == Extent::Infinite && j == 0 {
            continue;
        }
        let ml = lam.iter().filter(|&&y| y == j).count();
        let mn = nv.iter().filter(|&&y| y == j).count();
        if ml == mn + 1 {
            v *= &one - rpow(t, ml as i64);
        }
    }
    let mut xi = x.clone();
    for i in 0..len {
        v *= rpow(&xi, nv[i] - lam[i]);
        xi *= t;
    }
    v
}

/// `Q_{ν/λ}(x) P_ν(1, …, t^{n-1}) / (P_λ(1, …, t^{n-1}) Π(x; 1, …, t^{n-1}))`.
pub fn cauchy_pmf_hl(lambda: &Partition, nu: &Partition, x: &Rational, n: Extent, t: &Rational) -> Result<Rational> {
    if !lambda.interlaces(nu) {
        return Ok(Rational::zero());
    }
    let one = Rational::one();
    let q = phi_hl(nu, lambda, t) * rpow(x, (nu.size() - lambda.size()) as i64);
    let pn = principal_p(nu, &one, n, t)?;
    let pl = principal_p(lambda, &one, n, t)?;
    let pi = match n {
        Extent::Finite(n) => (&one - rpow(t, n as i64) * x) / (&one - x),
        Extent::Infinite => &one / (&one - x),
    };
    Ok(q * pn / (pl * pi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sig(v: &[i64]) -> Signature {
        Signature::new(v.to_vec()).unwrap()
    }

    #[test]
    fn gx_normalizes() {
        let (x, t) = (rat(1, 4), rat(1, 2));
        let head: Rational = (0..40).map(|l| gx_pmf(&x, &t, l)).sum();
        let tail = gx_pmf(&x, &t, 40) / (rat(1, 1) - &x);
        assert_eq!(head + tail, rat(1, 1));
        assert_eq!(gx_pmf(&x, &t, 0), rat(6, 7));
    }

    #[test]
    fn empty_step() {
        let (x, t) = (rat(1, 3), rat(1, 2));
        let lam = sig(&[2, 1, 0]);
        let v = exact_cauchy_pmf(&lam, &lam, &x, Extent::Finite(3), &t);
        assert_eq!(v, (rat(1, 1) - &x) / (rat(1, 1) - &x / rat(8, 1)));
    }

    #[test]
    fn matches_hl_expression() {
        let (x, t) = (rat(1, 3), rat(1, 2));
        let lam = Partition::new(vec![1]).unwrap();
        let nu = Partition::new(vec![2, 1]).unwrap();
        let a = exact_cauchy_pmf(&sig(&[1, 0]), &sig(&[2, 1]), &x, Extent::Finite(2), &t);
        let b = cauchy_pmf_hl(&lam, &nu, &x, Extent::Finite(2), &t).unwrap();
        assert_eq!(a, b);
        let a = exact_cauchy_pmf(&sig(&[1]), &sig(&[2, 1]), &x, Extent::Infinite, &t);
        let b = cauchy_pmf_hl(&lam, &nu, &x, Extent::Infinite, &t).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn impulse_marginals() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (x, t) = (0.6, 0.5);
        let draws = 200_000;
        let mut zero = [0usize; 3];
        for _ in 0..draws {
            let imp = sample_impulses(x, Extent::Finite(3), t, false, &mut rng);
            for i in 1..=3 {
                if !imp.iter().any(|&(j, _)| j == i) {
                    zero[i - 1] += 1;
                }
            }
        }
        for i in 0..3 {
            let xi = x * t.powi(i as i32);
            let p = (1.0 - xi) / (1.0 - t * xi);
            let emp = zero[i] as f64 / draws as f64;
            assert!((emp - p).abs() < 4.0 * (p * (1.0 - p) / draws as f64).sqrt(), "{i}: {emp} vs {p}");
        }
    }
}
