use super::series::{Method, PmfRecord};
use crate::qcore::{qbinom_f64, qpoch_inf, Signature};

const TOL: f64 = 1e-17;
const MAX_TERMS: usize = 400;

fn tfact_f64(t: f64, n: usize) -> f64 {
    (1..=n).map(|i| 1.0 - t.powi(i as i32)).product()
}

/// `e^{-z} - Σ_{j<J} (-z)^j / j!`, evaluated without cancellation.
fn exp_remainder(z: f64, order: usize) -> f64 {
    if order == 0 {
        return (-z).exp();
    }
    if z <= 2.0 * order as f64 + 2.0 {
        let mut term = 1.0;
        for j in 1..=order {
            term *= -z / j as f64;
        }
        let mut sum = term;
        let mut j = order;
        loop {
            j += 1;
            term *= -z / j as f64;
            sum += term;
            if term.abs() <= 1e-18 * sum.abs() && j as f64 > z {
                return sum;
            }
        }
    }
    let mut poly = 0.0;
    let mut term = 1.0;
    for j in 0..order {
        if j > 0 {
            term *= -z / j as f64;
        }
        poly += term;
    }
    (-z).exp() - poly
}

/// `Pr(𝓛_{1,t,χ} = x)` with the number of terms used and a tail estimate.
///
/// For `x > 0` the degree `< x` part of each exponential's Taylor series is
/// removed first: those parts sum to zero over `m` by the q-binomial
/// theorem, and dropping them avoids cancellation in the upper tail.
pub fn pmf_k1_detailed(t: f64, chi: f64, x: i64) -> PmfRecord {
    let order = x.max(0) as usize;
    let min_terms = 5 + 2 * order;
    let mut partial = 0.0;
    let mut coef = 1.0; // (-1)^m t^{C(m,2)} / (t;t)_m
    let mut small_run = 0;
    let mut tail = [0.0f64; 3];
    let mut used = MAX_TERMS;
    for m in 0..MAX_TERMS {
        if m > 0 {
            coef *= -t.powi(m as i32 - 1) / (1.0 - t.powi(m as i32));
        }
        let z = chi * t.powi((x - m as i64) as i32);
        let term = coef * exp_remainder(z, order);
        partial += term;
        tail[m % 3] = term.abs();
        small_run = if term.abs() < TOL * partial.abs().max(1e-300) { small_run + 1 } else { 0 };
        if small_run >= 3 && m + 1 >= min_terms {
            used = m + 1;
            break;
        }
        if coef == 0.0 {
            used = m + 1;
            break;
        }
    }
    let norm = qpoch_inf(t, t);
    PmfRecord {
        l: Signature::new(vec![x]).expect("length one"),
        pmf: partial / norm,
        method: Method::ClosedK1,
        terms_used: used,
        est_error: tail.iter().sum::<f64>() / norm,
    }
}

/// `Pr(𝓛_{1,t,χ} = x) = (1/(t;t)_∞) Σ_m e^{-χ t^{x-m}} (-1)^m t^{C(m,2)} / (t;t)_m`.
pub fn pmf_k1(t: f64, chi: f64, x: i64) -> f64 {
    pmf_k1_detailed(t, chi, x).pmf
}

/// `Pr(𝓛_{2,t,χ} = (L + x, L))` by the two-row closed form.
pub fn pmf_k2_detailed(t: f64, chi: f64, l: i64, x: usize) -> PmfRecord {
    let fact = |n: usize| -> f64 { (1..=n).map(|i| i as f64).product() };
    let mut partial = 0.0;
    let mut small_run = 0;
    let mut tail = [0.0f64; 3];
    let mut used = MAX_TERMS;
    let xi = x as i64;
    for m in 0..MAX_TERMS {
        let y = t.powi((l - m as i64) as i32) * chi;
        let mut inner = 0.0;
        // e^{-y} y^p / p!, in log space once y^p could overflow.
        let poisson = |p: usize| -> f64 {
            if p == 0 {
                (-y).exp()
            } else if y < 1e3 {
                (-y).exp() * y.powi(p as i32) / fact(p)
            } else {
                (p as f64 * y.ln() - y - (1..=p).map(|j| (j as f64).ln()).sum::<f64>()).exp()
            }
        };
        for i in 0..=x {
            let p = i + m;
            let mut v = poisson(p);
            if p >= 1 {
                v += poisson(p - 1);
            }
            let sign = if (x - i) % 2 == 0 { 1.0 } else { -1.0 };
            inner += sign / tfact_f64(t, x - i) * qbinom_f64(m + i, i as i64, t) * v;
        }
        let mi = m as i64;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let e = mi * mi + (xi - 1) * mi + xi * (xi - 1) / 2;
        let term = sign * t.powi(e as i32) * inner;
        partial += term;
        tail[m % 3] = term.abs();
        small_run = if term.abs() < TOL * partial.abs().max(1e-300) { small_run + 1 } else { 0 };
        if small_run >= 3 && m >= 5 {
            used = m + 1;
            break;
        }
    }
    let norm = qpoch_inf(t, t);
    PmfRecord {
        l: Signature::new(vec![l + xi, l]).expect("decreasing"),
        pmf: partial / norm,
        method: Method::ClosedK2,
        terms_used: used,
        est_error: tail.iter().sum::<f64>() / norm,
    }
}

/// `Pr(𝓛_{2,t,χ} = (L + x, L))`.
pub fn pmf_k2(t: f64, chi: f64, l: i64, x: usize) -> f64 {
    pmf_k2_detailed(t, chi, l, x).pmf
}
