use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hallittlewood::q_gamma_alpha_coeffs;
use crate::qcore::{
    binom2, qbinom, qpoch_inf, rational_from_f64, rpow, tfact, to_f64, Partition, Rational, Signature,
};

const MAX_TERMS: usize = 400;

/// Parameters `(k, t, χ)` of the limit law plus series truncation controls.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LimitLawParams {
    pub k: usize,
    #[serde(with = "crate::qcore::rational_serde")]
    pub t: Rational,
    pub chi: f64,
    pub series_tol: f64,
    pub series_min_terms: usize,
}

impl LimitLawParams {
    pub fn new(k: usize, t: Rational, chi: f64) -> Result<Self> {
        let p = LimitLawParams { k, t, chi, series_tol: 1e-17, series_min_terms: 5 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        crate::qcore::check_t(&self.t)?;
        if self.k == 0 {
            return Err(Error::OutOfRange("k must be positive".into()));
        }
        if !(self.chi > 0.0 && self.chi.is_finite()) {
            return Err(Error::OutOfRange(format!("chi = {} must be positive", self.chi)));
        }
        if !(self.series_tol > 0.0) {
            return Err(Error::OutOfRange("series_tol must be positive".into()));
        }
        Ok(())
    }

    pub fn t_f64(&self) -> f64 {
        to_f64(&self.t)
    }
}

/// How a probability was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Series,
    Contour,
    ClosedK1,
    ClosedK2,
}

/// One evaluated probability.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PmfRecord {
    #[serde(rename = "L")]
    pub l: Signature,
    pub pmf: f64,
    pub method: Method,
    pub terms_used: usize,
    pub est_error: f64,
}

/// Term `m` of the residue series: `e^{-χ t^{L_k - m}} · Σ_j coeffs[j] χ^j`.
#[derive(Clone, Debug)]
pub struct SeriesTerm {
    pub m: usize,
    /// `d = L_k - m`, the exponent in `e^{-χ t^d}`.
    pub d: i64,
    /// Exact coefficients in `χ`.
    pub coeffs: Vec<Rational>,
}

fn check_decreasing(l: &Signature) -> Result<()> {
    // Signature construction enforces this; kept for deserialized inputs.
    if l.parts().windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotDecreasing(l.parts().to_vec()));
    }
    Ok(())
}

/// All `μ ∈ Sig_{k-1}` with `μ ≺ L`.
fn interlacing_sigs(l: &[i64]) -> Vec<Vec<i64>> {
    let k = l.len();
    let mut out = vec![Vec::with_capacity(k.saturating_sub(1))];
    for i in 0..k.saturating_sub(1) {
        let mut next = Vec::new();
        for prefix in &out {
            for v in l[i + 1]..=l[i] {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Exact χ-polynomial of term `m` (without the exponential and `1/(t;t)_∞`).
pub fn series_coefficients(t: &Rational, l: &Signature, m: usize) -> SeriesTerm {
    let parts = l.parts();
    let k = parts.len();
    let lk = parts[k - 1];
    let d = lk - m as i64;
    let mut pref = rpow(t, parts.iter().map(|&li| binom2(li - d)).sum());
    pref /= tfact(t, m);
    for i in 0..k - 1 {
        pref /= tfact(t, (parts[i] - parts[i + 1]) as usize);
    }
    let size: i64 = parts.iter().sum();
    let td = rpow(t, d);
    let mut coeffs: Vec<Rational> = vec![Rational::zero()];
    for mu in interlacing_sigs(parts) {
        let sign_exp = size - mu.iter().sum::<i64>() - d;
        let mut c = if sign_exp.rem_euclid(2) == 0 { Rational::one() } else { -Rational::one() };
        for i in 0..k - 1 {
            c *= qbinom((parts[i] - parts[i + 1]) as usize, parts[i] - mu[i], t);
        }
        let shifted = Partition::new(mu.iter().map(|&x| (x - d) as usize).collect()).expect("interlacing");
        let q = q_gamma_alpha_coeffs(&shifted.conjugate(), &Rational::one(), t);
        if coeffs.len() < q.len() {
            coeffs.resize(q.len(), Rational::zero());
        }
        let mut tdj = Rational::one();
        for (j, qj) in q.iter().enumerate() {
            if !qj.is_zero() {
                coeffs[j] += &c * qj * &tdj;
            }
            tdj *= &td;
        }
    }
    for c in coeffs.iter_mut() {
        *c *= &pref;
    }
    SeriesTerm { m, d, coeffs }
}

/// `log2 |x|` for a nonzero rational, accurate to double precision.
fn log2_abs(x: &Rational) -> f64 {
    fn log2_big(n: &BigInt) -> f64 {
        let bits = n.bits();
        if bits <= 1000 {
            return n.abs().to_f64().unwrap().log2();
        }
        let shift = bits - 64;
        let top = (n.abs() >> shift).to_f64().unwrap();
        top.log2() + shift as f64
    }
    log2_big(x.numer()) - log2_big(x.denom())
}

/// `value · e^{-x}` without intermediate overflow.
pub(crate) fn times_exp_neg(value: &Rational, x: f64) -> f64 {
    if value.is_zero() {
        return 0.0;
    }
    let v = to_f64(value);
    if v.is_finite() && v != 0.0 && x < 700.0 {
        return v * (-x).exp();
    }
    let sign = if value.is_negative() { -1.0 } else { 1.0 };
    sign * (log2_abs(value) * std::f64::consts::LN_2 - x).exp()
}

/// `Pr(𝓛_{k,t,χ} = L)` by the residue series, coefficients exact in `χ`.
pub fn pmf_series(params: &LimitLawParams, l: &Signature) -> Result<PmfRecord> {
    params.validate()?;
    check_decreasing(l)?;
    if l.len() != params.k {
        return Err(Error::LengthMismatch(params.k, l.len()));
    }
    let t = &params.t;
    let tf = params.t_f64();
    let chi_exact = rational_from_f64(params.chi)?;
    let mut partial = 0.0f64;
    let mut small_run = 0usize;
    let mut tail = [0.0f64; 3];
    for m in 0..MAX_TERMS {
        let term = series_coefficients(t, l, m);
        let mut poly = Rational::zero();
        for c in term.coeffs.iter().rev() {
            poly = poly * &chi_exact + c;
        }
        let x = params.chi * tf.powi(term.d as i32);
        let value = times_exp_neg(&poly, x);
        partial += value;
        tail[m % 3] = value.abs();
        if value.abs() < params.series_tol * partial.abs().max(1e-300) {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= 3 && m + 1 >= params.series_min_terms {
            let norm = qpoch_inf(tf, tf);
            return Ok(PmfRecord {
                l: l.clone(),
                pmf: partial / norm,
                method: Method::Series,
                terms_used: m + 1,
                est_error: tail.iter().sum::<f64>() / norm,
            });
        }
    }
    Err(Error::SeriesNonConvergence { terms: MAX_TERMS })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::rat;

    fn sig(v: &[i64]) -> Signature {
        Signature::new(v.to_vec()).unwrap()
    }

    #[test]
    fn k1_terms_match_closed_form() {
        let t = rat(1, 3);
        for m in 0..6usize {
            let term = series_coefficients(&t, &sig(&[2]), m);
            let sign = if m % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            let expect = sign * rpow(&t, binom2(m as i64)) / tfact(&t, m);
            assert_eq!(term.coeffs, vec![expect]);
            assert_eq!(term.d, 2 - m as i64);
        }
    }

    #[test]
    fn k1_normalizes() {
        let p = LimitLawParams::new(1, rat(1, 2), 1.0).unwrap();
        let total: f64 = (-15..=15).map(|x| pmf_series(&p, &sig(&[x])).unwrap().pmf).sum();
        assert!((total - 1.0).abs() < 1e-10, "{total}");
    }

    #[test]
    fn rejects_bad_input() {
        let p = LimitLawParams::new(2, rat(1, 2), 1.0).unwrap();
        assert!(pmf_series(&p, &sig(&[1])).is_err());
        assert!(LimitLawParams::new(1, rat(3, 2), 1.0).is_err());
        assert!(LimitLawParams::new(1, rat(1, 2), -1.0).is_err());
    }

    #[test]
    fn overflow_safe_product() {
        let big = rpow(&rat(2, 1), 2000);
        let v = times_exp_neg(&big, 2000.0 * std::f64::consts::LN_2 - 3.0);
        assert!((v - 3f64.exp()).abs() < 1e-9);
    }
}
