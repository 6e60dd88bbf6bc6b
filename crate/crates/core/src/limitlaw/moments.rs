use super::closed::pmf_k1;
use crate::error::{Error, Result};

const WINDOW_CAP: i64 = 400;

/// `t^{-C(m+1,2)} (t;t)_m / m!`.
pub fn moment_k1_exact(t: f64, m: usize) -> f64 {
    let mut v = t.powi(-((m * (m + 1) / 2) as i32));
    for i in 1..=m {
        v *= (1.0 - t.powi(i as i32)) / i as f64;
    }
    v
}

/// `E[(χ^{-1} t^{-𝓛})^m]` for `𝓛 = 𝓛_{1,t,χ}`, summed over a window grown
/// in both directions until three consecutive terms are negligible.
pub fn moment_k1(t: f64, chi: f64, m: usize) -> Result<f64> {
    let weight = |x: i64| (m as f64 * (-chi.ln() - x as f64 * t.ln())).exp();
    let term = |x: i64| weight(x) * pmf_k1(t, chi, x);
    let centre = (chi.ln() / -t.ln()).round() as i64;
    let mut total = term(centre);
    for dir in [1i64, -1] {
        let mut small = 0;
        let mut x = centre;
        loop {
            x += dir;
            if (x - centre).abs() > WINDOW_CAP {
                return Err(Error::WindowExhausted(x));
            }
            let v = term(x);
            total += v;
            small = if v.abs() < 1e-18 * total.abs() { small + 1 } else { 0 };
            if small >= 3 {
                break;
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_values() {
        assert_eq!(moment_k1_exact(0.5, 0), 1.0);
        assert!((moment_k1_exact(0.5, 1) - 1.0).abs() < 1e-15);
        assert!((moment_k1_exact(0.5, 3) - 3.5).abs() < 1e-13);
    }

    #[test]
    fn window_sums_match() {
        for m in 0..=5 {
            for &chi in &[1.0, 1.5] {
                let got = moment_k1(0.5, chi, m).unwrap();
                let want = moment_k1_exact(0.5, m);
                assert!(((got - want) / want).abs() < 1e-8, "m={m} chi={chi}: {got} vs {want}");
            }
        }
    }
}
