use rand::Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{check_t, rational_serde, to_f64, Extent, Rational, Signature};

/// State of the reflected Poisson walk `𝒮^{ν,n}` at time `time`.
///
/// For `n = ∞` the parts are the nonzero prefix; all later parts are `0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkState {
    pub parts: Signature,
    pub time: f64,
    #[serde(with = "rational_serde")]
    pub t: Rational,
}

/// Trajectory snapshot, one per event.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub time: f64,
    pub parts: Signature,
}

/// Raises the top of the block of parts equal to part `i` (0-based).
fn reflected_increment(parts: &mut Vec<i64>, i: usize) {
    if i >= parts.len() {
        parts.push(1);
        return;
    }
    let v = parts[i];
    let mut j = i;
    while j > 0 && parts[j - 1] == v {
        j -= 1;
    }
    parts[j] += 1;
}

/// Simulates `𝒮^{ν,n}` on `[0, tau_end]`: part `i` has a clock of rate
/// `t^i`, and a ring that would break monotonicity moves the highest part
/// of equal value instead.
pub fn simulate_s<R: Rng + ?Sized>(n: Extent, nu: &Signature, tau_end: f64, t: &Rational, rng: &mut R) -> Result<WalkState> {
    run(n, nu, tau_end, t, rng, None)
}

/// As [`simulate_s`], appending a snapshot after every event.
pub fn simulate_s_logged<R: Rng + ?Sized>(
    n: Extent,
    nu: &Signature,
    tau_end: f64,
    t: &Rational,
    rng: &mut R,
    log: &mut Vec<Snapshot>,
) -> Result<WalkState> {
    run(n, nu, tau_end, t, rng, Some(log))
}

fn run<R: Rng + ?Sized>(
    n: Extent,
    nu: &Signature,
    tau_end: f64,
    t: &Rational,
    rng: &mut R,
    mut log: Option<&mut Vec<Snapshot>>,
) -> Result<WalkState> {
    check_t(t)?;
    if !(tau_end >= 0.0 && tau_end.is_finite()) {
        return Err(Error::OutOfRange(format!("tau_end = {tau_end}")));
    }
    let tf = to_f64(t);
    let mut parts = nu.parts().to_vec();
    let tn = match n {
        Extent::Finite(n) => {
            if n == 0 || nu.len() != n {
                return Err(Error::LengthMismatch(nu.len(), n));
            }
            tf.powi(n as i32)
        }
        Extent::Infinite => {
            if parts.last().is_some_and(|&x| x < 0) {
                return Err(Error::NegativePart(parts));
            }
            while parts.last() == Some(&0) {
                parts.pop();
            }
            0.0
        }
    };
    let rate = tf * (1.0 - tn) / (1.0 - tf);
    let wait = Exp::new(rate).map_err(|e| Error::OutOfRange(e.to_string()))?;
    let ln_t = tf.ln();
    let mut time = 0.0;
    loop {
        time += wait.sample(rng);
        if time > tau_end {
            break;
        }
        // Pr(i) ∝ t^i on 1..=n by inversion
        let u: f64 = rng.gen();
        let mut i = ((-u * (1.0 - tn)).ln_1p() / ln_t).ceil().max(1.0) as usize;
        if let Extent::Finite(n) = n {
            i = i.min(n);
        }
        reflected_increment(&mut parts, i - 1);
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        if let Some(log) = log.as_deref_mut() {
            log.push(Snapshot { time, parts: Signature::new(parts.clone())? });
        }
    }
    Ok(WalkState { parts: Signature::new(parts)?, time: tau_end, t: t.clone() })
}
