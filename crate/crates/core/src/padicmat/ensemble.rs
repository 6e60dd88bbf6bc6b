use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use super::matrix::{sample_additive_haar, sample_haar_gl, sample_haar_gl_corner, MatModPK};
use super::ring::ModRing;
use super::snf::{snf, SingularNumbers};
use crate::error::{Error, Result};

/// Distribution of each factor in a matrix product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ensemble {
    /// iid additive Haar entries.
    HaarEntries,
    /// `N × N` corner of a Haar element of `GL_{N+D}`.
    GlCorner { d: usize },
}

impl Ensemble {
    pub fn sample<R: Rng + ?Sized>(&self, n: usize, p: u64, k: u32, rng: &mut R) -> Result<MatModPK> {
        match *self {
            Ensemble::HaarEntries => sample_additive_haar(n, p, k, rng),
            Ensemble::GlCorner { d } => sample_haar_gl_corner(n, d, p, k, rng),
        }
    }
}

/// Singular numbers of `A_s ⋯ A_1` with iid factors from `ensemble`.
pub fn product_chain<R: Rng + ?Sized>(
    n: usize,
    s: usize,
    ensemble: Ensemble,
    p: u64,
    k: u32,
    rng: &mut R,
) -> Result<SingularNumbers> {
    let ring = ModRing::new(p, k)?;
    let mut acc = MatModPK::identity(ring, n);
    for _ in 0..s {
        acc = ensemble.sample(n, p, k, rng)?.mul(&acc)?;
    }
    Ok(snf(&acc))
}

/// Singular numbers of `X^{(N)}(τ) = U_P D V_P ⋯ U_1 D V_1 U_0` with
/// `D = diag(p, 1, …, 1)`, Haar `U_i, V_i` and `P ~ Poisson(τ)`.
pub fn simulate_x_process<R: Rng + ?Sized>(n: usize, tau: f64, p: u64, k: u32, rng: &mut R) -> Result<SingularNumbers> {
    Ok(simulate_x_process_counted(n, tau, p, k, rng)?.0)
}

/// As [`simulate_x_process`], also returning the jump count `P`.
pub fn simulate_x_process_counted<R: Rng + ?Sized>(
    n: usize,
    tau: f64,
    p: u64,
    k: u32,
    rng: &mut R,
) -> Result<(SingularNumbers, u64)> {
    if !(tau >= 0.0 && tau.is_finite()) {
        return Err(Error::OutOfRange(format!("tau = {tau} must be finite and nonnegative")));
    }
    let ring = ModRing::new(p, k)?;
    let jumps = if tau == 0.0 {
        0
    } else {
        Poisson::new(tau).map_err(|e| Error::OutOfRange(e.to_string()))?.sample(rng) as u64
    };
    let mut acc = sample_haar_gl(n, ring, rng)?;
    for _ in 0..jumps {
        let mut dv = sample_haar_gl(n, ring, rng)?;
        dv.scale_row_by_p(0);
        acc = sample_haar_gl(n, ring, rng)?.mul(&dv)?.mul(&acc)?;
    }
    Ok((snf(&acc), jumps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn x_process_sum_equals_jumps() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let (sn, jumps) = simulate_x_process_counted(3, 5.0, 2, 16, &mut rng).unwrap();
            assert!(!sn.saturated);
            assert_eq!(sn.parts.size(), jumps as i64);
        }
        let sn = simulate_x_process(4, 0.0, 3, 4, &mut rng).unwrap();
        assert_eq!(sn.parts.parts(), &[0, 0, 0, 0]);
    }

    #[test]
    fn product_dominates_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let a = Ensemble::HaarEntries.sample(3, 2, 20, &mut rng).unwrap();
            let b = Ensemble::GlCorner { d: 1 }.sample(3, 2, 20, &mut rng).unwrap();
            let (sa, sb, sab) = (snf(&a), snf(&b), snf(&a.mul(&b).unwrap()));
            assert!(!sab.saturated);
            for i in 0..3 {
                assert!(sab.parts.parts()[i] >= sa.parts.parts()[i].max(sb.parts.parts()[i]));
            }
            assert_eq!(sab.parts.size(), sa.parts.size() + sb.parts.size());
        }
    }
}
