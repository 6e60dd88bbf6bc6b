use std::collections::BTreeSet;

use rand_chacha::ChaCha8Rng;

use super::config::{default_tolerance, Centering, Experiment, ExperimentConfig};
use super::montecarlo::{one_sample_stderr, tally, two_sample_stderr, Tally};
use super::report::{write_outputs, Certification, ComparisonReport};
use crate::dynamics::{hl_cauchy_multi, simulate_s, AlphaList};
use crate::error::{Error, Result};
use crate::limitlaw::{pmf_k1, pmf_k2, pmf_series, LimitLawParams};
use crate::padicmat::{product_chain, simulate_x_process, Ensemble, ModRing, SingularNumbers};
use crate::qcore::{dinf, to_f64, DiscreteLaw, Extent, Rational, Signature};

const FAMILY_MATRIX: u64 = 1;
const FAMILY_SURROGATE_CERT: u64 = 2;
const FAMILY_SURROGATE: u64 = 3;
const FAMILY_WALK: u64 = 4;

/// Smallest `s` accepted by the matrix-product experiments.
pub const MIN_PRODUCT_LENGTH: usize = 16;
/// Smallest `log_{1/t} τ` accepted by the walk experiment.
pub const MIN_LOG_TAU: f64 = 4.0;

/// Integer centering of `log_{1/t}(scale)` and the matching `χ = t^{1-x}/(1-t)`,
/// `x = log_{1/t}(scale) - shift`.
pub fn centering(scale: f64, t: f64, zeta: f64, rule: Centering) -> (i64, f64) {
    let l = scale.ln() / (1.0 / t).ln();
    let snap = |y: f64| if (y - y.round()).abs() < 1e-9 { y.round() } else { y };
    let shift = match rule {
        Centering::Floor => snap(l).floor(),
        Centering::Nearest => snap(l + zeta).round(),
    };
    let x = snap(l - shift);
    (shift as i64, t.powf(1.0 - x) / (1.0 - t))
}

/// Largest `K` with `p^K < 2^127`.
pub fn max_precision(p: u64) -> u32 {
    let mut k = 1;
    while ModRing::new(p, k + 1).is_ok() {
        k += 1;
    }
    k
}

/// Mean plus six standard deviations of the total valuation `Σ SN`, plus 6,
/// treating each factor's determinant valuation as a sum of geometric variables.
fn default_chain_precision(p: u64, s: usize) -> u32 {
    let (mut mean, mut var) = (0.0, 0.0);
    for i in 1..64 {
        let q = (p as f64).powi(i);
        mean += 1.0 / (q - 1.0);
        var += q / ((q - 1.0) * (q - 1.0));
    }
    let s = s as f64;
    ((s * mean + 6.0 * (s * var).sqrt()).ceil() as u32 + 6).min(max_precision(p))
}

fn default_poisson_precision(p: u64, tau: f64) -> u32 {
    ((tau + 6.0 * tau.sqrt()).ceil() as u32 + 6).min(max_precision(p))
}

/// `(λ'_1 - shift, …, λ'_k - shift)`.
pub fn conjugate_coords(parts: &Signature, k: usize, shift: i64) -> Result<Signature> {
    let lam = parts.to_partition().ok_or_else(|| Error::NegativePart(parts.parts().to_vec()))?;
    let conj = lam.conjugate();
    Signature::new((1..=k).map(|i| conj.part(i) as i64 - shift).collect())
}

fn top(parts: &Signature) -> i64 {
    parts.parts().first().copied().unwrap_or(0)
}

fn unsaturated(sn: SingularNumbers, k: u32) -> Result<Signature> {
    sn.ensure_unsaturated(k)?;
    Ok(sn.parts)
}

/// `𝓛_{k,t,χ}` on a window covering the bulk of its mass and every
/// signature in `hint` together with its unit neighbours.
pub fn limit_law_window(k: usize, t: &Rational, chi: f64, hint: &DiscreteLaw) -> Result<DiscreteLaw> {
    let tf = to_f64(t);
    let mut law = DiscreteLaw::new(k);
    let mut points: BTreeSet<Signature> = BTreeSet::new();
    match k {
        1 => (-30..=40).for_each(|l| {
            points.insert(Signature::new(vec![l]).expect("one part"));
        }),
        2 => {
            for l2 in -10..=15 {
                for a in 0..=12 {
                    points.insert(Signature::new(vec![l2 + a, l2]).expect("decreasing"));
                }
            }
        }
        _ => {}
    }
    for sig in hint.support.keys() {
        for i in 0..k {
            for d in [-1, 0, 1] {
                let mut v = sig.parts().to_vec();
                v[i] += d;
                if let Ok(s) = Signature::new(v) {
                    points.insert(s);
                }
            }
        }
    }
    let params = LimitLawParams::new(k, t.clone(), chi)?;
    for sig in points {
        let p = match k {
            1 => pmf_k1(tf, chi, sig.parts()[0]),
            2 => pmf_k2(tf, chi, sig.parts()[1], (sig.parts()[0] - sig.parts()[1]) as usize),
            _ => pmf_series(&params, &sig)?.pmf,
        };
        law.add(sig, p)?;
    }
    Ok(law)
}

fn support_union(a: &DiscreteLaw, b: &DiscreteLaw) -> usize {
    a.support.keys().chain(b.support.keys()).collect::<BTreeSet<_>>().len()
}

struct ProductSetup {
    ensemble: Ensemble,
    alphas: AlphaList,
    scale: f64,
}

fn run_product(cfg: &ExperimentConfig, setup: ProductSetup) -> Result<ComparisonReport> {
    cfg.validate()?;
    let p = cfg.require_p()?;
    let s = cfg.s.expect("validated");
    if s < MIN_PRODUCT_LENGTH {
        return Err(Error::Config(format!("s = {s} is below the supported regime s >= {MIN_PRODUCT_LENGTH}")));
    }
    let t = cfg.t()?;
    let tf = to_f64(&t);
    let (n, k) = (cfg.n, cfg.k);
    let precision = cfg.precision.unwrap_or_else(|| default_chain_precision(p, s));
    let (shift, chi) = centering(setup.scale, tf, cfg.zeta, cfg.centering);
    let matrix = |rng: &mut ChaCha8Rng| -> Result<(Signature, i64)> {
        let parts = unsaturated(product_chain(n, s, setup.ensemble, p, precision, rng)?, precision)?;
        Ok((conjugate_coords(&parts, k, shift)?, top(&parts)))
    };
    let zero = Signature::new(vec![0; n])?;
    let surrogate = |rng: &mut ChaCha8Rng| -> Result<(Signature, i64)> {
        let mut cur = zero.clone();
        for _ in 0..s {
            cur = hl_cauchy_multi(&cur, &setup.alphas, Extent::Finite(n), tf, rng)?;
        }
        Ok((conjugate_coords(&cur, k, shift)?, top(&cur)))
    };
    let (main, certification, max_top): (Tally, Option<Certification>, i64) = if cfg.surrogate {
        let a = tally(cfg.certify_samples, cfg.seed, FAMILY_MATRIX, matrix)?;
        let b = tally(cfg.certify_samples, cfg.seed, FAMILY_SURROGATE_CERT, surrogate)?;
        let d = dinf(&a.law(k)?, &b.law(k)?)?;
        let bound = 3.0 * two_sample_stderr(&a, &b);
        if !(d < bound) {
            return Err(Error::CertificationFailed { dinf: d, bound });
        }
        let main = tally(cfg.samples, cfg.seed, FAMILY_SURROGATE, surrogate)?;
        let cert = Certification { samples: a.samples, dinf: d, bound };
        (main, Some(cert), a.max_aux)
    } else {
        let main = tally(cfg.samples, cfg.seed, FAMILY_MATRIX, matrix)?;
        let m = main.max_aux;
        (main, None, m)
    };
    let empirical = main.law(k)?;
    let theoretical = limit_law_window(k, &t, chi, &empirical)?;
    finish(cfg, empirical, theoretical, main.samples, Some(shift), Some(chi), Some(max_top), Some(precision), certification)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    cfg: &ExperimentConfig,
    empirical: DiscreteLaw,
    theoretical: DiscreteLaw,
    samples: u64,
    shift: Option<i64>,
    chi: Option<f64>,
    max_top_part: Option<i64>,
    precision: Option<u32>,
    certification: Option<Certification>,
) -> Result<ComparisonReport> {
    let d = dinf(&empirical, &theoretical)?;
    let effective = if cfg.experiment == Experiment::AppB { samples as f64 / 2.0 } else { samples as f64 };
    let tolerance = cfg.tolerance.unwrap_or_else(|| default_tolerance(support_union(&empirical, &theoretical), effective));
    let report = ComparisonReport {
        experiment: cfg.experiment.id().to_string(),
        config: cfg.clone(),
        stderr: one_sample_stderr(&empirical, samples),
        empirical,
        theoretical,
        dinf: d,
        samples,
        tolerance,
        pass: d < tolerance,
        shift,
        centering: shift.map(|_| cfg.centering),
        chi,
        max_top_part,
        precision,
        certification,
    };
    if let Some(path) = &cfg.output {
        write_outputs(&report, path)?;
    }
    Ok(report)
}

/// Conjugate singular numbers of products of `s` additive Haar matrices,
/// centred by `log_p s`, against `𝓛_{k, 1/p, χ}`.
pub fn run_theorem_1_4(cfg: &ExperimentConfig) -> Result<ComparisonReport> {
    let s = cfg.s.ok_or_else(|| Error::Config("thm1.4 requires s".into()))?;
    run_product(cfg, ProductSetup { ensemble: Ensemble::HaarEntries, alphas: AlphaList::PowersOfT, scale: s as f64 })
}

/// As [`run_theorem_1_4`] for `N × N` corners of Haar `GL_{N+D}` matrices,
/// centred by `log_p((1 - p^{-D}) s)`.
pub fn run_theorem_1_5(cfg: &ExperimentConfig) -> Result<ComparisonReport> {
    cfg.validate()?;
    let (p, s, d) = (cfg.require_p()?, cfg.s.expect("validated"), cfg.d.expect("validated"));
    let tf = to_f64(&cfg.t()?);
    let scale = (1.0 - (p as f64).powi(-(d as i32))) * s as f64;
    run_product(cfg, ProductSetup { ensemble: Ensemble::GlCorner { d }, alphas: AlphaList::corner(tf, d), scale })
}

/// Conjugate parts of the reflected Poisson walk `𝒮^{(N)}(τ)`, centred by
/// `log_{1/t} τ + ζ`, against `𝓛_{k,t,t^{ζ+1}/(1-t)}`.
pub fn run_theorem_10_3(cfg: &ExperimentConfig) -> Result<ComparisonReport> {
    cfg.validate()?;
    let t = cfg.t()?;
    let tf = to_f64(&t);
    let tau = cfg.tau.expect("validated");
    if !(tau > 0.0) || tau.ln() / (1.0 / tf).ln() < MIN_LOG_TAU {
        return Err(Error::Config(format!("tau = {tau} is below the supported regime log_(1/t) tau >= {MIN_LOG_TAU}")));
    }
    let (n, k) = (cfg.n, cfg.k);
    let (shift, chi) = centering(tau, tf, cfg.zeta, cfg.centering);
    let zero = Signature::new(vec![0; n])?;
    let main = tally(cfg.samples, cfg.seed, FAMILY_WALK, |rng| {
        let st = simulate_s(Extent::Finite(n), &zero, tau, &t, rng)?;
        Ok((conjugate_coords(&st.parts, k, shift)?, top(&st.parts)))
    })?;
    let empirical = main.law(k)?;
    let theoretical = limit_law_window(k, &t, chi, &empirical)?;
    finish(cfg, empirical, theoretical, main.samples, Some(shift), Some(chi), None, None, None)
}

/// Time factor `(1/t)(1-t)/(1-t^N)` relating the Poissonized product to `𝒮^{(N)}`.
pub fn appendix_b_time_factor(t: f64, n: usize) -> f64 {
    (1.0 - t) / (t * (1.0 - t.powi(n as i32)))
}

/// Two-sample comparison of `SN(X^{(N)}(τ))` with `𝒮^{(N)}((1/t)(1-t)/(1-t^N) τ)`;
/// the walk side is reported as `theoretical`.
pub fn run_appendix_b(cfg: &ExperimentConfig) -> Result<ComparisonReport> {
    cfg.validate()?;
    let p = cfg.require_p()?;
    let t = cfg.t()?;
    let tf = to_f64(&t);
    let (n, tau) = (cfg.n, cfg.tau.expect("validated"));
    if !(tau >= 0.0) {
        return Err(Error::Config(format!("tau = {tau} must be nonnegative")));
    }
    let precision = cfg.precision.unwrap_or_else(|| default_poisson_precision(p, tau));
    let x_side = tally(cfg.samples, cfg.seed, FAMILY_MATRIX, |rng| {
        let parts = unsaturated(simulate_x_process(n, tau, p, precision, rng)?, precision)?;
        let tp = top(&parts);
        Ok((parts, tp))
    })?;
    let zero = Signature::new(vec![0; n])?;
    let scaled = appendix_b_time_factor(tf, n) * tau;
    let walk = tally(cfg.samples, cfg.seed, FAMILY_WALK, |rng| {
        let st = simulate_s(Extent::Finite(n), &zero, scaled, &t, rng)?;
        let tp = top(&st.parts);
        Ok((st.parts, tp))
    })?;
    let mut report = finish(
        cfg,
        x_side.law(n)?,
        walk.law(n)?,
        x_side.samples,
        None,
        None,
        Some(x_side.max_aux),
        Some(precision),
        None,
    )?;
    report.stderr = two_sample_stderr(&x_side, &walk);
    Ok(report)
}

/// Dispatches on `cfg.experiment`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ComparisonReport> {
    match cfg.experiment {
        Experiment::Thm14 => run_theorem_1_4(cfg),
        Experiment::Thm15 => run_theorem_1_5(cfg),
        Experiment::Thm103 => run_theorem_10_3(cfg),
        Experiment::AppB => run_appendix_b(cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centering_examples() {
        let (shift, chi) = centering(64.0, 0.5, 0.0, Centering::Floor);
        assert_eq!(shift, 6);
        assert!((chi - 1.0).abs() < 1e-15);
        let (shift, chi) = centering(48.0, 0.5, 0.0, Centering::Floor);
        assert_eq!(shift, 5);
        assert!((chi - 1.5).abs() < 1e-12);
        let (shift, chi) = centering(2f64.powf(10.5), 0.5, 0.5, Centering::Nearest);
        assert_eq!(shift, 11);
        assert!((chi - 0.5f64.powf(1.5) / 0.5).abs() < 1e-12);
    }

    #[test]
    fn guards() {
        let mut cfg = ExperimentConfig::new(Experiment::Thm14, 5, 10);
        cfg.p = Some(2);
        cfg.s = Some(1);
        assert!(matches!(run_theorem_1_4(&cfg), Err(Error::Config(_))));
        let mut cfg = ExperimentConfig::new(Experiment::Thm103, 5, 10);
        cfg.t = Some(crate::qcore::rat(1, 2));
        cfg.tau = Some(0.0);
        assert!(matches!(run_theorem_10_3(&cfg), Err(Error::Config(_))));
    }

    #[test]
    fn appendix_b_zero_time() {
        let mut cfg = ExperimentConfig::new(Experiment::AppB, 3, 100);
        cfg.p = Some(2);
        cfg.tau = Some(0.0);
        let r = run_appendix_b(&cfg).unwrap();
        assert_eq!(r.dinf, 0.0);
        assert!(r.pass);
    }

    #[test]
    fn max_precision_values() {
        assert_eq!(max_precision(2), 126);
        assert_eq!(max_precision(3), 80);
    }
}
