use std::path::{Path, PathBuf};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qcore::{check_t, format_rational, parse_rational, rat, Rational};

/// Environment variable overriding the configured seed.
pub const SEED_ENV: &str = "RMT_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Experiment {
    #[serde(rename = "thm1.4")]
    Thm14,
    #[serde(rename = "thm1.5")]
    Thm15,
    #[serde(rename = "thm10.3")]
    Thm103,
    #[serde(rename = "appB")]
    AppB,
}

impl Experiment {
    pub fn id(&self) -> &'static str {
        match self {
            Experiment::Thm14 => "thm1.4",
            Experiment::Thm15 => "thm1.5",
            Experiment::Thm103 => "thm10.3",
            Experiment::AppB => "appB",
        }
    }
}

/// How the centering `log_{1/t}(scale) (+ ζ)` is rounded to an integer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Centering {
    /// `⌊log_{1/t} scale⌋`; `ζ` is unused.
    #[default]
    Floor,
    /// `[log_{1/t} scale + ζ]`.
    Nearest,
}

mod opt_rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        x.as_ref().map(format_rational).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Lit {
            Str(String),
            Num(f64),
        }
        match Option::<Lit>::deserialize(d)? {
            None => Ok(None),
            Some(Lit::Str(s)) => parse_rational(&s).map(Some).map_err(serde::de::Error::custom),
            Some(Lit::Num(x)) => parse_rational(&x.to_string()).map(Some).map_err(serde::de::Error::custom),
        }
    }
}

fn default_k() -> usize {
    1
}

fn default_true() -> bool {
    true
}

fn default_certify() -> usize {
    1000
}

/// One Monte Carlo experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    #[serde(default)]
    pub p: Option<u64>,
    /// Defaults to `1/p`.
    #[serde(default, with = "opt_rational")]
    pub t: Option<Rational>,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(default)]
    pub s: Option<usize>,
    #[serde(default)]
    pub tau: Option<f64>,
    /// Corner codimension `D` for the `GL_{N+D}` ensemble.
    #[serde(default, rename = "D")]
    pub d: Option<usize>,
    #[serde(default = "default_k")]
    pub k: usize,
    /// Precision exponent `K`; defaults to a high quantile of the total valuation plus 6.
    #[serde(default, rename = "K")]
    pub precision: Option<u32>,
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub zeta: f64,
    #[serde(default)]
    pub centering: Centering,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Use the Hall-Littlewood sampler after matrix-path certification.
    #[serde(default = "default_true")]
    pub surrogate: bool,
    #[serde(default = "default_certify")]
    pub certify_samples: usize,
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment, n: usize, samples: usize) -> Self {
        ExperimentConfig {
            experiment,
            p: None,
            t: None,
            n,
            s: None,
            tau: None,
            d: None,
            k: 1,
            precision: None,
            samples,
            seed: 0,
            zeta: 0.0,
            centering: Centering::Floor,
            output: None,
            tolerance: None,
            surrogate: true,
            certify_samples: default_certify(),
        }
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let cfg: ExperimentConfig = serde_json::from_str(&text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies `RMT_SEED` when set.
    pub fn with_env_seed(mut self) -> Result<Self> {
        if let Ok(v) = std::env::var(SEED_ENV) {
            self.seed = v.trim().parse().map_err(|_| Error::Config(format!("{SEED_ENV}={v:?} is not a u64")))?;
        }
        Ok(self)
    }

    /// `t`, from `p` when not given explicitly.
    pub fn t(&self) -> Result<Rational> {
        match (&self.t, self.p) {
            (Some(t), _) => Ok(t.clone()),
            (None, Some(p)) => Ok(rat(1, p as i64)),
            (None, None) => Err(Error::Config("one of p or t is required".into())),
        }
    }

    pub fn require_p(&self) -> Result<u64> {
        self.p.ok_or_else(|| Error::Config(format!("{} requires p", self.experiment.id())))
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        if self.n == 0 || self.k == 0 || self.k > self.n {
            return Err(Error::Config(format!("need 1 <= k <= N, got k = {}, N = {}", self.k, self.n)));
        }
        let t = self.t()?;
        check_t(&t)?;
        if let (Some(p), Some(t)) = (self.p, &self.t) {
            if *t != rat(1, p as i64) {
                return Err(Error::Config(format!("t = {} is inconsistent with p = {p}", format_rational(t))));
            }
        }
        let need = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::Config(format!("{} requires {what}", self.experiment.id())))
            }
        };
        match self.experiment {
            Experiment::Thm14 => {
                need(self.p.is_some() && self.s.is_some(), "p and s")?;
            }
            Experiment::Thm15 => {
                need(self.p.is_some() && self.s.is_some() && self.d.is_some_and(|d| d >= 1), "p, s and D >= 1")?;
            }
            Experiment::Thm103 => need(self.tau.is_some(), "tau")?,
            Experiment::AppB => need(self.p.is_some() && self.tau.is_some(), "p and tau")?,
        }
        if let Some(tol) = self.tolerance {
            if !(tol > 0.0) {
                return Err(Error::Config("tolerance must be positive".into()));
            }
        }
        Ok(())
    }
}

/// Heuristic `D_∞` threshold `max(0.005, 4 sqrt(ln(support) / samples))`.
pub fn default_tolerance(support: usize, samples: f64) -> f64 {
    let s = (support.max(2) as f64).ln();
    (4.0 * (s / samples).sqrt()).max(0.005)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_validate() {
        let cfg: ExperimentConfig =
            serde_json::from_str(r#"{"experiment":"thm1.4","p":2,"N":20,"s":64,"k":2,"samples":100,"seed":3}"#).unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.t().unwrap(), rat(1, 2));
        assert!(cfg.surrogate);
        let bad: ExperimentConfig =
            serde_json::from_str(r#"{"experiment":"thm1.4","p":2,"t":"1/3","N":20,"s":64,"samples":1}"#).unwrap();
        assert!(bad.validate().is_err());
        let t_only: ExperimentConfig =
            serde_json::from_str(r#"{"experiment":"thm10.3","t":0.5,"N":30,"tau":1024,"samples":1}"#).unwrap();
        t_only.validate().unwrap();
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"experiment":"x","N":1,"samples":1}"#).is_err());
    }

    #[test]
    fn tolerance_floor() {
        assert_eq!(default_tolerance(3, 1e9), 0.005);
        assert!((default_tolerance(100, 1e5) - 4.0 * (100f64.ln() / 1e5).sqrt()).abs() < 1e-15);
    }
}
