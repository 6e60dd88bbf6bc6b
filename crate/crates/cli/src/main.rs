use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use padic_hl::dynamics::{hl_cauchy_multi, hl_cauchy_step, AlphaList};
use padic_hl::harness::{
    run_experiment, stream_rng, to_json_17, verify_identities, Experiment, ExperimentConfig, SEED_ENV,
};
use padic_hl::limitlaw::{pmf_contour, pmf_k1_detailed, pmf_k2_detailed, pmf_series, ContourSpec, LimitLawParams};
use padic_hl::qcore::{parse_rational, to_f64};
use padic_hl::{dinf, DiscreteLaw, Extent, Signature};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "padic-hl", version, about = "Hall-Littlewood limit laws for p-adic matrix products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PmfMethod {
    Series,
    Contour,
    Closed,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentArg {
    #[value(name = "thm1.4")]
    Thm14,
    #[value(name = "thm1.5")]
    Thm15,
    #[value(name = "thm10.3")]
    Thm103,
    #[value(name = "appB")]
    AppB,
}

impl From<ExperimentArg> for Experiment {
    fn from(e: ExperimentArg) -> Self {
        match e {
            ExperimentArg::Thm14 => Experiment::Thm14,
            ExperimentArg::Thm15 => Experiment::Thm15,
            ExperimentArg::Thm103 => Experiment::Thm103,
            ExperimentArg::AppB => Experiment::AppB,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Pr(L_{k,t,chi} = L).
    Pmf {
        #[arg(long)]
        k: usize,
        /// Rational literal such as 1/2.
        #[arg(long)]
        t: String,
        #[arg(long)]
        chi: f64,
        /// Weakly decreasing integers L_1 >= ... >= L_k.
        #[arg(long = "L", num_args = 1.., allow_negative_numbers = true, required = true)]
        l: Vec<i64>,
        #[arg(long, value_enum, default_value = "series")]
        method: PmfMethod,
    },
    /// Run a Monte Carlo experiment from a JSON config.
    Simulate {
        #[arg(long, value_enum)]
        experiment: ExperimentArg,
        #[arg(long)]
        config: PathBuf,
        /// Appends the report to this JSON-lines file and a sibling CSV.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Draw Hall-Littlewood Cauchy steps from a starting signature.
    SampleHl {
        #[arg(long, allow_negative_numbers = true, num_args = 1.., required = true)]
        lambda: Vec<i64>,
        /// Step parameter; omit together with --powers-of-t to use x = t^j, j >= 0.
        #[arg(long)]
        x: Option<f64>,
        /// Apply the alpha list t, t^2, ... (one step per power) instead of --x.
        #[arg(long)]
        powers_of_t: bool,
        /// Number of variables; `inf` for infinitely many.
        #[arg(long, default_value = "inf")]
        n: String,
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(long, default_value_t = 1)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the exact identity suite.
    Verify {
        #[arg(long, default_value = "1/2")]
        t: String,
    },
    /// D_inf between two laws stored as JSON (a law or a simulate report).
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        tolerance: Option<f64>,
    },
}

fn print(v: &impl serde::Serialize) -> Result<()> {
    println!("{}", to_json_17(v)?);
    Ok(())
}

fn parse_extent(s: &str) -> Result<Extent> {
    match s {
        "inf" | "infinity" | "∞" => Ok(Extent::Infinite),
        _ => Ok(Extent::Finite(s.parse().with_context(|| format!("bad --n {s:?}"))?)),
    }
}

fn load_law(path: &PathBuf) -> Result<DiscreteLaw> {
    let text = std::fs::read_to_string(path).with_context(|| path.display().to_string())?;
    let line = text.lines().rev().find(|l| !l.trim().is_empty()).unwrap_or("");
    let v: Value = serde_json::from_str(&text).or_else(|_| serde_json::from_str(line))?;
    let law = match v.get("empirical") {
        Some(e) => e.clone(),
        None => v,
    };
    Ok(serde_json::from_value(law)?)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Pmf { k, t, chi, l, method } => {
            if l.len() != k {
                bail!("--L has {} entries, expected k = {k}", l.len());
            }
            let t = parse_rational(&t)?;
            let sig = Signature::new(l)?;
            let params = LimitLawParams::new(k, t, chi)?;
            let rec = match method {
                PmfMethod::Series => pmf_series(&params, &sig)?,
                PmfMethod::Contour => pmf_contour(&params, &sig, &ContourSpec::default())?,
                PmfMethod::Closed => match sig.parts() {
                    [x] => pmf_k1_detailed(params.t_f64(), chi, *x),
                    [a, b] => pmf_k2_detailed(params.t_f64(), chi, *b, (a - b) as usize),
                    _ => bail!("closed forms exist for k <= 2"),
                },
            };
            print(&rec)?;
            Ok(true)
        }
        Command::Simulate { experiment, config, output } => {
            let mut cfg = ExperimentConfig::from_json_file(&config)?.with_env_seed()?;
            if cfg.experiment != experiment.into() {
                bail!("config is for {}, not {}", cfg.experiment.id(), Experiment::from(experiment).id());
            }
            if output.is_some() {
                cfg.output = output;
            }
            let report = run_experiment(&cfg)?;
            eprintln!("{}", report.summary());
            print(&report)?;
            Ok(report.pass)
        }
        Command::SampleHl { lambda, x, powers_of_t, n, t, steps, samples, seed } => {
            let t = to_f64(&parse_rational(&t)?);
            let n = parse_extent(&n)?;
            let seed = match std::env::var(SEED_ENV) {
                Ok(v) => v.trim().parse().with_context(|| format!("{SEED_ENV}={v:?}"))?,
                Err(_) => seed,
            };
            let start = Signature::new(lambda)?;
            let mut rng = stream_rng(seed, 0, 0);
            for _ in 0..samples {
                let mut cur = start.clone();
                for _ in 0..steps {
                    cur = match (x, powers_of_t) {
                        (Some(x), false) => hl_cauchy_step(&cur, x, n, t, &mut rng)?,
                        (None, true) => hl_cauchy_multi(&cur, &AlphaList::PowersOfT, n, t, &mut rng)?,
                        _ => bail!("give exactly one of --x and --powers-of-t"),
                    };
                }
                println!("{}", serde_json::to_string(cur.parts())?);
            }
            Ok(true)
        }
        Command::Verify { t } => {
            let report = verify_identities(&parse_rational(&t)?);
            print(&report)?;
            Ok(report.pass)
        }
        Command::Compare { a, b, tolerance } => {
            let (la, lb) = (load_law(&a)?, load_law(&b)?);
            let d = dinf(&la, &lb)?;
            let pass = tolerance.map_or(true, |tol| d < tol);
            print(&json!({ "dinf": d, "tolerance": tolerance, "pass": pass }))?;
            Ok(pass)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
