use std::fmt::Write as _;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use super::config::{Centering, ExperimentConfig};
use crate::error::{Error, Result};
use crate::qcore::DiscreteLaw;

/// In-run check that the Hall-Littlewood sampler reproduces the matrix path.
#[derive(Clone, Debug, Serialize)]
pub struct Certification {
    pub samples: u64,
    pub dinf: f64,
    pub bound: f64,
}

/// Empirical versus theoretical law for one experiment.
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub experiment: String,
    pub config: ExperimentConfig,
    pub empirical: DiscreteLaw,
    pub theoretical: DiscreteLaw,
    pub dinf: f64,
    pub samples: u64,
    pub stderr: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Centering subtracted from the conjugate parts, with the rule used.
    pub shift: Option<i64>,
    pub centering: Option<Centering>,
    pub chi: Option<f64>,
    /// Largest top singular number seen, against the precision `K`.
    pub max_top_part: Option<i64>,
    pub precision: Option<u32>,
    pub certification: Option<Certification>,
}

impl ComparisonReport {
    pub fn summary(&self) -> String {
        format!(
            "{} dinf={:.6} tol={:.6} samples={} {}",
            self.experiment,
            self.dinf,
            self.tolerance,
            self.samples,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

fn write_value(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                let x = n.as_f64().expect("f64");
                write!(out, "{x:.16e}").expect("string write");
            } else {
                write!(out, "{n}").expect("string write");
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(a) => {
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(x, out);
            }
            out.push(']');
        }
        Value::Object(m) => {
            out.push('{');
            for (i, (k, x)) in m.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                write_value(x, out);
            }
            out.push('}');
        }
    }
}

/// Compact JSON with every float written to 17 significant digits.
pub fn to_json_17<T: Serialize>(x: &T) -> Result<String> {
    let v = serde_json::to_value(x).map_err(|e| Error::Config(e.to_string()))?;
    let mut s = String::new();
    write_value(&v, &mut s);
    Ok(s)
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Config(format!("{}: {e}", path.display()))
}

/// Appends the report as one JSON line to `path` and a summary row to the
/// sibling `.csv` file.
pub fn write_outputs(report: &ComparisonReport, path: &Path) -> Result<()> {
    let line = to_json_17(report)?;
    let mut f = OpenOptions::new().create(true).append(true).open(path).map_err(|e| io_err(path, e))?;
    writeln!(f, "{line}").map_err(|e| io_err(path, e))?;
    let csv = path.with_extension("csv");
    let fresh = !csv.exists();
    let mut c = OpenOptions::new().create(true).append(true).open(&csv).map_err(|e| io_err(&csv, e))?;
    if fresh {
        writeln!(c, "experiment,params,dinf,tolerance,samples,pass").map_err(|e| io_err(&csv, e))?;
    }
    let params = to_json_17(&report.config)?.replace('"', "\"\"");
    writeln!(
        c,
        "{},\"{}\",{:.16e},{:.16e},{},{}",
        report.experiment, params, report.dinf, report.tolerance, report.samples, report.pass
    )
    .map_err(|e| io_err(&csv, e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        let s = to_json_17(&serde_json::json!({"a": 0.1, "b": [1, 2.5], "c": "x\"y"})).unwrap();
        assert_eq!(s, r#"{"a":1.0000000000000001e-1,"b":[1,2.5000000000000000e0],"c":"x\"y"}"#);
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["a"].as_f64(), Some(0.1));
    }
}
