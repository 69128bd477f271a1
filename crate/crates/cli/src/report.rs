//! Run reports: JSON with a fixed field order, floats at 15 significant digits.

use std::io::Write;
use std::path::Path;

use blochkit::SamplingPlan64;
use serde::Serialize;
use serde_json::{Number, Value};

use crate::error::CliError;

pub const SIGNIFICANT_DIGITS: usize = 15;

/// Rounds to 15 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Decimal text with exactly 15 significant digits.
pub fn format_sig(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return format!("{:.*}", SIGNIFICANT_DIGITS - 1, 0.0);
    }
    let exp = round_sig(x).abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
    }
}

/// Sampling plan echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanEcho {
    pub angular_resolution: usize,
    pub ladder_depth: usize,
    pub tolerance: f64,
    pub sup_radii: usize,
    pub sup_angles: usize,
    pub golden_iterations: usize,
}

impl From<&SamplingPlan64> for PlanEcho {
    fn from(p: &SamplingPlan64) -> Self {
        let (sup_radii, sup_angles) = p.sup_grid();
        Self {
            angular_resolution: p.angular_resolution(),
            ladder_depth: p.ladder_depth(),
            tolerance: p.tolerance(),
            sup_radii,
            sup_angles,
            golden_iterations: p.golden_iterations(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub parameters: Value,
    pub plan: PlanEcho,
    pub result: Value,
    /// `[truncation, value]` rows.
    pub evidence: Vec<[f64; 2]>,
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if n.is_f64() {
                let x = n.as_f64().unwrap_or(f64::NAN);
                *v = Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

impl Report {
    pub fn new(command: &str, parameters: Value, plan: &SamplingPlan64, result: Value, evidence: &[(f64, f64)]) -> Self {
        Self {
            tool: "blochkit",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            parameters,
            plan: plan.into(),
            result,
            evidence: evidence.iter().map(|&(t, v)| [t, v]).collect(),
        }
    }

    pub fn to_value(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        round_value(&mut v);
        v
    }

    /// Pretty JSON, newline terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn write_json(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_json()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }

    pub fn csv_bytes(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(["truncation", "value"]).map_err(io)?;
        for [t, v] in &self.evidence {
            w.write_record([format_sig(*t), format_sig(*v)]).map_err(io)?;
        }
        w.flush().map_err(|e| CliError::Io(e.to_string()))?;
        w.into_inner().map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), CliError> {
        let bytes = self.csv_bytes()?;
        let mut f = std::fs::File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        f.write_all(&bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333333);
        assert_eq!(format_sig(0.8), "0.800000000000000");
        assert_eq!(format_sig(1.0986122886681098), "1.09861228866811");
        assert_eq!(format_sig(2.5e-9), "2.50000000000000e-9");
        assert_eq!(format_sig(-12.5), "-12.5000000000000");
    }

    #[test]
    fn field_order_is_stable() {
        let r = Report::new(
            "metric",
            json!({"z": [0.5, 0.0], "w": [-0.5, 0.0]}),
            &SamplingPlan64::default(),
            json!({"rho": 0.8, "sigma": 1.0986122886681098}),
            &[(1.0, 2.0)],
        );
        let s = r.to_json();
        let keys = ["\"tool\"", "\"version\"", "\"command\"", "\"parameters\"", "\"plan\"", "\"result\"", "\"evidence\""];
        let pos: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(s.find("\"z\"").unwrap() < s.find("\"w\"").unwrap());
        assert!(s.contains("1.09861228866811"));
        let csv = String::from_utf8(r.csv_bytes().unwrap()).unwrap();
        assert_eq!(csv, "truncation,value\n1.00000000000000,2.00000000000000\n");
    }
}
