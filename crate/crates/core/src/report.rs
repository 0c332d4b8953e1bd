//! Serialized report envelopes shared by the CLI and the test suites.

use crate::convention::ConventionRecord;
use crate::grid::GridMeta;
use serde::Serialize;

/// One self-test check: name, measured value, threshold, verdict.
#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl CheckLine {
    pub fn new(name: &str, measured: f64, threshold: f64) -> Self {
        CheckLine {
            name: name.to_string(),
            measured,
            threshold,
            passed: measured.is_finite() && measured < threshold,
        }
    }
}

/// Envelope embedding the resolved configuration, grid metadata, and the
/// convention record into every machine-readable report.
#[derive(Debug, Clone, Serialize)]
pub struct ReportEnvelope<T: Serialize> {
    pub command: String,
    pub config: serde_json::Value,
    pub grid: Option<GridMeta>,
    pub convention: ConventionRecord,
    pub payload: T,
}

impl<T: Serialize> ReportEnvelope<T> {
    pub fn new(
        command: &str,
        config: serde_json::Value,
        grid: Option<GridMeta>,
        d: u32,
        alpha: Option<f64>,
        payload: T,
    ) -> Self {
        ReportEnvelope {
            command: command.to_string(),
            config,
            grid,
            convention: ConventionRecord::new(d, alpha),
            payload,
        }
    }

    pub fn to_json(&self) -> crate::error::Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Format a float as 17-significant-digit decimal text, the CSV contract.
pub fn csv_number(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_line_verdicts() {
        assert!(CheckLine::new("a", 1e-7, 1e-6).passed);
        assert!(!CheckLine::new("b", 1e-5, 1e-6).passed);
        assert!(!CheckLine::new("c", f64::NAN, 1e-6).passed);
    }

    #[test]
    fn envelope_serializes_with_convention() {
        let env = ReportEnvelope::new(
            "exponents",
            serde_json::json!({"d": 5}),
            None,
            5,
            Some(3.0),
            serde_json::json!({"p0": 1.2}),
        );
        let s = env.to_json().unwrap();
        assert!(s.contains("riesz_constant_formula"));
        assert!(s.contains("p0"));
    }

    #[test]
    fn csv_number_has_17_significant_digits() {
        let s = csv_number(1.2);
        assert_eq!(s, "1.2000000000000000e0");
        // roundtrips bit-exactly
        assert_eq!(s.parse::<f64>().unwrap(), 1.2);
    }
}
