//! Artifact records and the JSON, CSV, JSON-lines and binary writers.

use crate::config::RunConfig;
use crate::error::CliError;
use serde::Serialize;
use serde_json::Value;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

/// One measured quantity against its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    /// Human-readable acceptance condition, e.g. `<= 1e-8`.
    pub condition: String,
    pub passed: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            value,
            condition: format!("<= {bound:e}"),
            passed: value <= bound,
        }
    }

    pub fn at_least(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            value,
            condition: format!(">= {bound:e}"),
            passed: value >= bound,
        }
    }

    pub fn within(name: impl Into<String>, value: f64, target: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            value,
            condition: format!("= {target} ± {tol:e}"),
            passed: (value - target).abs() <= tol,
        }
    }

    /// A yes/no property; `value` is the number behind it.
    pub fn holds(
        name: impl Into<String>,
        value: f64,
        condition: impl Into<String>,
        passed: bool,
    ) -> Self {
        Self {
            name: name.into(),
            value,
            condition: condition.into(),
            passed,
        }
    }

    /// Tab-separated line for text output.
    pub fn line(&self) -> String {
        format!(
            "{}\t{}\t{:e}\t{}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.value,
            self.condition
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Versions {
    pub clifford_phase: &'static str,
    pub clifford_phase_core: &'static str,
}

impl Versions {
    pub fn current() -> Self {
        Self {
            clifford_phase: env!("CARGO_PKG_VERSION"),
            clifford_phase_core: clifford_phase_core::VERSION,
        }
    }
}

/// Elapsed time is only recorded on request so that reruns are byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub wall_clock: bool,
    pub seconds: Option<f64>,
}

/// Everything a run writes to its JSON artifact.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Artifact {
    pub command: &'static str,
    pub config: RunConfig,
    pub versions: Versions,
    pub grid: Value,
    pub timing: Timing,
    pub results: Value,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Artifact {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("artifact values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = writeln!(s, "{}", c.line());
        }
        let _ = writeln!(
            s,
            "{}",
            if self.passed {
                "ALL PASS"
            } else {
                "SOME CHECKS FAILED"
            }
        );
        s
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Columns of equal length under a header line.
pub fn csv(header: &[&str], columns: &[&[f64]]) -> String {
    let rows = columns.first().map_or(0, |c| c.len());
    debug_assert!(columns.iter().all(|c| c.len() == rows));
    let mut s = header.join(",");
    s.push('\n');
    for r in 0..rows {
        for (j, c) in columns.iter().enumerate() {
            if j > 0 {
                s.push(',');
            }
            let _ = write!(s, "{}", c[r]);
        }
        s.push('\n');
    }
    s
}

/// One compact JSON document per line.
pub fn json_lines<T: Serialize>(records: &[T]) -> String {
    let mut s = String::new();
    for r in records {
        s.push_str(&serde_json::to_string(r).expect("records serialize"));
        s.push('\n');
    }
    s
}

/// Magic bytes at the start of a matrix dump.
pub const MATRIX_MAGIC: &[u8; 8] = b"CPMAT\0\0\x01";

/// `MATRIX_MAGIC`, rows and columns as little-endian `u64`, then the
/// entries as little-endian `f64` in row-major order.
pub fn write_matrix(
    path: &Path,
    rows: usize,
    cols: usize,
    entry: impl Fn(usize, usize) -> f64,
) -> Result<(), CliError> {
    let mut bytes = Vec::with_capacity(24 + 8 * rows * cols);
    bytes.extend_from_slice(MATRIX_MAGIC);
    bytes.extend_from_slice(&(rows as u64).to_le_bytes());
    bytes.extend_from_slice(&(cols as u64).to_le_bytes());
    for i in 0..rows {
        for j in 0..cols {
            bytes.extend_from_slice(&entry(i, j).to_le_bytes());
        }
    }
    let mut f = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    f.write_all(&bytes).map_err(|e| CliError::io(path, e))
}

/// Inverse of [`write_matrix`]: `(rows, cols, row-major entries)`.
pub fn read_matrix(bytes: &[u8]) -> Option<(usize, usize, Vec<f64>)> {
    if bytes.len() < 24 || &bytes[..8] != MATRIX_MAGIC {
        return None;
    }
    let word = |i: usize| u64::from_le_bytes(bytes[i..i + 8].try_into().unwrap()) as usize;
    let (rows, cols) = (word(8), word(16));
    if bytes.len() != 24 + 8 * rows * cols {
        return None;
    }
    let data = bytes[24..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Some((rows, cols, data))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let s = csv(&["a", "b"], &[&[1.0, 2.5], &[-0.125, 3.0]]);
        assert_eq!(s, "a,b\n1,-0.125\n2.5,3\n");
    }

    #[test]
    fn matrix_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.bin");
        write_matrix(&path, 2, 3, |i, j| (10 * i + j) as f64 + 0.5).unwrap();
        let (r, c, d) = read_matrix(&std::fs::read(&path).unwrap()).unwrap();
        assert_eq!((r, c), (2, 3));
        assert_eq!(d, vec![0.5, 1.5, 2.5, 10.5, 11.5, 12.5]);
    }

    #[test]
    fn checks_compare_against_bounds() {
        assert!(Check::at_most("x", 1e-9, 1e-8).passed);
        assert!(!Check::at_least("x", 1.9, 2.0).passed);
        assert!(Check::within("x", 2.04, 2.0, 0.05).passed);
        assert!(!Check::at_most("x", f64::NAN, 1.0).passed);
    }
}
