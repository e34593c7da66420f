//! Plot-ready series in CSV (with `#` metadata lines) or JSON lines.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::domain::WaveFunction;
use crate::propagator::{SimConfig, Trajectory};

pub const TOOL_NAME: &str = "qevap";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Jsonl,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Jsonl => "jsonl",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Flag(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Flag(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// Twelve significant digits in scientific notation.
pub fn sci(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.11e}")
    } else {
        v.to_string()
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => sci(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => sci(*v).parse::<f64>().map(Value::from).unwrap_or(Value::Null),
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Flag(b) => json!(b),
        }
    }
}

/// Header row, data rows and `(key, value)` metadata.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub metadata: Vec<(String, String)>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Table::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.push((key.to_string(), value.to_string()));
        self
    }

    /// Adds the tool version and the SHA-256 of `config_text`.
    pub fn provenance(self, config_text: &str) -> Self {
        self.meta("tool", format!("{TOOL_NAME} {TOOL_VERSION}"))
            .meta("config_sha256", config_hash(config_text))
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Csv => {
                for (k, v) in &self.metadata {
                    let _ = writeln!(out, "# {k} = {v}");
                }
                let _ = writeln!(out, "{}", self.columns.join(","));
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    let _ = writeln!(out, "{}", cells.join(","));
                }
            }
            Format::Jsonl => {
                let meta: Map<String, Value> =
                    self.metadata.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
                let _ = writeln!(out, "{}", json!({ "meta": meta }));
                for row in &self.rows {
                    let obj: Map<String, Value> =
                        self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                    let _ = writeln!(out, "{}", Value::Object(obj));
                }
            }
        }
        out
    }

    /// Aligned plain-text rendering for the terminal.
    pub fn pretty(&self) -> String {
        let cells: Vec<Vec<String>> = std::iter::once(self.columns.clone())
            .chain(self.rows.iter().map(|r| {
                r.iter()
                    .map(|c| match c {
                        Cell::Num(v) => format!("{v:.4e}"),
                        other => other.csv(),
                    })
                    .collect()
            }))
            .collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in cells {
            let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            let _ = writeln!(out, "{}", line.join("  "));
        }
        out
    }
}

pub fn config_hash(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Records of a run: `t_s, norm, mean_x_m, mean_p_kgms, E_kin_J, E_tot_J, T, R`.
pub fn trajectory_table(traj: &Trajectory) -> Table {
    let mut table = Table::new(&["t_s", "norm", "mean_x_m", "mean_p_kgms", "E_kin_J", "E_tot_J", "T", "R"]);
    for r in &traj.records {
        let e = &r.expectation;
        table.push(vec![
            e.t.into(),
            e.norm.into(),
            e.mean_x.into(),
            e.mean_p.into(),
            e.e_kin.into(),
            e.e_tot.into(),
            r.transmission.into(),
            r.reflection.into(),
        ]);
    }
    table
}

/// One state on its grid: `x_m, re_psi, im_psi`.
pub fn snapshot_table(t: f64, psi: &WaveFunction) -> Table {
    let mut table = Table::new(&["x_m", "re_psi", "im_psi"]).meta("t_s", sci(t));
    for (x, a) in psi.grid.points().zip(&psi.amplitudes) {
        table.push(vec![x.into(), a.re.into(), a.im.into()]);
    }
    table
}

/// Config text used for hashing and manifests.
pub fn config_text(config: &SimConfig) -> String {
    super::config::write_config(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["q_per_m", "T", "converged"]).meta("tool", "x");
        t.push(vec![1e8.into(), 1.38508e-6.into(), true.into()]);
        assert_eq!(
            t.render(Format::Csv),
            "# tool = x\nq_per_m,T,converged\n1.00000000000e8,1.38508000000e-6,true\n"
        );
        let jsonl = t.render(Format::Jsonl);
        let lines: Vec<Value> = jsonl.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines[0]["meta"]["tool"], "x");
        assert_eq!(lines[1]["T"], 1.38508e-6);
    }

    #[test]
    fn hash_is_stable() {
        assert_eq!(config_hash("").len(), 64);
        assert_eq!(config_hash("a"), config_hash("a"));
        assert_ne!(config_hash("a"), config_hash("b"));
    }
}
