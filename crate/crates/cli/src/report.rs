//! Reports: deterministic JSON plus a TSV table.

use std::fs;
use std::io;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use grlc::{Degree, HilbertTable};
use serde::Serialize;

/// Process exit status for each kind of outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Ok,
    Fails,
    Unstabilized,
    Refused,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Fails => 2,
            Status::Unstabilized => 3,
            Status::Refused => 4,
        }
    }
}

/// Everything the command was run with, after overrides.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gwindow: Option<Vec<Degree>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hwindow: Option<Vec<Degree>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ray_cap: Option<usize>,
    pub assume_support_covered: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Run metadata; the only part of a report that varies between identical runs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Meta {
    pub timestamp: u64,
    pub version: &'static str,
}

impl Meta {
    pub fn now() -> Self {
        Meta {
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    /// One column per table, one row per degree of the first table.
    pub fn from_tables(columns: &[(&str, &HilbertTable)]) -> Self {
        let mut header = vec!["degree"];
        header.extend(columns.iter().map(|c| c.0));
        let mut t = Table::new(&header);
        if let Some((_, first)) = columns.first() {
            for g in first.degrees() {
                let mut row = vec![g.to_string()];
                row.extend(columns.iter().map(|(_, c)| c.get(g).map_or("-".into(), |v| v.to_string())));
                t.push(row);
            }
        }
        t
    }

    pub fn to_tsv(&self) -> String {
        let mut out = self.header.join("\t");
        out.push('\n');
        for r in &self.rows {
            out += &r.join("\t");
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub parameters: Parameters,
    pub verdict: String,
    pub status: Status,
    pub result: serde_json::Value,
    pub meta: Meta,
    #[serde(skip)]
    pub table: Table,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// TSV with a leading comment line carrying command and verdict.
    pub fn to_tsv(&self) -> String {
        format!("# {}\t{}\n{}", self.command, self.verdict, self.table.to_tsv())
    }

    /// Writes `report.json` and `report.tsv` into `dir`, creating it if needed.
    pub fn write(&self, dir: &Path) -> io::Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("report.json"), self.to_json())?;
        fs::write(dir.join("report.tsv"), self.to_tsv())
    }
}
