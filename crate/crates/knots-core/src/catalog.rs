//! Catalog records and their on-disk formats.
//!
//! A catalog holds one record per knot class, ordered by crossing count then
//! lexicographically by code. Two byte-deterministic formats are supported:
//! tab-separated lines and JSON lines, both carrying the fields `n`, `code`,
//! `shadow_id`, `assignment_bits`, `invariants`, `status`. Comment lines
//! prefixed `#` carry run metadata and are ignored on read.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::{CodeError, PairCode};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error("line {0}: {1}")]
    Code(usize, CodeError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Whether a record is known to be a distinct knot class or may duplicate
/// another entry (the bounded search cannot always tell at high crossing
/// counts).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordStatus {
    Confirmed,
    Unconfirmed,
}

impl fmt::Display for RecordStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RecordStatus::Confirmed => "confirmed",
            RecordStatus::Unconfirmed => "unconfirmed",
        })
    }
}

impl FromStr for RecordStatus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "confirmed" => Ok(RecordStatus::Confirmed),
            "unconfirmed" => Ok(RecordStatus::Unconfirmed),
            other => Err(format!("unknown status {other:?}")),
        }
    }
}

/// One surviving knot class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotRecord {
    pub code: PairCode,
    /// Lexicographic rank of the shadow permutation the survivor came from.
    pub shadow_id: u64,
    /// The over/under assignment bits `g_1..g_n` of that projection.
    pub assignment_bits: String,
    /// Certificate entries `partition=...;answer=...`, empty until filled.
    pub invariants: String,
    pub status: RecordStatus,
}

impl KnotRecord {
    pub fn n(&self) -> usize {
        self.code.n()
    }
}

#[derive(Serialize, Deserialize)]
struct RecordLine {
    n: usize,
    code: String,
    shadow_id: u64,
    assignment_bits: String,
    invariants: String,
    status: RecordStatus,
}

/// An ordered set of records.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Catalog {
    pub records: Vec<KnotRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogFormat {
    Tsv,
    Json,
}

impl Catalog {
    /// Sort into the canonical order: crossing count, then code.
    pub fn sort(&mut self) {
        self.records
            .sort_by(|a, b| a.code.cmp(&b.code).then(a.shadow_id.cmp(&b.shadow_id)));
    }

    pub fn write(&self, format: CatalogFormat, header: &[String]) -> String {
        let mut out = String::new();
        for h in header {
            out.push_str("# ");
            out.push_str(h);
            out.push('\n');
        }
        match format {
            CatalogFormat::Tsv => {
                out.push_str("# columns: n\tcode\tshadow_id\tassignment_bits\tinvariants\tstatus\n");
                for r in &self.records {
                    out.push_str(&format!(
                        "{}\t{}\t{}\t{}\t{}\t{}\n",
                        r.n(),
                        r.code,
                        r.shadow_id,
                        r.assignment_bits,
                        r.invariants,
                        r.status
                    ));
                }
            }
            CatalogFormat::Json => {
                for r in &self.records {
                    let line = RecordLine {
                        n: r.n(),
                        code: r.code.to_string(),
                        shadow_id: r.shadow_id,
                        assignment_bits: r.assignment_bits.clone(),
                        invariants: r.invariants.clone(),
                        status: r.status,
                    };
                    out.push_str(&serde_json::to_string(&line).expect("record serializes"));
                    out.push('\n');
                }
            }
        }
        out
    }

    pub fn read(text: &str, format: CatalogFormat) -> Result<Catalog, CatalogError> {
        let mut records = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let parsed: RecordLine = match format {
                CatalogFormat::Tsv => {
                    let fields: Vec<&str> = line.split('\t').collect();
                    if fields.len() != 6 {
                        return Err(CatalogError::Parse(
                            lineno,
                            format!("expected 6 tab-separated fields, got {}", fields.len()),
                        ));
                    }
                    RecordLine {
                        n: fields[0]
                            .parse()
                            .map_err(|e| CatalogError::Parse(lineno, format!("bad n: {e}")))?,
                        code: fields[1].to_string(),
                        shadow_id: fields[2].parse().map_err(|e| {
                            CatalogError::Parse(lineno, format!("bad shadow_id: {e}"))
                        })?,
                        assignment_bits: fields[3].to_string(),
                        invariants: fields[4].to_string(),
                        status: fields[5]
                            .parse()
                            .map_err(|e| CatalogError::Parse(lineno, e))?,
                    }
                }
                CatalogFormat::Json => serde_json::from_str(line)
                    .map_err(|e| CatalogError::Parse(lineno, e.to_string()))?,
            };
            let code: PairCode = parsed
                .code
                .parse()
                .map_err(|e| CatalogError::Code(lineno, e))?;
            if code.n() != parsed.n {
                return Err(CatalogError::Parse(
                    lineno,
                    format!("n field {} disagrees with code ({})", parsed.n, code.n()),
                ));
            }
            records.push(KnotRecord {
                code,
                shadow_id: parsed.shadow_id,
                assignment_bits: parsed.assignment_bits,
                invariants: parsed.invariants,
                status: parsed.status,
            });
        }
        Ok(Catalog { records })
    }

    /// Survivor counts per crossing count `0..=max_n`.
    pub fn counts_up_to(&self, max_n: usize) -> Vec<usize> {
        let mut counts = vec![0usize; max_n + 1];
        for r in &self.records {
            if r.n() <= max_n {
                counts[r.n()] += 1;
            }
        }
        counts
    }
}

/// One row of the run summary printed after an enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SummaryRow {
    pub n: usize,
    pub shadows: usize,
    pub assignments: usize,
    pub survivors: usize,
}

/// Render the summary table: crossing count, admissible shadows, projections
/// swept, and surviving knot classes.
pub fn render_summary(rows: &[SummaryRow]) -> String {
    let mut out = String::from("n\tshadows\tshadows_x_2^(n-1)\tknots\n");
    for row in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            row.n, row.shadows, row.assignments, row.survivors
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(code: &str, shadow_id: u64) -> KnotRecord {
        KnotRecord {
            code: code.parse().unwrap(),
            shadow_id,
            assignment_bits: "000".into(),
            invariants: String::new(),
            status: RecordStatus::Confirmed,
        }
    }

    #[test]
    fn tsv_round_trip() {
        let mut cat = Catalog {
            records: vec![record("1:4 3:6 5:2", 3), record("", 0)],
        };
        cat.sort();
        let text = cat.write(CatalogFormat::Tsv, &["run test".into()]);
        let back = Catalog::read(&text, CatalogFormat::Tsv).unwrap();
        assert_eq!(back, cat);
        assert_eq!(cat.records[0].n(), 0);
    }

    #[test]
    fn json_round_trip() {
        let cat = Catalog {
            records: vec![record("1:4 3:6 5:2", 3)],
        };
        let text = cat.write(CatalogFormat::Json, &[]);
        let back = Catalog::read(&text, CatalogFormat::Json).unwrap();
        assert_eq!(back, cat);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Catalog::read("# header\n3\tbroken\n", CatalogFormat::Tsv).unwrap_err();
        assert!(matches!(err, CatalogError::Parse(2, _)));
        let err = Catalog::read("{\"oops\": 1}\n", CatalogFormat::Json).unwrap_err();
        assert!(matches!(err, CatalogError::Parse(1, _)));
    }
}
