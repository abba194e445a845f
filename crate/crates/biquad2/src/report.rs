//! JSON and CSV serialization of verification reports.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::campaign::{Row, VerificationReport};

pub const CSV_HEADER: [&str; 17] = [
    "case_id", "q", "q1", "q2", "r", "s", "t", "delta", "cond", "pred_rank", "rank0", "rank1", "stable", "h2_K",
    "h2_K1", "group", "agree",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn to_json(r: &VerificationReport) -> serde_json::Result<String> {
    serde_json::to_string_pretty(r)
}

pub fn from_json(s: &str) -> serde_json::Result<VerificationReport> {
    serde_json::from_str(s)
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(T::to_string).unwrap_or_default()
}

fn csv_record(r: &Row) -> [String; 17] {
    [
        r.case_id.to_string(),
        opt(&r.q),
        opt(&r.q1),
        opt(&r.q2),
        opt(&r.r),
        opt(&r.s),
        opt(&r.t),
        r.delta.to_string(),
        r.cond.to_string(),
        r.pred_rank.to_string(),
        opt(&r.rank0),
        opt(&r.rank1),
        opt(&r.stable),
        opt(&r.h2_k),
        opt(&r.h2_k1),
        opt(&r.group),
        r.agree.to_string(),
    ]
}

/// One row per tuple under the fixed header.
pub fn write_csv<W: Write>(r: &VerificationReport, w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    for row in &r.rows {
        out.write_record(csv_record(row))?;
    }
    out.flush()?;
    Ok(())
}

pub fn cli_report(r: &VerificationReport, format: Format) -> Result<String, Box<dyn std::error::Error>> {
    Ok(match format {
        Format::Json => to_json(r)?,
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(r, &mut buf)?;
            String::from_utf8(buf)?
        }
    })
}
