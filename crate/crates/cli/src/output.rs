//! Row types and the tsv/csv/json writers.

use crate::config::Format;
use anyhow::Result;
use lzeros::zeros::{RectangleCount, RhReport, ZeroRecord};
use rug::Float;
use serde::Serialize;
use std::io::Write;

/// Decimal string with `digits` significant digits.
pub fn dec(x: &Float, digits: usize) -> String {
    x.to_string_radix(10, Some(digits.max(2)))
}

#[derive(Clone, Debug, Serialize)]
pub struct EvalRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub level: usize,
    /// `R_j`, or `Re S_N^(j)` off the line.
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroRow {
    pub index: i64,
    pub re: f64,
    pub im: f64,
    pub on_line: bool,
    pub tolerance: f64,
    pub residual: f64,
    pub method: &'static str,
    pub unresolved: bool,
    pub simple: Option<bool>,
}

impl From<&ZeroRecord> for ZeroRow {
    fn from(z: &ZeroRecord) -> Self {
        ZeroRow {
            index: z.index,
            re: z.re,
            im: z.im,
            on_line: z.on_line,
            tolerance: z.tolerance,
            residual: z.residual,
            method: z.method.as_str(),
            unresolved: z.unresolved,
            simple: z.simple,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CountRow {
    pub t: f64,
    pub right_edge: f64,
    pub count: i64,
    pub phase_term: f64,
    pub arg_term: f64,
    pub real_zero_correction: f64,
    pub residual: f64,
    pub min_abs: f64,
    pub near_miss: bool,
    pub evaluations: usize,
}

impl From<&RectangleCount> for CountRow {
    fn from(r: &RectangleCount) -> Self {
        CountRow {
            t: r.upper_right.1,
            right_edge: r.upper_right.0,
            count: r.count,
            phase_term: r.phase_term,
            arg_term: r.arg_term,
            real_zero_correction: r.real_zero_correction,
            residual: r.residual,
            min_abs: r.min_abs,
            near_miss: r.near_miss,
            evaluations: r.evaluations,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDto {
    pub name: String,
    pub t_max: f64,
    pub verdict: &'static str,
    pub online_count: usize,
    pub offline_pairs: usize,
    pub count: CountRow,
    pub retries: Vec<CountRow>,
    pub online: Vec<ZeroRow>,
    pub offline: Vec<ZeroRow>,
    pub notes: Vec<String>,
}

impl From<&RhReport> for ReportDto {
    fn from(r: &RhReport) -> Self {
        ReportDto {
            name: r.name.clone(),
            t_max: r.t_max,
            verdict: r.verdict.as_str(),
            online_count: r.online_count(),
            offline_pairs: r.offline.len(),
            count: (&r.rectangle).into(),
            retries: r.rectangle.retries.iter().map(CountRow::from).collect(),
            online: r.online.iter().map(ZeroRow::from).collect(),
            offline: r.offline.iter().map(ZeroRow::from).collect(),
            notes: r.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExplicitRow {
    pub x: String,
    pub prime_side: String,
    pub zero_side: String,
    pub difference: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioRow {
    pub level: usize,
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoeffsRow {
    pub path: String,
    pub family: String,
    pub m: usize,
    pub kind: String,
}

/// A table in the requested format: delimited text with a header, or a
/// JSON array.
pub fn write_rows<T: Serialize>(w: &mut dyn Write, format: Format, rows: &[T]) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *w, rows)?;
            writeln!(w)?;
        }
        Format::Tsv | Format::Csv => {
            let delim = if format == Format::Tsv { b'\t' } else { b',' };
            let mut cw = csv::WriterBuilder::new().delimiter(delim).from_writer(&mut *w);
            for r in rows {
                cw.serialize(r)?;
            }
            cw.flush()?;
        }
    }
    Ok(())
}

/// A verification report: JSON as one object, text formats as a
/// `key value` summary followed by the zero table.
pub fn write_report(w: &mut dyn Write, format: Format, r: &ReportDto) -> Result<()> {
    if format == Format::Json {
        serde_json::to_writer_pretty(&mut *w, r)?;
        writeln!(w)?;
        return Ok(());
    }
    let d = if format == Format::Tsv { '\t' } else { ',' };
    writeln!(w, "name{d}{}", r.name)?;
    writeln!(w, "t_max{d}{}", r.t_max)?;
    writeln!(w, "verdict{d}{}", r.verdict)?;
    writeln!(w, "online_count{d}{}", r.online_count)?;
    writeln!(w, "offline_pairs{d}{}", r.offline_pairs)?;
    writeln!(w, "count{d}{}", r.count.count)?;
    writeln!(w, "residual{d}{}", r.count.residual)?;
    for n in &r.notes {
        writeln!(w, "note{d}{n}")?;
    }
    writeln!(w)?;
    let zeros: Vec<&ZeroRow> = r.online.iter().chain(&r.offline).collect();
    write_rows(w, format, &zeros)
}
