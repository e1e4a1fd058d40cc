//! Report and matrix serialization.
//!
//! CSV reports carry the header `experiment,dim,row,mean,std_error,count,seed`
//! with one data row per cell, RFC 4180 quoting, LF line endings, and floats
//! printed with 6 significant digits. JSON mirrors the report struct
//! verbatim (stable key order, full float precision).

use std::io::Write;

use anyhow::Result;
use cue_core::experiments::ExperimentReport;
use cue_core::spacing::{EigenangleList, SpacingVector};
use cue_core::ComplexMatrix;

use crate::args::Format;

/// Formats with exactly 6 significant digits, positional notation where it
/// fits and scientific otherwise (the CSV float convention).
pub fn fmt_g6(x: f64) -> String {
    if x == 0.0 {
        return "0.00000".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&exp) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn emit_report(report: &ExperimentReport, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            out.write_all(b"\n")?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["experiment", "dim", "row", "mean", "std_error", "count", "seed"])?;
            for cell in &report.cells {
                w.write_record([
                    report.experiment_name.as_str(),
                    cell.col_label.as_str(),
                    cell.row_label.as_str(),
                    &fmt_g6(cell.mean),
                    &fmt_g6(cell.std_error),
                    &cell.count.to_string(),
                    &report.seed.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Matrix dump: `i,j,re,im` rows in CSV, a nested `[[re, im], ...]` array
/// per row in JSON. Entries keep full (round-trip) precision.
pub fn emit_matrix(
    m: &ComplexMatrix,
    dim: usize,
    seed: u64,
    format: Format,
    out: &mut dyn Write,
) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["i", "j", "re", "im"])?;
            for i in 0..dim {
                for j in 0..dim {
                    let z = m.get(i, j);
                    w.write_record([
                        i.to_string(),
                        j.to_string(),
                        z.re.to_string(),
                        z.im.to_string(),
                    ])?;
                }
            }
            w.flush()?;
        }
        Format::Json => {
            let rows: Vec<Vec<[f64; 2]>> = (0..dim)
                .map(|i| (0..dim).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect())
                .collect();
            let doc = serde_json::json!({
                "dim": dim,
                "seed": seed,
                "entries": rows,
            });
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

/// Spacing dump of one matrix: `j,angle,delta` rows (1-based j; index M
/// holds the wrap-around gap, whose "angle" column repeats the largest
/// eigenangle it starts from).
pub fn emit_spacings(
    e: &EigenangleList,
    s: &SpacingVector,
    dim: usize,
    seed: u64,
    format: Format,
    out: &mut dyn Write,
) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["j", "angle", "delta"])?;
            for j in 0..dim {
                w.write_record([
                    (j + 1).to_string(),
                    e.angles()[j].to_string(),
                    s.deltas()[j].to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let doc = serde_json::json!({
                "dim": dim,
                "seed": seed,
                "angles": e.angles(),
                "deltas": s.deltas(),
            });
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}
