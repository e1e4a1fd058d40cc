//! Dispatch from parsed arguments to the experiment runners.

use std::fs::File;
use std::io::{BufWriter, Write};

use anyhow::{Context, Result};
use cue_core::experiments::{
    run_lazy_scan, run_naive_qr_demo, run_point_bias_demo, run_spacing_histogram, run_table1,
    run_table2, run_wrap_constant,
};
use cue_core::haar::haar_for_index;
use cue_core::spacing::{eigenangles, normalized_spacings};

use crate::args::{Command, Common};
use crate::emit;

pub fn run(command: Command, common: &Common, seed: u64) -> Result<()> {
    let mut out = open_output(common)?;
    let n = common.samples;
    let workers = common.workers;
    match command {
        Command::Sample { dim } => {
            let u = haar_for_index(dim, seed, 0)?;
            emit::emit_matrix(&u, dim, seed, common.format, &mut out)?;
        }
        Command::Spacings { dim } => {
            let u = haar_for_index(dim, seed, 0)?;
            let e = eigenangles(&u)?;
            let s = normalized_spacings(&e);
            emit::emit_spacings(&e, &s, dim, seed, common.format, &mut out)?;
        }
        Command::Table1 { dims, indices } => {
            let idx: Vec<_> = indices.iter().map(|i| i.0).collect();
            let report = run_table1(&dims, &idx, n, seed, workers)?;
            emit::emit_report(&report, common.format, &mut out)?;
        }
        Command::Table2 { dims } => {
            let report = run_table2(&dims, n, seed, workers)?;
            emit::emit_report(&report, common.format, &mut out)?;
        }
        Command::WrapConstant { dims } => {
            let report = run_wrap_constant(&dims, n, seed, workers)?;
            emit::emit_report(&report, common.format, &mut out)?;
        }
        Command::LazyScan { dims } => {
            let report = run_lazy_scan(&dims, n, seed, workers)?;
            emit::emit_report(&report, common.format, &mut out)?;
        }
        Command::PointBias { dim } => {
            let report = run_point_bias_demo(dim, n, seed, workers)?;
            emit::emit_report(&report, common.format, &mut out)?;
        }
        Command::NaiveQr { dim, bins } => {
            let report = run_naive_qr_demo(dim, n, bins, seed, workers)?;
            emit::emit_report(&report, common.format, &mut out)?;
        }
        Command::Histogram { dim, bins } => {
            let report = run_spacing_histogram(dim, n, bins, seed, workers)?;
            emit::emit_report(&report, common.format, &mut out)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn open_output(common: &Common) -> Result<Box<dyn Write>> {
    match &common.out {
        None => Ok(Box::new(BufWriter::new(std::io::stdout()))),
        Some(path) => {
            let file = File::create(path)
                .with_context(|| format!("cannot write output file {}", path.display()))?;
            Ok(Box::new(BufWriter::new(file)))
        }
    }
}
