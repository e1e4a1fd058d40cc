//! Monte Carlo experiment runners.
//!
//! Each runner draws `n` independent unitary matrices per dimension,
//! measures spacing statistics, and returns an [`ExperimentReport`].
//! Sampling is deterministic in `(seed, dim, matrix index)`; rows of one
//! table share the same matrix stream (the same data set underlies every
//! row of a column), while different dimensions use fresh streams.

mod pool;
mod report;

pub use report::{Cell, ExperimentReport};

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use crate::error::Error;
use crate::haar::{haar_for_index, naive_for_index};
use crate::rng::{SplitMix64, StreamTag};
use crate::spacing::{
    self, lazy_mean, normalized_spacings, select_gap_containing_point, size_biased_mean,
    EigenangleList,
};
use crate::stats::StatAccumulator;
use crate::Result;

/// A row of the fixed-index spacing table: a fixed 1-based index `j`, or a
/// fresh uniformly random index per matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapIndex {
    Fixed(usize),
    Random,
}

impl GapIndex {
    pub fn label(&self) -> String {
        match self {
            GapIndex::Fixed(j) => format!("delta_{j}"),
            GapIndex::Random => "delta_rand".to_string(),
        }
    }
}

/// Source of eigenangle spectra indexed by `(dim, seed, matrix index)`.
/// Production uses the Haar sampler; tests inject synthetic spectra.
pub(crate) trait SpectrumSource: Sync {
    fn angles(&self, dim: usize, seed: u64, index: u64) -> Result<EigenangleList>;
}

pub(crate) struct HaarSpectra;

impl SpectrumSource for HaarSpectra {
    fn angles(&self, dim: usize, seed: u64, index: u64) -> Result<EigenangleList> {
        let u = haar_for_index(dim, seed, index)?;
        spacing::eigenangles_unchecked(&u)
    }
}

fn validate(dims: &[usize], n: u64, workers: usize) -> Result<()> {
    if dims.is_empty() {
        return Err(Error::InvalidConfig("dims must be nonempty".into()));
    }
    if dims.contains(&0) {
        return Err(Error::ZeroDim);
    }
    if n == 0 {
        return Err(Error::InvalidConfig("samples must be >= 1".into()));
    }
    if workers == 0 {
        return Err(Error::InvalidConfig("workers must be >= 1".into()));
    }
    Ok(())
}

fn merge_in_order(chunks: Vec<Vec<StatAccumulator>>) -> Vec<StatAccumulator> {
    let mut iter = chunks.into_iter();
    let mut acc = iter.next().expect("at least one chunk");
    for chunk in iter {
        for (a, b) in acc.iter_mut().zip(chunk) {
            *a = StatAccumulator::merge(*a, b);
        }
    }
    acc
}

fn push_stat_cells(
    cells: &mut Vec<Cell>,
    rows: &[(String, StatAccumulator)],
    col_label: &str,
) {
    for (label, acc) in rows {
        cells.push(Cell {
            row_label: label.clone(),
            col_label: col_label.to_string(),
            mean: acc.mean,
            std_error: acc.std_error(),
            count: acc.count,
        });
    }
}

/// Averages of the fixed-index spacings `delta_j` (and of a randomly
/// indexed spacing) over `n` matrices per dimension.
///
/// All rows of one dimension are measured on the same matrices. The random
/// index for the `delta_rand` row comes from a dedicated substream, so it
/// is independent of the matrix draw but still reproducible.
pub fn run_table1(
    dims: &[usize],
    indices: &[GapIndex],
    n: u64,
    seed: u64,
    workers: usize,
) -> Result<ExperimentReport> {
    validate(dims, n, workers)?;
    if indices.is_empty() {
        return Err(Error::InvalidConfig("indices must be nonempty".into()));
    }
    let min_dim = *dims.iter().min().expect("nonempty");
    for idx in indices {
        if let GapIndex::Fixed(j) = idx {
            if *j == 0 || *j > min_dim {
                return Err(Error::IndexOutOfRange {
                    index: *j,
                    dim: min_dim,
                });
            }
        }
    }
    run_table1_with(&HaarSpectra, dims, indices, n, seed, workers)
}

pub(crate) fn run_table1_with(
    source: &dyn SpectrumSource,
    dims: &[usize],
    indices: &[GapIndex],
    n: u64,
    seed: u64,
    workers: usize,
) -> Result<ExperimentReport> {
    let start = Instant::now();
    let mut cells = Vec::new();
    for &dim in dims {
        let chunks = pool::run_chunks(n, workers, |range| {
            let mut accs = vec![StatAccumulator::new(); indices.len()];
            for i in range {
                let e = source.angles(dim, seed, i)?;
                let s = normalized_spacings(&e);
                for (acc, idx) in accs.iter_mut().zip(indices) {
                    let value = match idx {
                        GapIndex::Fixed(j) => s.deltas()[j - 1],
                        GapIndex::Random => {
                            let mut rng =
                                SplitMix64::substream(seed, dim, i, StreamTag::GapIndex);
                            spacing::select_gap_uniform_index(&s, &mut rng)
                        }
                    };
                    acc.push(value);
                }
            }
            Ok(accs)
        })?;
        let merged = merge_in_order(chunks);
        let rows: Vec<(String, StatAccumulator)> = indices
            .iter()
            .map(|idx| idx.label())
            .zip(merged)
            .collect();
        push_stat_cells(&mut cells, &rows, &dim.to_string());
    }
    Ok(ExperimentReport {
        experiment_name: "table1".into(),
        dims: dims.to_vec(),
        samples_per_cell: n,
        seed,
        cells,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Per dimension: the pooled mean of `delta_1 ... delta_{M-1}` (the "lazy"
/// average that drops the wrap-around gap) and the mean of the wrap-around
/// spacing `delta_M`. The lazy cell's count is `(M-1) * n` individual
/// spacings.
pub fn run_table2(dims: &[usize], n: u64, seed: u64, workers: usize) -> Result<ExperimentReport> {
    validate(dims, n, workers)?;
    if let Some(&d) = dims.iter().find(|&&d| d < 2) {
        return Err(Error::DimTooSmall {
            dim: d,
            min: 2,
            what: "lazy average",
        });
    }
    run_table2_with(&HaarSpectra, dims, n, seed, workers)
}

pub(crate) fn run_table2_with(
    source: &dyn SpectrumSource,
    dims: &[usize],
    n: u64,
    seed: u64,
    workers: usize,
) -> Result<ExperimentReport> {
    let start = Instant::now();
    let mut cells = Vec::new();
    for &dim in dims {
        let chunks = pool::run_chunks(n, workers, |range| {
            let mut lazy_pool = StatAccumulator::new();
            let mut wrap = StatAccumulator::new();
            for i in range {
                let e = source.angles(dim, seed, i)?;
                let s = normalized_spacings(&e);
                let per_matrix_lazy = lazy_mean(&s)?;
                // per-matrix identity: (M-1) * lazy + delta_M = M
                let m = dim as f64;
                debug_assert!(s.deltas().len() == dim);
                assert!(
                    ((m - 1.0) * per_matrix_lazy + s.wrap() - m).abs() <= 1e-9,
                    "lazy identity violated at index {i}"
                );
                for &d in &s.deltas()[..dim - 1] {
                    lazy_pool.push(d);
                }
                wrap.push(s.wrap());
            }
            Ok(vec![lazy_pool, wrap])
        })?;
        let merged = merge_in_order(chunks);
        let rows = vec![
            ("lazy_mean".to_string(), merged[0]),
            ("wrap_mean".to_string(), merged[1]),
        ];
        push_stat_cells(&mut cells, &rows, &dim.to_string());
    }
    Ok(ExperimentReport {
        experiment_name: "table2".into(),
        dims: dims.to_vec(),
        samples_per_cell: n,
        seed,
        cells,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Two estimators of the same constant per dimension: the mean wrap-around
/// spacing and the ensemble mean of the per-matrix squared-spacing mean.
/// Both approach the large-M mean square of the nearest neighbor spacing,
/// about 1.180.
pub fn run_wrap_constant(
    dims: &[usize],
    n: u64,
    seed: u64,
    workers: usize,
) -> Result<ExperimentReport> {
    validate(dims, n, workers)?;
    run_wrap_constant_with(&HaarSpectra, dims, n, seed, workers)
}

pub(crate) fn run_wrap_constant_with(
    source: &dyn SpectrumSource,
    dims: &[usize],
    n: u64,
    seed: u64,
    workers: usize,
) -> Result<ExperimentReport> {
    let start = Instant::now();
    let mut cells = Vec::new();
    for &dim in dims {
        let chunks = pool::run_chunks(n, workers, |range| {
            let mut wrap = StatAccumulator::new();
            let mut sized = StatAccumulator::new();
            for i in range {
                let e = source.angles(dim, seed, i)?;
                let s = normalized_spacings(&e);
                wrap.push(s.wrap());
                sized.push(size_biased_mean(&s));
            }
            Ok(vec![wrap, sized])
        })?;
        let merged = merge_in_order(chunks);
        let rows = vec![
            ("wrap_mean".to_string(), merged[0]),
            ("size_biased_mean".to_string(), merged[1]),
        ];
        push_stat_cells(&mut cells, &rows, &dim.to_string());
    }
    Ok(ExperimentReport {
        experiment_name: "wrap-constant".into(),
        dims: dims.to_vec(),
        samples_per_cell: n,
        seed,
        cells,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Lazy-average deficit versus dimension, with an unweighted least-squares
/// fit of `mean_M = 1 - c / M`. With a single dimension the fit reduces to
/// `c = M (1 - mean)`.
pub fn run_lazy_scan(dims: &[usize], n: u64, seed: u64, workers: usize) -> Result<ExperimentReport> {
    validate(dims, n, workers)?;
    if let Some(&d) = dims.iter().find(|&&d| d < 2) {
        return Err(Error::DimTooSmall {
            dim: d,
            min: 2,
            what: "lazy average",
        });
    }
    let table2 = run_table2_with(&HaarSpectra, dims, n, seed, workers)?;
    let start = Instant::now();
    let mut cells = Vec::new();
    let mut num = 0.0;
    let mut den = 0.0;
    let mut var_num = 0.0;
    for &dim in dims {
        let col = dim.to_string();
        let lazy = table2.cell("lazy_mean", &col).expect("row exists");
        cells.push(lazy.clone());
        let inv_m = 1.0 / dim as f64;
        num += (1.0 - lazy.mean) * inv_m;
        den += inv_m * inv_m;
        var_num += inv_m * inv_m * lazy.std_error * lazy.std_error;
    }
    let fit_c = num / den;
    let fit_se = var_num.sqrt() / den;
    cells.push(Cell {
        row_label: "fit_c".into(),
        col_label: "all".into(),
        mean: fit_c,
        std_error: fit_se,
        count: dims.len() as u64,
    });
    Ok(ExperimentReport {
        experiment_name: "lazy-scan".into(),
        dims: dims.to_vec(),
        samples_per_cell: n,
        seed,
        cells,
        wall_time_seconds: table2.wall_time_seconds + start.elapsed().as_secs_f64(),
    })
}

/// Three gap-selection rules on the same matrices: a uniformly random
/// index (unbiased, mean 1), the gap containing a fresh uniform point on
/// the circle (size-biased, mean about 1.18), and the gap containing the
/// fixed point -pi (the wrap-around gap — equally size-biased, because the
/// ensemble is rotation invariant).
pub fn run_point_bias_demo(
    dim: usize,
    n: u64,
    seed: u64,
    workers: usize,
) -> Result<ExperimentReport> {
    validate(&[dim], n, workers)?;
    if dim < 2 {
        return Err(Error::DimTooSmall {
            dim,
            min: 2,
            what: "point-bias demo",
        });
    }
    let start = Instant::now();
    let chunks = pool::run_chunks(n, workers, |range| {
        let mut by_index = StatAccumulator::new();
        let mut by_point = StatAccumulator::new();
        let mut by_fixed = StatAccumulator::new();
        for i in range {
            let e = HaarSpectra.angles(dim, seed, i)?;
            let s = normalized_spacings(&e);
            let mut idx_rng = SplitMix64::substream(seed, dim, i, StreamTag::GapIndex);
            by_index.push(spacing::select_gap_uniform_index(&s, &mut idx_rng));
            let mut pt_rng = SplitMix64::substream(seed, dim, i, StreamTag::CirclePoint);
            let point = -PI + TAU * pt_rng.next_f64();
            by_point.push(select_gap_containing_point(&e, point));
            by_fixed.push(select_gap_containing_point(&e, -PI));
        }
        Ok(vec![by_index, by_point, by_fixed])
    })?;
    let merged = merge_in_order(chunks);
    let mut cells = Vec::new();
    let rows = vec![
        ("uniform_index".to_string(), merged[0]),
        ("uniform_point".to_string(), merged[1]),
        ("fixed_point_wrap".to_string(), merged[2]),
    ];
    push_stat_cells(&mut cells, &rows, &dim.to_string());
    Ok(ExperimentReport {
        experiment_name: "point-bias".into(),
        dims: vec![dim],
        samples_per_cell: n,
        seed,
        cells,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Eigenangle histograms for the corrected and uncorrected samplers, with
/// per-bin z-scores against the uniform expectation `n * dim / bins`.
///
/// Cell layout, per sampler `s` in `{corrected, naive}` and bin `b`:
/// row `s_bin_bb` holds the observed count (as `mean`) with the binomial
/// null sigma in `std_error`; row `s_z_bb` holds the z-score with
/// `std_error = 1`. Bins partition `[-pi, pi)` uniformly; with a single
/// bin the sigma is zero and z is defined as 0.
pub fn run_naive_qr_demo(
    dim: usize,
    n: u64,
    bins: usize,
    seed: u64,
    workers: usize,
) -> Result<ExperimentReport> {
    validate(&[dim], n, workers)?;
    if bins == 0 {
        return Err(Error::InvalidConfig("bins must be >= 1".into()));
    }
    let start = Instant::now();
    let mut cells = Vec::new();
    for sampler in ["corrected", "naive"] {
        let chunks = pool::run_chunks(n, workers, |range| {
            let mut counts = vec![0u64; bins];
            for i in range {
                let u = if sampler == "corrected" {
                    haar_for_index(dim, seed, i)?
                } else {
                    naive_for_index(dim, seed, i)?
                };
                let e = spacing::eigenangles_unchecked(&u)?;
                for &a in e.angles() {
                    let frac = (a + PI) / TAU;
                    let b = ((frac * bins as f64) as usize).min(bins - 1);
                    counts[b] += 1;
                }
            }
            Ok(counts)
        })?;
        let mut counts = vec![0u64; bins];
        for chunk in chunks {
            for (total, c) in counts.iter_mut().zip(chunk) {
                *total += c;
            }
        }
        let total = n as f64 * dim as f64;
        let p = 1.0 / bins as f64;
        let expected = total * p;
        let sigma = (total * p * (1.0 - p)).sqrt();
        for (b, &count) in counts.iter().enumerate() {
            let z = if sigma == 0.0 {
                0.0
            } else {
                (count as f64 - expected) / sigma
            };
            cells.push(Cell {
                row_label: format!("{sampler}_bin_{b:02}"),
                col_label: dim.to_string(),
                mean: count as f64,
                std_error: sigma,
                count,
            });
            cells.push(Cell {
                row_label: format!("{sampler}_z_{b:02}"),
                col_label: dim.to_string(),
                mean: z,
                std_error: 1.0,
                count,
            });
        }
    }
    Ok(ExperimentReport {
        experiment_name: "naive-qr".into(),
        dims: vec![dim],
        samples_per_cell: n,
        seed,
        cells,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Upper edge of the pooled spacing histogram; spacings are clamped into
/// the top bin so every spacing lands in exactly one bin.
pub const SPACING_HISTOGRAM_MAX: f64 = 5.0;

/// Pooled histogram of all normalized spacings `delta_1 ... delta_M` over
/// `n` matrices — plot-ready data for the nearest-neighbor spacing
/// distribution. Bins partition `[0, SPACING_HISTOGRAM_MAX)`; `std_error`
/// is `sqrt(count)`.
pub fn run_spacing_histogram(
    dim: usize,
    n: u64,
    bins: usize,
    seed: u64,
    workers: usize,
) -> Result<ExperimentReport> {
    validate(&[dim], n, workers)?;
    if bins == 0 {
        return Err(Error::InvalidConfig("bins must be >= 1".into()));
    }
    let start = Instant::now();
    let width = SPACING_HISTOGRAM_MAX / bins as f64;
    let chunks = pool::run_chunks(n, workers, |range| {
        let mut counts = vec![0u64; bins];
        for i in range {
            let e = HaarSpectra.angles(dim, seed, i)?;
            let s = normalized_spacings(&e);
            for &d in s.deltas() {
                let b = ((d / width) as usize).min(bins - 1);
                counts[b] += 1;
            }
        }
        Ok(counts)
    })?;
    let mut counts = vec![0u64; bins];
    for chunk in chunks {
        for (total, c) in counts.iter_mut().zip(chunk) {
            *total += c;
        }
    }
    let mut cells = Vec::new();
    for (b, &count) in counts.iter().enumerate() {
        let lo = b as f64 * width;
        let hi = lo + width;
        cells.push(Cell {
            row_label: format!("delta[{lo:.3},{hi:.3})"),
            col_label: dim.to_string(),
            mean: count as f64,
            std_error: (count as f64).sqrt(),
            count,
        });
    }
    Ok(ExperimentReport {
        experiment_name: "histogram".into(),
        dims: vec![dim],
        samples_per_cell: n,
        seed,
        cells,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    })
}
