//! Eigenangles and normalized neighbor spacings.
//!
//! For a unitary matrix with eigenvalues `e^{i theta_1}, ..., e^{i theta_M}`
//! and sorted angles `theta_1 <= ... <= theta_M` in `[-pi, pi)`, the
//! normalized spacings are `delta_m = (M / 2 pi) (theta_{m+1} - theta_m)`
//! with `theta_{M+1} = theta_1 + 2 pi`, so `delta_M` is the wrap-around gap
//! crossing the branch cut at -pi. The spacings sum to `M` by construction.

use std::f64::consts::{PI, TAU};

use crate::error::Error;
use crate::linalg::eig::{eigenvalues_unchecked, unitary_eigenvalues};
use crate::linalg::matrix::ComplexMatrix;
use crate::rng::SplitMix64;
use crate::Result;

/// Sorted eigenangles in `[-pi, pi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenangleList {
    dim: usize,
    angles: Vec<f64>,
}

impl EigenangleList {
    /// Wraps, maps `+pi` to `-pi`, and sorts.
    pub fn from_angles(mut angles: Vec<f64>) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::ZeroDim);
        }
        for a in &mut angles {
            if *a >= PI {
                *a -= TAU;
            } else if *a < -PI {
                *a += TAU;
            }
        }
        angles.sort_by(f64::total_cmp);
        Ok(Self {
            dim: angles.len(),
            angles,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }
}

/// Normalized spacings `delta_1 ... delta_M` (index `M-1` holds the
/// wrap-around gap). Non-negative, summing to `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacingVector {
    dim: usize,
    deltas: Vec<f64>,
}

impl SpacingVector {
    /// Wraps a raw spacing vector; used by tests and synthetic inputs.
    pub fn from_deltas(deltas: Vec<f64>) -> Result<Self> {
        if deltas.is_empty() {
            return Err(Error::ZeroDim);
        }
        let m = deltas.len() as f64;
        let sum: f64 = deltas.iter().sum();
        if deltas.iter().any(|&d| d < 0.0) || (sum - m).abs() > 1e-9 * m {
            return Err(Error::InvalidConfig(format!(
                "spacings must be non-negative and sum to M (sum = {sum})"
            )));
        }
        Ok(Self {
            dim: deltas.len(),
            deltas,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    /// The wrap-around spacing `delta_M`.
    pub fn wrap(&self) -> f64 {
        self.deltas[self.dim - 1]
    }
}

/// Sorted eigenangles of a unitary matrix (checks the unitarity
/// precondition via the eigensolver).
pub fn eigenangles(u: &ComplexMatrix) -> Result<EigenangleList> {
    let e = unitary_eigenvalues(u)?;
    EigenangleList::from_angles(e.values.iter().map(|l| l.arg()).collect())
}

/// Hot-loop variant for matrices that are unitary by construction
/// (sampler output): identical angles, no unitarity re-check, no residual
/// bookkeeping.
pub(crate) fn eigenangles_unchecked(u: &ComplexMatrix) -> Result<EigenangleList> {
    let values = eigenvalues_unchecked(u)?;
    EigenangleList::from_angles(values.iter().map(|l| l.arg()).collect())
}

/// Normalized neighbor spacings including the wrap-around gap.
pub fn normalized_spacings(e: &EigenangleList) -> SpacingVector {
    let m = e.dim;
    let scale = m as f64 / TAU;
    let a = &e.angles;
    let mut deltas = Vec::with_capacity(m);
    for i in 0..m - 1 {
        deltas.push(scale * (a[i + 1] - a[i]));
    }
    deltas.push(scale * (a[0] + TAU - a[m - 1]));
    SpacingVector { dim: m, deltas }
}

/// A spacing chosen by uniform random index — the unbiased selection whose
/// per-matrix expectation is exactly `sum / M = 1`.
pub fn select_gap_uniform_index(s: &SpacingVector, rng: &mut SplitMix64) -> f64 {
    s.deltas[rng.next_below(s.dim)]
}

/// The normalized size of the circular gap containing `point`.
///
/// Selection probability of gap `j` is proportional to its length, which
/// is the size bias: the expectation over a uniform point equals the mean
/// of the squared spacings, not 1. A point equal to an eigenangle belongs
/// to the gap whose left endpoint it is. The wrap-around gap owns every
/// point below the smallest angle or at/above the largest, in particular
/// `-pi` whenever all angles lie strictly inside `(-pi, pi)`.
pub fn select_gap_containing_point(e: &EigenangleList, point: f64) -> f64 {
    let s = normalized_spacings(e);
    // number of angles <= point
    let c = e.angles.partition_point(|&a| a <= point);
    if c == 0 {
        return s.wrap();
    }
    // duplicates of `point` all have zero gaps except the last one,
    // so "largest index with angle <= point" is the deterministic choice
    s.deltas[c - 1]
}

/// Per-matrix expectation of [`select_gap_containing_point`] under a
/// uniform point: the mean of the squared spacings.
pub fn size_biased_mean(s: &SpacingVector) -> f64 {
    s.deltas.iter().map(|d| d * d).sum::<f64>() / s.dim as f64
}

/// Mean of `delta_1 ... delta_{M-1}` — everything except the wrap-around
/// gap. Requires `M >= 2`.
pub fn lazy_mean(s: &SpacingVector) -> Result<f64> {
    if s.dim < 2 {
        return Err(Error::DimTooSmall {
            dim: s.dim,
            min: 2,
            what: "lazy mean",
        });
    }
    let sum: f64 = s.deltas[..s.dim - 1].iter().sum();
    Ok(sum / (s.dim - 1) as f64)
}
