//! Error type shared by the linear algebra and experiment layers.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Matrix dimensions must be at least 1.
    #[error("dim must be >= 1")]
    ZeroDim,

    /// An input matrix contains NaN or infinite components.
    #[error("{context}: matrix contains non-finite entries")]
    NonFinite { context: &'static str },

    /// A QR factorization produced a (numerically) zero diagonal entry,
    /// so the phase correction is undefined. For Ginibre inputs this is a
    /// probability-zero event and signals an invalid draw.
    #[error("degenerate factorization: |r[{index}][{index}]| is numerically zero")]
    DegenerateFactorization { index: usize },

    /// Input failed the unitarity precondition.
    #[error("input is not unitary: max |u^H u - I| = {residual:.3e} exceeds {tolerance:.1e}")]
    NotUnitary { residual: f64, tolerance: f64 },

    /// The shifted QR iteration hit its iteration cap before deflating
    /// every eigenvalue.
    #[error("eigensolver did not converge within {iterations} iterations ({remaining} eigenvalues left)")]
    NonConvergence { iterations: usize, remaining: usize },

    /// A fixed spacing index was requested beyond the matrix dimension.
    #[error("spacing index {index} out of range for dim {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    /// Operation requires a larger dimension (e.g. the lazy mean needs M >= 2).
    #[error("dim {dim} too small: {what} requires dim >= {min}")]
    DimTooSmall {
        dim: usize,
        min: usize,
        what: &'static str,
    },

    /// Invalid experiment configuration (empty dim list, zero samples, ...).
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
