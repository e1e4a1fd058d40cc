//! Haar sampling on the unitary group and eigenangle spacing statistics.
//!
//! The crate has three layers:
//!
//! * [`linalg`] — dense complex linear algebra built from first principles:
//!   Ginibre sampling, Householder QR, and a Hessenberg + shifted-QR
//!   eigensolver for unitary matrices.
//! * [`haar`] and [`spacing`] — turning Ginibre + QR into Haar-distributed
//!   unitaries via the diagonal phase correction, extracting sorted
//!   eigenangles, and computing normalized neighbor spacings including the
//!   wrap-around gap.
//! * [`experiments`] — Monte Carlo runners that measure the statistics of
//!   fixed-index spacings, the "lazy" average that drops the wrap-around
//!   gap, the size-biased gap selected by a uniform point on the circle,
//!   and the eigenangle density of an uncorrected QR sampler.
//!
//! Everything is deterministic in `(dimension, seed)`: random streams are
//! derived statelessly per matrix index (see [`rng`]), so results never
//! depend on worker count or scheduling.

pub mod error;
pub mod experiments;
pub mod haar;
pub mod linalg;
pub mod rng;
pub mod spacing;
pub mod stats;

pub use error::Error;
pub use linalg::matrix::ComplexMatrix;
pub use num_complex::Complex64;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
