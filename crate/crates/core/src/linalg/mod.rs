//! Dense complex linear algebra for square matrices, sized for dim <= 256.
//!
//! All arithmetic is 64-bit floating point. Tolerances follow double
//! precision at these dimensions: 1e-10 for factorization residuals,
//! 1e-8 for eigensolver residuals.

pub mod eig;
pub mod matrix;
pub mod qr;

pub use eig::{unitary_eigenvalues, EigenvalueSet};
pub use matrix::{sample_ginibre, ComplexMatrix};
pub use qr::{determinant, householder_qr, QRFactors};
