//! Dense square complex matrix, row-major storage.

use num_complex::Complex64;

use crate::error::Error;
use crate::rng::NormalSource;
use crate::Result;

/// Dense square matrix of complex scalars.
///
/// Invariants: `dim >= 1`, `entries.len() == dim * dim`, all entries finite.
/// Construction checks both; values are immutable from the outside after
/// construction and safe to share between threads.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn from_rows(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDim);
        }
        assert_eq!(entries.len(), dim * dim, "entry count must be dim^2");
        let m = Self { dim, entries };
        m.check_finite("from_rows")?;
        Ok(m)
    }

    /// Builds from a function of (row, col).
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDim);
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self::from_rows(dim, entries)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_fn(dim, |i, j| {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn diagonal(diag: &[Complex64]) -> Result<Self> {
        Self::from_fn(diag.len(), |i, j| {
            if i == j {
                diag[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub(crate) fn zeros_unchecked(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.entries[i * self.dim + j] = v;
    }

    #[inline]
    pub(crate) fn row(&self, i: usize) -> &[Complex64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [Complex64] {
        let d = self.dim;
        &mut self.entries[i * d..(i + 1) * d]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub(crate) fn check_finite(&self, context: &'static str) -> Result<()> {
        if self
            .entries
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            Ok(())
        } else {
            Err(Error::NonFinite { context })
        }
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn mul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros_unchecked(n);
        for i in 0..n {
            let a_row = self.row(i);
            let out_row = out.row_mut(i);
            for (k, &aik) in a_row.iter().enumerate() {
                let b_row = rhs.row(k);
                for j in 0..n {
                    out_row[j] += aik * b_row[j];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let n = self.dim;
        let mut out = ComplexMatrix::zeros_unchecked(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Scales column `j` by a scalar, in place.
    pub(crate) fn scale_col(&mut self, j: usize, s: Complex64) {
        let n = self.dim;
        for i in 0..n {
            let v = self.get(i, j) * s;
            self.set(i, j, v);
        }
    }

    /// Right-multiplies by a diagonal matrix (scales column j by `diag[j]`).
    pub fn mul_diag(&self, diag: &[Complex64]) -> ComplexMatrix {
        assert_eq!(diag.len(), self.dim);
        let mut out = self.clone();
        for (j, &d) in diag.iter().enumerate() {
            out.scale_col(j, d);
        }
        out
    }

    /// Scales every entry by a scalar.
    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * s).collect(),
        }
    }

    /// `max |(u^H u - I)[i][j]|` — the unitarity residual.
    pub fn unitarity_error(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                // (u^H u)[i][j] = conj(col_i) . col_j
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += self.get(k, i).conj() * self.get(k, j);
                }
                if i == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    /// Matrix-vector product.
    pub(crate) fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &x)| a * x)
                    .sum::<Complex64>()
            })
            .collect()
    }
}

/// Samples a Ginibre matrix: independent standard complex Gaussian entries
/// (real and imaginary parts each N(0,1), so E|entry|^2 = 2).
///
/// Consumes exactly `2 * dim^2` normal variates from `rng`, filling entries
/// in row-major order, real part before imaginary part.
pub fn sample_ginibre(dim: usize, rng: &mut impl NormalSource) -> Result<ComplexMatrix> {
    if dim == 0 {
        return Err(Error::ZeroDim);
    }
    let mut entries = Vec::with_capacity(dim * dim);
    for _ in 0..dim * dim {
        entries.push(rng.next_complex_gaussian());
    }
    ComplexMatrix::from_rows(dim, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::GaussianStream;

    /// Scripted normal source for exact-value tests.
    pub(crate) struct Scripted(pub Vec<f64>, pub usize);

    impl NormalSource for Scripted {
        fn next_normal(&mut self) -> f64 {
            let v = self.0[self.1];
            self.1 += 1;
            v
        }
    }

    #[test]
    fn ginibre_dim1_takes_real_then_imaginary() {
        let mut rng = Scripted(vec![0.3, -0.7], 0);
        let m = sample_ginibre(1, &mut rng).unwrap();
        assert_eq!(m.get(0, 0), Complex64::new(0.3, -0.7));
    }

    #[test]
    fn ginibre_rejects_dim_zero() {
        let mut rng = GaussianStream::from_seed(0);
        assert_eq!(sample_ginibre(0, &mut rng), Err(Error::ZeroDim));
    }

    #[test]
    fn ginibre_entry_moments_match_the_distribution() {
        // 10^4 matrices at dim 50: the entry mean, entry variance and
        // complex second moment all sit well inside the quoted bands.
        let mut rng = GaussianStream::from_seed(7);
        let n_mat = 10_000;
        let mut re_sum = 0.0;
        let mut re_sum2 = 0.0;
        let mut mod2_sum = 0.0;
        let mut count = 0usize;
        for _ in 0..n_mat {
            let m = sample_ginibre(50, &mut rng).unwrap();
            for &z in m.entries() {
                re_sum += z.re;
                re_sum2 += z.re * z.re;
                mod2_sum += z.norm_sqr();
                count += 1;
            }
        }
        let mean = re_sum / count as f64;
        let var = re_sum2 / count as f64 - mean * mean;
        let mod2 = mod2_sum / count as f64;
        assert!(mean.abs() < 0.01, "Re mean {mean}");
        assert!((var - 1.0).abs() < 0.02, "Re var {var}");
        assert!((mod2 - 2.0).abs() < 0.02, "E|z|^2 {mod2}");
    }

    #[test]
    fn row_major_consumption_order() {
        let mut rng = Scripted(vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0], 0);
        let m = sample_ginibre(2, &mut rng).unwrap();
        assert_eq!(m.get(0, 0), Complex64::new(1.0, 2.0));
        assert_eq!(m.get(0, 1), Complex64::new(3.0, 4.0));
        assert_eq!(m.get(1, 0), Complex64::new(5.0, 6.0));
        assert_eq!(m.get(1, 1), Complex64::new(7.0, 8.0));
    }

    #[test]
    fn unitarity_error_of_identity_is_zero() {
        let id = ComplexMatrix::identity(5).unwrap();
        assert_eq!(id.unitarity_error(), 0.0);
    }

    #[test]
    fn from_rows_rejects_non_finite() {
        let e = ComplexMatrix::from_rows(1, vec![Complex64::new(f64::NAN, 0.0)]);
        assert!(matches!(e, Err(Error::NonFinite { .. })));
    }
}
