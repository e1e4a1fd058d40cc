//! Eigenvalues of unitary matrices: Hessenberg reduction followed by
//! single-shift QR iteration with deflation.
//!
//! The iteration is general-purpose dense complex QR, but the public entry
//! point insists on a unitary input because everything downstream (angle
//! statistics) assumes eigenvalues on the unit circle.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::Error;
use crate::Result;

/// Unitarity tolerance for the eigensolver precondition.
pub const UNITARITY_TOL: f64 = 1e-8;
/// Subdiagonal entries below `DEFLATION_FACTOR * max|H|` are flushed to zero.
const DEFLATION_FACTOR: f64 = 1e-14;
/// Total QR sweeps allowed, per unit of dimension.
const ITERATIONS_PER_DIM: usize = 100;
/// Sweeps without a deflation before an exceptional shift is tried.
const EXCEPTIONAL_EVERY: usize = 12;

/// Eigenvalues of a unitary matrix, projected to the unit circle, together
/// with the max-norm residual `max_i |(u v - lambda v)_i|` of each
/// eigenpair (computed with unit-2-norm `v` before projection).
#[derive(Debug, Clone)]
pub struct EigenvalueSet {
    pub values: Vec<Complex64>,
    pub residuals: Vec<f64>,
}

/// Computes all eigenvalues of a unitary `u` with per-eigenpair residuals.
///
/// Fails if `u` is not unitary within [`UNITARITY_TOL`], or if the QR
/// iteration exhausts its iteration cap. Eigenvalues are projected onto
/// the unit circle (`lambda / |lambda|`) after the residual check.
pub fn unitary_eigenvalues(u: &ComplexMatrix) -> Result<EigenvalueSet> {
    u.check_finite("unitary_eigenvalues")?;
    let residual = u.unitarity_error();
    if residual > UNITARITY_TOL {
        return Err(Error::NotUnitary {
            residual,
            tolerance: UNITARITY_TOL,
        });
    }

    let n = u.dim();
    let (mut t, mut z) = hessenberg(u, true);
    qr_iterate(&mut t, z.as_mut())?;
    let z = z.expect("accumulated");

    let raw: Vec<Complex64> = (0..n).map(|i| t.get(i, i)).collect();
    let mut residuals = Vec::with_capacity(n);
    for (i, &lambda) in raw.iter().enumerate() {
        let v = eigenvector(&t, &z, i);
        let uv = u.mul_vec(&v);
        let res = uv
            .iter()
            .zip(&v)
            .map(|(&a, &b)| (a - lambda * b).norm())
            .fold(0.0, f64::max);
        residuals.push(res);
    }
    let values = raw
        .iter()
        .map(|&l| {
            let m = l.norm();
            if m == 0.0 {
                l
            } else {
                l / m
            }
        })
        .collect();
    Ok(EigenvalueSet { values, residuals })
}

/// Eigenvalues only, without the unitarity check, Schur vectors, residuals
/// or circle projection. Same iteration as [`unitary_eigenvalues`], so the
/// values agree bitwise; intended for the Monte Carlo hot loop where the
/// input comes straight from a sampler that is unitary by construction.
pub(crate) fn eigenvalues_unchecked(u: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let (mut t, _) = hessenberg(u, false);
    qr_iterate(&mut t, None)?;
    Ok((0..u.dim()).map(|i| t.get(i, i)).collect())
}

/// Same as [`eigenvalues_unchecked`] but kept internal to the crate's tests:
/// exposes pre-projection values for modulus checks.
#[cfg(test)]
pub(crate) fn raw_eigenvalues_for_tests(u: &ComplexMatrix) -> Result<Vec<Complex64>> {
    eigenvalues_unchecked(u)
}

/// Householder reduction to upper Hessenberg form. Returns `(h, q)` with
/// `q^H a q = h` when `accumulate` is set.
fn hessenberg(a: &ComplexMatrix, accumulate: bool) -> (ComplexMatrix, Option<ComplexMatrix>) {
    let n = a.dim();
    let mut h = a.clone();
    let mut q = if accumulate {
        Some(ComplexMatrix::identity(n).expect("dim >= 1"))
    } else {
        None
    };
    if n <= 2 {
        return (h, q);
    }
    let mut v = vec![Complex64::new(0.0, 0.0); n];

    for k in 0..n - 2 {
        let tail_norm2: f64 = (k + 2..n).map(|i| h.get(i, k).norm_sqr()).sum();
        if tail_norm2 == 0.0 {
            continue;
        }
        let alpha = h.get(k + 1, k);
        let xnorm = (alpha.norm_sqr() + tail_norm2).sqrt();
        let phase = if alpha.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            alpha / alpha.norm()
        };
        let beta = -phase * xnorm;
        v[k + 1] = alpha - beta;
        for i in k + 2..n {
            v[i] = h.get(i, k);
        }
        let vnorm2 = v[k + 1].norm_sqr() + tail_norm2;
        let scale = 2.0 / vnorm2;

        h.set(k + 1, k, beta);
        for i in k + 2..n {
            h.set(i, k, Complex64::new(0.0, 0.0));
        }
        // Left: rows k+1.. of columns k+1..
        for j in k + 1..n {
            let mut w = Complex64::new(0.0, 0.0);
            for i in k + 1..n {
                w += v[i].conj() * h.get(i, j);
            }
            w *= scale;
            for i in k + 1..n {
                let new = h.get(i, j) - w * v[i];
                h.set(i, j, new);
            }
        }
        // Right: all rows, columns k+1..
        for i in 0..n {
            let row = h.row_mut(i);
            let mut w = Complex64::new(0.0, 0.0);
            for (x, vv) in row[k + 1..n].iter().zip(&v[k + 1..n]) {
                w += x * vv;
            }
            w *= scale;
            for (x, vv) in row[k + 1..n].iter_mut().zip(&v[k + 1..n]) {
                *x -= w * vv.conj();
            }
        }
        if let Some(q) = q.as_mut() {
            for i in 0..n {
                let row = q.row_mut(i);
                let mut w = Complex64::new(0.0, 0.0);
                for (x, vv) in row[k + 1..n].iter().zip(&v[k + 1..n]) {
                    w += x * vv;
                }
                w *= scale;
                for (x, vv) in row[k + 1..n].iter_mut().zip(&v[k + 1..n]) {
                    *x -= w * vv.conj();
                }
            }
        }
    }
    (h, q)
}

/// Givens rotation `[c s; -conj(s) c]` with real `c` mapping `(a, b)` to
/// `(r, 0)`.
#[inline]
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64, Complex64) {
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0), a);
    }
    let an = a.norm();
    if an == 0.0 {
        return (0.0, b.conj() / bn, Complex64::new(bn, 0.0));
    }
    let norm = (an * an + bn * bn).sqrt();
    let alpha = a / an;
    let c = an / norm;
    let s = alpha * b.conj() / norm;
    (c, s, alpha * norm)
}

/// Single-shift QR iteration with deflation, on an upper Hessenberg matrix.
/// On success `h` is upper triangular with eigenvalues on the diagonal.
fn qr_iterate(h: &mut ComplexMatrix, mut z: Option<&mut ComplexMatrix>) -> Result<()> {
    let n = h.dim();
    if n == 1 {
        return Ok(());
    }
    let hmax = h.max_norm();
    if hmax == 0.0 {
        return Ok(());
    }
    let tol = DEFLATION_FACTOR * hmax;
    let cap = ITERATIONS_PER_DIM * n;

    let mut hi = n - 1;
    let mut iterations = 0usize;
    let mut since_deflation = 0usize;
    let mut cs: Vec<(f64, Complex64)> = vec![(0.0, Complex64::new(0.0, 0.0)); n];

    'outer: while hi > 0 {
        // flush converged subdiagonals at the active corner
        while hi > 0 {
            if h.get(hi, hi - 1).norm() <= tol {
                h.set(hi, hi - 1, Complex64::new(0.0, 0.0));
                hi -= 1;
                since_deflation = 0;
            } else {
                break;
            }
        }
        if hi == 0 {
            break;
        }
        // find the start of the active block
        let mut lo = hi;
        while lo > 0 && h.get(lo, lo - 1).norm() > tol {
            lo -= 1;
        }
        if lo > 0 {
            h.set(lo, lo - 1, Complex64::new(0.0, 0.0));
        }

        if iterations >= cap {
            return Err(Error::NonConvergence {
                iterations: cap,
                remaining: hi + 1,
            });
        }
        iterations += 1;
        since_deflation += 1;

        // Wilkinson shift from the trailing 2x2, closest root to h[hi][hi];
        // exceptional shift on stagnation.
        let shift = if since_deflation % EXCEPTIONAL_EVERY == 0 {
            h.get(hi, hi) + Complex64::new(0.75 * h.get(hi, hi - 1).norm(), 0.0)
        } else {
            let a = h.get(hi - 1, hi - 1);
            let b = h.get(hi - 1, hi);
            let c = h.get(hi, hi - 1);
            let d = h.get(hi, hi);
            let tr_half = (a + d) * 0.5;
            let disc = ((a - d) * (a - d) * 0.25 + b * c).sqrt();
            let l1 = tr_half + disc;
            let l2 = tr_half - disc;
            if (l1 - d).norm() <= (l2 - d).norm() {
                l1
            } else {
                l2
            }
        };

        // Explicit shifted QR step on [lo..=hi]:
        //   (H - shift I) = Q R via Givens, then H := R Q + shift I.
        for k in lo..=hi {
            let d = h.get(k, k) - shift;
            h.set(k, k, d);
        }
        for k in lo..hi {
            let (c, s, r) = givens(h.get(k, k), h.get(k + 1, k));
            cs[k] = (c, s);
            h.set(k, k, r);
            h.set(k + 1, k, Complex64::new(0.0, 0.0));
            for j in k + 1..=hi {
                let x = h.get(k, j);
                let y = h.get(k + 1, j);
                h.set(k, j, c * x + s * y);
                h.set(k + 1, j, -s.conj() * x + c * y);
            }
        }
        for k in lo..hi {
            let (c, s) = cs[k];
            // right-apply G^H to columns k, k+1
            for i in lo..=(k + 1).min(hi) {
                let x = h.get(i, k);
                let y = h.get(i, k + 1);
                h.set(i, k, c * x + y * s.conj());
                h.set(i, k + 1, c * y - s * x);
            }
            if let Some(z) = z.as_deref_mut() {
                let zn = z.dim();
                for i in 0..zn {
                    let x = z.get(i, k);
                    let y = z.get(i, k + 1);
                    z.set(i, k, c * x + y * s.conj());
                    z.set(i, k + 1, c * y - s * x);
                }
            }
        }
        for k in lo..=hi {
            let d = h.get(k, k) + shift;
            h.set(k, k, d);
        }
        continue 'outer;
    }
    Ok(())
}

/// Eigenvector of the upper triangular `t` for `lambda = t[i][i]`, mapped
/// back through the accumulated transform `z` and normalized to unit
/// 2-norm.
fn eigenvector(t: &ComplexMatrix, z: &ComplexMatrix, i: usize) -> Vec<Complex64> {
    let n = t.dim();
    let lambda = t.get(i, i);
    let smin = f64::EPSILON * lambda.norm().max(1.0);
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    y[i] = Complex64::new(1.0, 0.0);
    for j in (0..i).rev() {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in j + 1..=i {
            acc += t.get(j, k) * y[k];
        }
        let mut den = t.get(j, j) - lambda;
        if den.norm() < smin {
            den = Complex64::new(smin, 0.0);
        }
        y[j] = -acc / den;
    }
    let mut v = z.mul_vec(&y);
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for c in &mut v {
            *c /= norm;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::haar::haar_for_index;
    use crate::linalg::determinant;

    fn sorted_angles(values: &[Complex64]) -> Vec<f64> {
        let mut a: Vec<f64> = values.iter().map(|l| l.arg()).collect();
        a.sort_by(f64::total_cmp);
        a
    }

    #[test]
    fn identity_has_all_ones() {
        let u = ComplexMatrix::identity(4).unwrap();
        let e = unitary_eigenvalues(&u).unwrap();
        assert_eq!(e.values.len(), 4);
        for &l in &e.values {
            assert!((l - Complex64::new(1.0, 0.0)).norm() <= 1e-12);
        }
        for &r in &e.residuals {
            assert!(r <= 1e-12);
        }
    }

    #[test]
    fn diagonal_unitary_is_recovered_exactly() {
        let l0 = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        let l1 = Complex64::from_polar(1.0, -std::f64::consts::PI / 4.0);
        let u = ComplexMatrix::diagonal(&[l0, l1]).unwrap();
        let e = unitary_eigenvalues(&u).unwrap();
        let mut got = e.values.clone();
        got.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
        assert!((got[0] - l1).norm() <= 1e-12);
        assert!((got[1] - l0).norm() <= 1e-12);
    }

    #[test]
    fn haar_sample_dim14_meets_residual_and_modulus_bounds() {
        let u = haar_for_index(14, 0, 0).unwrap();
        let e = unitary_eigenvalues(&u).unwrap();
        for &r in &e.residuals {
            assert!(r <= 1e-8 * 14.0, "residual {r}");
        }
        let raw = raw_eigenvalues_for_tests(&u).unwrap();
        for &l in &raw {
            assert!((l.norm() - 1.0).abs() <= 1e-8, "modulus {}", l.norm());
        }
        // projection leaves exactly unit moduli
        for &l in &e.values {
            assert!((l.norm() - 1.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn rejects_non_unitary_input() {
        let a = ComplexMatrix::diagonal(&[Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)])
            .unwrap();
        assert!(matches!(
            unitary_eigenvalues(&a),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn product_of_eigenvalues_matches_qr_determinant() {
        for (dim, seed) in [(2usize, 1u64), (8, 2), (23, 3), (64, 4)] {
            let u = haar_for_index(dim, seed, 0).unwrap();
            let e = unitary_eigenvalues(&u).unwrap();
            let prod: Complex64 = e.values.iter().product();
            let det = determinant(&u).unwrap();
            assert!(
                (prod - det).norm() <= 1e-6 * det.norm(),
                "dim {dim}: |prod - det| = {}",
                (prod - det).norm()
            );
        }
    }

    #[test]
    fn eigenvalue_multiset_invariant_under_permutation_conjugation() {
        let dim = 9;
        let u = haar_for_index(dim, 77, 0).unwrap();
        // fixed permutation keeps the test deterministic
        let perm = [3usize, 7, 1, 0, 8, 5, 2, 6, 4];
        let p = ComplexMatrix::from_fn(dim, |i, j| {
            if perm[j] == i {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .unwrap();
        let conj = p.adjoint().mul(&u).mul(&p);
        let a = sorted_angles(&unitary_eigenvalues(&u).unwrap().values);
        let b = sorted_angles(&unitary_eigenvalues(&conj).unwrap().values);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() <= 1e-8, "{x} vs {y}");
        }
    }

    #[test]
    fn unchecked_path_agrees_with_checked_path_bitwise() {
        let u = haar_for_index(17, 5, 0).unwrap();
        let full = unitary_eigenvalues(&u).unwrap();
        let fast = eigenvalues_unchecked(&u).unwrap();
        for (f, l) in fast.iter().zip(&full.values) {
            let projected = *f / f.norm();
            assert_eq!(projected, *l);
        }
    }
}
