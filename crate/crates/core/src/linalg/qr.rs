//! Householder QR factorization for square complex matrices.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::Result;

/// QR factors with `a = q * r`, `q` unitary, `r` upper triangular.
///
/// No convention is imposed on the phases of `r`'s diagonal: they fall out
/// of the reflector construction. Making those phases canonical is the
/// sampler's job, not the factorization's.
#[derive(Debug, Clone)]
pub struct QRFactors {
    pub q: ComplexMatrix,
    pub r: ComplexMatrix,
    /// Number of genuine reflections mod 2; det(q) = (-1)^parity.
    reflection_parity: bool,
}

impl QRFactors {
    /// `det(q)`, known exactly from the reflection count.
    pub fn det_q(&self) -> f64 {
        if self.reflection_parity {
            -1.0
        } else {
            1.0
        }
    }
}

/// Householder QR with Hermitian reflectors `H = I - 2 v v^H / |v|^2`.
///
/// Each reflector maps the working column to `beta * e_k` with
/// `beta = -(alpha/|alpha|) * ||x||` (the cancellation-free phase choice),
/// so the diagonal of `r` carries data-dependent phases. Entries below the
/// diagonal of `r` are set to exact zero.
pub fn householder_qr(a: &ComplexMatrix) -> Result<QRFactors> {
    a.check_finite("householder_qr")?;
    let n = a.dim();
    let mut r = a.clone();
    let mut q = ComplexMatrix::identity(n)?;
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    let mut parity = false;

    for k in 0..n.saturating_sub(1) {
        let tail_norm2: f64 = (k + 1..n).map(|i| r.get(i, k).norm_sqr()).sum();
        if tail_norm2 == 0.0 {
            continue; // column already triangular; r[k][k] keeps its phase
        }
        let alpha = r.get(k, k);
        let xnorm = (alpha.norm_sqr() + tail_norm2).sqrt();
        let phase = if alpha.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            alpha / alpha.norm()
        };
        let beta = -phase * xnorm;

        v[k] = alpha - beta;
        for i in k + 1..n {
            v[i] = r.get(i, k);
        }
        let vnorm2 = v[k].norm_sqr() + tail_norm2;
        let scale = 2.0 / vnorm2;

        // r[:, k] is fully determined; write it directly.
        r.set(k, k, beta);
        for i in k + 1..n {
            r.set(i, k, Complex64::new(0.0, 0.0));
        }
        // Apply H to the trailing columns of r.
        for j in k + 1..n {
            let mut w = Complex64::new(0.0, 0.0);
            for i in k..n {
                w += v[i].conj() * r.get(i, j);
            }
            w *= scale;
            for i in k..n {
                let new = r.get(i, j) - w * v[i];
                r.set(i, j, new);
            }
        }
        // Accumulate q := q * H (rows of q are contiguous).
        for i in 0..n {
            let row = q.row_mut(i);
            let mut w = Complex64::new(0.0, 0.0);
            for (x, vv) in row[k..n].iter().zip(&v[k..n]) {
                w += x * vv;
            }
            w *= scale;
            for (x, vv) in row[k..n].iter_mut().zip(&v[k..n]) {
                *x -= w * vv.conj();
            }
        }
        parity = !parity;
    }

    Ok(QRFactors {
        q,
        r,
        reflection_parity: parity,
    })
}

/// Determinant via the QR route: `det(a) = det(q) * prod r[k][k]`, with
/// `det(q) = (-1)^reflections`. Independent of the eigensolver.
pub fn determinant(a: &ComplexMatrix) -> Result<Complex64> {
    let f = householder_qr(a)?;
    let mut det = Complex64::new(f.det_q(), 0.0);
    for k in 0..a.dim() {
        det *= f.r.get(k, k);
    }
    Ok(det)
}

/// QR in the style of the common library routines: LAPACK-type reflectors
/// `H = I - tau v v^H` chosen so every diagonal entry of `r` comes out
/// *real*, with sign `-sign(Re alpha)`. Returns `q` only.
///
/// This is the deterministic phase convention that numerical QR routines
/// bake into their output, and it is exactly what makes the raw `q` of a
/// Ginibre factorization non-Haar (its eigenvalue density is depleted near
/// angle 0). Used by the uncorrected sampler; see `haar::sample_naive_unitary`.
pub(crate) fn real_diag_q(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.check_finite("real_diag_q")?;
    let n = a.dim();
    let mut r = a.clone();
    let mut q = ComplexMatrix::identity(n)?;
    let mut v = vec![Complex64::new(0.0, 0.0); n];

    // The loop runs through k = n-1: the final step is a pure phase
    // rotation making r[n-1][n-1] real. That step is what distinguishes
    // this convention from the Hermitian-reflector one.
    for k in 0..n {
        let tail_norm2: f64 = (k + 1..n).map(|i| r.get(i, k).norm_sqr()).sum();
        let alpha = r.get(k, k);
        let xnorm = (alpha.norm_sqr() + tail_norm2).sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let beta = -xnorm.copysign(alpha.re);
        if tail_norm2 == 0.0 && (alpha - beta).norm() == 0.0 {
            continue; // column already has the target form
        }
        let denom = alpha - Complex64::new(beta, 0.0);
        let tau = (Complex64::new(beta, 0.0) - alpha) / beta;

        v[k] = Complex64::new(1.0, 0.0);
        for i in k + 1..n {
            v[i] = r.get(i, k) / denom;
        }
        let tau_conj = tau.conj();

        r.set(k, k, Complex64::new(beta, 0.0));
        for i in k + 1..n {
            r.set(i, k, Complex64::new(0.0, 0.0));
        }
        // Left-apply G = I - conj(tau) v v^H to the trailing columns.
        for j in k + 1..n {
            let mut w = Complex64::new(0.0, 0.0);
            for i in k..n {
                w += v[i].conj() * r.get(i, j);
            }
            w *= tau_conj;
            for i in k..n {
                let new = r.get(i, j) - w * v[i];
                r.set(i, j, new);
            }
        }
        // q := q * G^H = q * (I - tau v v^H).
        for i in 0..n {
            let row = q.row_mut(i);
            let mut w = Complex64::new(0.0, 0.0);
            for (x, vv) in row[k..n].iter().zip(&v[k..n]) {
                w += x * vv;
            }
            w *= tau;
            for (x, vv) in row[k..n].iter_mut().zip(&v[k..n]) {
                *x -= w * vv.conj();
            }
        }
    }

    Ok(q)
}
