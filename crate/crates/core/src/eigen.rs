//! Dense Hermitian eigensolver.
//!
//! Householder reflections reduce the matrix to Hermitian tridiagonal form, a
//! diagonal phase change makes the off-diagonal real, and implicit-shift QL
//! iterations diagonalize the resulting real symmetric tridiagonal matrix.
//! Every rotation is accumulated into the complex basis so eigenvectors come
//! out in the original coordinates.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::Real;

const MAX_QL_ITERATIONS: usize = 60;

/// Eigenvalues in ascending order and the matching eigenvectors as the
/// columns of a unitary matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: CMatrix<T>,
}

/// Diagonalizes `a`, which is assumed Hermitian. Only the lower triangle and
/// the real part of the diagonal are trusted.
pub fn hermitian_eigen<T: Real>(a: &CMatrix<T>) -> Result<HermitianEigen<T>> {
    let n = a.dim();
    let mut work = a.clone();
    let mut q = CMatrix::identity(n);
    tridiagonalize(&mut work, &mut q);

    let mut diag: Vec<T> = (0..n).map(|i| work[(i, i)].re).collect();
    let mut off = vec![T::zero(); n];
    let mut phase = Complex::<T>::one();
    for i in 0..n {
        if i > 0 {
            let e = work[(i, i - 1)];
            let r = e.norm();
            off[i - 1] = r;
            if r > T::zero() {
                phase *= e / r;
            }
        }
        for row in 0..n {
            q[(row, i)] *= phase;
        }
    }

    tql(&mut diag, &mut off, &mut q)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = CMatrix::from_fn(n, |row, col| q[(row, order[col])]);
    Ok(HermitianEigen { values, vectors })
}

/// In-place Householder reduction `A = Q T Q†`; on return `a` holds `T` in its
/// diagonal and first sub/super-diagonals, and `q` has been multiplied by the
/// accumulated reflectors.
fn tridiagonalize<T: Real>(a: &mut CMatrix<T>, q: &mut CMatrix<T>) {
    let n = a.dim();
    let two = T::lit(2.0);
    let mut v = vec![Complex::<T>::zero(); n];
    let mut p = vec![Complex::<T>::zero(); n];
    for k in 0..n.saturating_sub(2) {
        let lo = k + 1;
        let len = n - lo;
        let xnorm = (lo..n).fold(T::zero(), |s, i| s + a[(i, k)].norm_sqr()).sqrt();
        if xnorm == T::zero() {
            continue;
        }
        let x0 = a[(lo, k)];
        let r0 = x0.norm();
        let unit = if r0 > T::zero() { x0 / r0 } else { Complex::one() };
        let alpha = -unit * xnorm;

        // v = x - alpha e1, so that (I - τ v v†) x = alpha e1.
        for (j, i) in (lo..n).enumerate() {
            v[j] = a[(i, k)];
        }
        v[0] -= alpha;
        let vnorm2 = v[..len].iter().fold(T::zero(), |s, z| s + z.norm_sqr());
        if vnorm2 == T::zero() {
            continue;
        }
        let tau = two / vnorm2;

        // Trailing block update B ← H B H via the rank-two form
        // B - v w† - w v† with p = τBv, K = τ/2·v†p, w = p - K v.
        for (pi, i) in (lo..n).enumerate() {
            let mut s = Complex::zero();
            for (vj, j) in (lo..n).enumerate() {
                s += a[(i, j)] * v[vj];
            }
            p[pi] = s * tau;
        }
        let vp = v[..len]
            .iter()
            .zip(&p[..len])
            .fold(Complex::<T>::zero(), |s, (x, y)| s + x.conj() * y);
        let kk = vp.re * tau / two;
        for j in 0..len {
            p[j] -= v[j] * kk;
        }
        for (bi, i) in (lo..n).enumerate() {
            for (bj, j) in (lo..n).enumerate() {
                a[(i, j)] = a[(i, j)] - v[bi] * p[bj].conj() - p[bi] * v[bj].conj();
            }
        }

        a[(lo, k)] = alpha;
        a[(k, lo)] = alpha.conj();
        for i in lo + 1..n {
            a[(i, k)] = Complex::zero();
            a[(k, i)] = Complex::zero();
        }

        for row in 0..n {
            let mut s = Complex::zero();
            for (vj, j) in (lo..n).enumerate() {
                s += q[(row, j)] * v[vj];
            }
            let s = s * tau;
            for (vj, j) in (lo..n).enumerate() {
                q[(row, j)] -= s * v[vj].conj();
            }
        }
    }
}

/// Implicit-shift QL on a real symmetric tridiagonal matrix with diagonal `d`
/// and off-diagonal `e` (`e[i]` couples `i` and `i+1`, `e[n-1]` unused).
/// Rotations are applied to the columns of `z`.
fn tql<T: Real>(d: &mut [T], e: &mut [T], z: &mut CMatrix<T>) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = T::zero();
    let two = T::lit(2.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence(MAX_QL_ITERATIONS));
            }

            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            let signed_r = if g >= T::zero() { r } else { -r };
            g = d[m] - d[l] + e[l] / (g + signed_r);
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    let zi = z[(k, i)];
                    let zi1 = z[(k, i + 1)];
                    z[(k, i + 1)] = zi * s + zi1 * c;
                    z[(k, i)] = zi * c - zi1 * s;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}
