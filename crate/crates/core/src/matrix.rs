//! Minimal dense complex matrix used for the model's small operators.

use std::ops::{Index, IndexMut};

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::Real;

/// Square row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = Complex::new(x, T::zero());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * n..(i + 1) * n];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(self.dim, v.len());
        (0..self.dim)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Complex::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn scale(&self, c: T) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// Adds `diag[i]` to each diagonal entry in place.
    pub fn add_diagonal(&mut self, diag: &[T]) {
        assert_eq!(self.dim, diag.len());
        for (i, &x) in diag.iter().enumerate() {
            self[(i, i)].re += x;
        }
    }

    /// Entrywise max-norm `max |a_ij - b_ij|`.
    pub fn max_abs_diff(&self, rhs: &Self) -> T {
        assert_eq!(self.dim, rhs.dim);
        self.data
            .iter()
            .zip(&rhs.data)
            .fold(T::zero(), |m, (a, b)| m.max((a - b).norm()))
    }

    /// `max |A - A†|`.
    pub fn hermitian_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Replaces the matrix with `(A + A†)/2`.
    pub fn symmetrize(&mut self) {
        let half = T::lit(0.5);
        for i in 0..self.dim {
            self[(i, i)].im = T::zero();
            for j in i + 1..self.dim {
                let avg = (self[(i, j)] + self[(j, i)].conj()) * half;
                self[(i, j)] = avg;
                self[(j, i)] = avg.conj();
            }
        }
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_identity() {
        let a = CMatrix::<f64>::from_fn(3, |i, j| Complex::new(i as f64, j as f64));
        assert_eq!(a.matmul(&CMatrix::identity(3)), a);
        assert_eq!(CMatrix::identity(3).matmul(&a), a);
    }

    #[test]
    fn symmetrize_projects_onto_hermitian() {
        let mut a = CMatrix::<f64>::from_fn(4, |i, j| Complex::new((i * 3 + j) as f64, (i + 2 * j) as f64));
        assert!(a.hermitian_defect() > 1.0);
        a.symmetrize();
        assert_eq!(a.hermitian_defect(), 0.0);
    }
}
