//! Hermitian observables of the market model: return `R̂`, trend
//! `T̂ = F⁻¹R̂F` and price `℘̂ = p0·(I + R̂)`.

use num_complex::Complex;
use num_traits::Zero;

use crate::eigen::hermitian_eigen;
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::matrix::CMatrix;
use crate::scalar::{cis, Real};
use crate::state::{inner_product, StateVector};

/// Dense Hermitian matrix acting on states of one grid. Entry `(n, m)` is
/// `⟨δ_n, A δ_m⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator<T> {
    grid: GridSpec,
    matrix: CMatrix<T>,
}

impl<T: Real> HermitianOperator<T> {
    /// Validates squareness and Hermiticity. Small defects (below
    /// [`Real::HERMITIAN_TOL`]) are projected away; larger ones are rejected.
    pub fn new(grid: GridSpec, mut matrix: CMatrix<T>) -> Result<Self> {
        if matrix.dim() != grid.dim() {
            return Err(Error::DimensionMismatch {
                expected: grid.dim(),
                found: matrix.dim(),
            });
        }
        let defect = matrix.hermitian_defect();
        if !(defect <= T::HERMITIAN_TOL) {
            return Err(Error::NotHermitian {
                defect: defect.to_f64().unwrap_or(f64::NAN),
            });
        }
        matrix.symmetrize();
        Ok(Self { grid, matrix })
    }

    pub(crate) fn from_trusted(grid: GridSpec, matrix: CMatrix<T>) -> Self {
        debug_assert_eq!(grid.dim(), matrix.dim());
        Self { grid, matrix }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.matrix
    }

    /// Entry at signed indices `(n, m)`.
    pub fn entry(&self, n: i64, m: i64) -> Result<Complex<T>> {
        Ok(self.matrix[(self.grid.offset(n)?, self.grid.offset(m)?)])
    }

    pub fn apply(&self, psi: &StateVector<T>) -> Result<StateVector<T>> {
        psi.ensure_grid(self.grid)?;
        Ok(StateVector::from_raw(self.grid, self.matrix.matvec(psi.amplitudes())))
    }

    /// `A²`, Hermitian whenever `A` is.
    pub fn square(&self) -> Self {
        let mut m = self.matrix.matmul(&self.matrix);
        m.symmetrize();
        Self::from_trusted(self.grid, m)
    }

    pub fn scale(&self, c: T) -> Self {
        Self::from_trusted(self.grid, self.matrix.scale(c))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if other.grid != self.grid {
            return Err(Error::DimensionMismatch {
                expected: self.grid.dim(),
                found: other.grid.dim(),
            });
        }
        Ok(Self::from_trusted(self.grid, self.matrix.add(&other.matrix)))
    }

    /// Returns `A + diag(v)`; a real diagonal keeps the sum Hermitian.
    pub fn plus_diagonal(&self, v: &[T]) -> Result<Self> {
        if v.len() != self.grid.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.grid.dim(),
                found: v.len(),
            });
        }
        let mut m = self.matrix.clone();
        m.add_diagonal(v);
        Ok(Self::from_trusted(self.grid, m))
    }

    pub fn hermitian_defect(&self) -> T {
        self.matrix.hermitian_defect()
    }

    /// CSV `n,m,re,im`, one row per entry in row-major lattice order.
    pub fn to_csv_rows(&self) -> impl Iterator<Item = (i64, i64, Complex<T>)> + '_ {
        let d = self.grid.dim();
        (0..d * d).map(move |k| {
            let (i, j) = (k / d, k % d);
            (self.grid.index_at(i), self.grid.index_at(j), self.matrix[(i, j)])
        })
    }
}

/// Spectral decomposition `A = Σ λ_i v_i v_i†` with ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct EigenSystem<T> {
    grid: GridSpec,
    eigenvalues: Vec<T>,
    vectors: CMatrix<T>,
}

impl<T: Real> EigenSystem<T> {
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// Eigenvectors as states, in eigenvalue order.
    pub fn eigenvectors(&self) -> Vec<StateVector<T>> {
        let d = self.grid.dim();
        (0..d)
            .map(|j| StateVector::from_raw(self.grid, (0..d).map(|i| self.vectors[(i, j)]).collect()))
            .collect()
    }

    /// Unitary matrix whose columns are the eigenvectors.
    pub fn vector_matrix(&self) -> &CMatrix<T> {
        &self.vectors
    }

    /// `Σ f(λ_i) v_i v_i†`.
    pub fn map_spectrum(&self, f: impl Fn(T) -> Complex<T>) -> CMatrix<T> {
        let d = self.grid.dim();
        let fl: Vec<Complex<T>> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        CMatrix::from_fn(d, |i, j| {
            (0..d).fold(Complex::zero(), |acc, k| {
                acc + self.vectors[(i, k)] * fl[k] * self.vectors[(j, k)].conj()
            })
        })
    }

    pub fn reconstruct(&self) -> CMatrix<T> {
        self.map_spectrum(|l| Complex::new(l, T::zero()))
    }

    /// Matrix of `exp(-i·t·A)`.
    pub fn propagator(&self, t: T) -> CMatrix<T> {
        self.map_spectrum(|l| cis(-t * l))
    }

    /// `exp(-i·t·A)·ψ` evaluated as `Σ e^{-itλ_i} v_i ⟨v_i, ψ⟩` without
    /// forming the propagator matrix.
    pub fn evolve(&self, psi: &StateVector<T>, t: T) -> Result<StateVector<T>> {
        psi.ensure_grid(self.grid)?;
        let d = self.grid.dim();
        let x = psi.amplitudes();
        let coeffs: Vec<Complex<T>> = (0..d)
            .map(|k| {
                let c = (0..d).fold(Complex::<T>::zero(), |acc, i| acc + self.vectors[(i, k)].conj() * x[i]);
                c * cis(-t * self.eigenvalues[k])
            })
            .collect();
        let out = (0..d)
            .map(|i| (0..d).fold(Complex::zero(), |acc, k| acc + self.vectors[(i, k)] * coeffs[k]))
            .collect();
        Ok(StateVector::from_raw(self.grid, out))
    }
}

/// Return operator: diagonal with entries `n/100`.
pub fn op_rate_of_return<T: Real>(grid: GridSpec) -> HermitianOperator<T> {
    HermitianOperator::from_trusted(grid, CMatrix::from_diagonal(&grid.values::<T>()))
}

/// Trend operator `T̂ = F⁻¹ R̂ F`, materialized densely.
///
/// Entrywise this is `T[n][m] = (1/(100d)) Σ_k k·exp(2πi·k(n-m)/d)`, so that
/// `T̂ Φ_n = (n/100) Φ_n` for the plane waves `Φ_n(k) = exp(2πi·kn/d)/√d`.
/// Pairing `±k` gives `(2i/(100d)) Σ_{k>0} k·sin(2πk(n-m)/d)`: the diagonal is
/// exactly zero and the off-diagonal entries exactly imaginary. The lower
/// triangle is filled by conjugation so the matrix is exactly Hermitian.
pub fn op_trend<T: Real>(grid: GridSpec) -> HermitianOperator<T> {
    let d = grid.dim();
    let di = d as i64;
    let scale = T::lit(2.0) / (T::lit(100.0) * T::from_index(di));
    let two_pi_over_d = T::TAU() / T::from_index(di);
    let mut m = CMatrix::zeros(d);
    for i in 0..d {
        for j in 0..i {
            let diff = i as i64 - j as i64;
            let s = (1..=grid.q() as i64).fold(T::zero(), |acc, k| {
                acc + T::from_index(k) * (two_pi_over_d * T::from_index((diff * k).rem_euclid(di))).sin()
            });
            let z = Complex::new(T::zero(), scale * s);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    HermitianOperator::from_trusted(grid, m)
}

/// Price operator `℘̂ = p0·I + p0·R̂`.
pub fn op_price<T: Real>(grid: GridSpec, p0: T) -> Result<HermitianOperator<T>> {
    if !(p0 > T::zero() && p0.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "base price must be positive and finite, got {p0}"
        )));
    }
    let diag: Vec<T> = grid.values::<T>().into_iter().map(|r| p0 + p0 * r).collect();
    Ok(HermitianOperator::from_trusted(grid, CMatrix::from_diagonal(&diag)))
}

/// `⟨ψ, Aψ⟩` for a normalized `ψ`.
pub fn expectation<T: Real>(op: &HermitianOperator<T>, psi: &StateVector<T>) -> Result<T> {
    psi.ensure_grid(op.grid)?;
    psi.ensure_normalized()?;
    let z = inner_product(psi, &op.apply(psi)?)?;
    if !(z.im.abs() <= T::IMAG_TOL) {
        return Err(Error::NumericConsistency(format!(
            "expectation value has imaginary part {}",
            z.im
        )));
    }
    Ok(z.re)
}

/// Spectral decomposition with ascending eigenvalues and orthonormal
/// eigenvectors.
pub fn eigendecompose<T: Real>(op: &HermitianOperator<T>) -> Result<EigenSystem<T>> {
    let defect = op.hermitian_defect();
    if !(defect <= T::HERMITIAN_TOL) {
        return Err(Error::NotHermitian {
            defect: defect.to_f64().unwrap_or(f64::NAN),
        });
    }
    let eig = hermitian_eigen(&op.matrix)?;
    Ok(EigenSystem {
        grid: op.grid,
        eigenvalues: eig.values,
        vectors: eig.vectors,
    })
}
