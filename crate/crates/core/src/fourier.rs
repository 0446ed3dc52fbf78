//! Unitary finite Fourier transform on the return lattice.
//!
//! Forward kernel `exp(-2πi·kn/d)/√d`, inverse kernel `exp(+2πi·kn/d)/√d`,
//! with `k, n ∈ -q..=q`. The transform is applied as a dense matrix-vector
//! product; `d` is small enough that an FFT buys nothing.

use num_complex::Complex;

use crate::error::Result;
use crate::grid::GridSpec;
use crate::matrix::CMatrix;
use crate::scalar::{cis, Real};
use crate::state::StateVector;

/// Precomputed forward and inverse kernels for one grid.
#[derive(Debug, Clone)]
pub struct FourierTransform<T> {
    grid: GridSpec,
    forward: CMatrix<T>,
    inverse: CMatrix<T>,
}

impl<T: Real> FourierTransform<T> {
    pub fn new(grid: GridSpec) -> Self {
        let forward = kernel(grid, false);
        let inverse = forward.adjoint();
        Self { grid, forward, inverse }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// Matrix of `F`, rows indexed by the output index `k`.
    pub fn forward_matrix(&self) -> &CMatrix<T> {
        &self.forward
    }

    /// Matrix of `F⁻¹ = F†`.
    pub fn inverse_matrix(&self) -> &CMatrix<T> {
        &self.inverse
    }

    pub fn forward(&self, psi: &StateVector<T>) -> Result<StateVector<T>> {
        psi.ensure_grid(self.grid)?;
        Ok(StateVector::from_raw(self.grid, self.forward.matvec(psi.amplitudes())))
    }

    pub fn inverse(&self, psi: &StateVector<T>) -> Result<StateVector<T>> {
        psi.ensure_grid(self.grid)?;
        Ok(StateVector::from_raw(self.grid, self.inverse.matvec(psi.amplitudes())))
    }
}

fn kernel<T: Real>(grid: GridSpec, inverse: bool) -> CMatrix<T> {
    let d = grid.dim() as i64;
    let scale = T::one() / T::from_index(d).sqrt();
    let two_pi_over_d = T::TAU() / T::from_index(d);
    let sign = if inverse { T::one() } else { -T::one() };
    // Reducing k·n mod d first keeps the phase argument in [0, 2π).
    CMatrix::from_fn(grid.dim(), |i, j| {
        let k = grid.index_at(i);
        let n = grid.index_at(j);
        let r = (k * n).rem_euclid(d);
        cis(sign * two_pi_over_d * T::from_index(r)) * scale
    })
}

/// `F[ψ](k/100) = (1/√d) Σ_n exp(-2πi·kn/d)·ψ(n/100)`.
pub fn dft_forward<T: Real>(psi: &StateVector<T>) -> StateVector<T> {
    let f = kernel::<T>(psi.grid(), false);
    StateVector::from_raw(psi.grid(), f.matvec(psi.amplitudes()))
}

/// `F⁻¹[ψ](n/100) = (1/√d) Σ_k exp(+2πi·kn/d)·ψ(k/100)`.
pub fn dft_inverse<T: Real>(psi: &StateVector<T>) -> StateVector<T> {
    let f = kernel::<T>(psi.grid(), true);
    StateVector::from_raw(psi.grid(), f.matvec(psi.amplitudes()))
}

/// Trend eigenbasis vector `Φ_n = F⁻¹[δ_n]`, i.e. `Φ_n(k/100) = exp(2πi·kn/d)/√d`.
pub fn trend_basis<T: Real>(grid: GridSpec, n: i64) -> Result<StateVector<T>> {
    grid.offset(n)?;
    let d = grid.dim() as i64;
    let scale = T::one() / T::from_index(d).sqrt();
    let w = T::TAU() / T::from_index(d);
    StateVector::from_fn(grid, |k| {
        let r = (k * n).rem_euclid(d);
        cis(w * T::from_index(r)) * scale
    })
}

/// Constant state `1/√d` everywhere (the transform of `δ_0`).
pub fn uniform_state<T: Real>(grid: GridSpec) -> StateVector<T> {
    let a = T::one() / T::from_index(grid.dim() as i64).sqrt();
    StateVector::from_raw(grid, vec![Complex::new(a, T::zero()); grid.dim()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{inner_product, probabilities};

    fn g10() -> GridSpec {
        GridSpec::new(10).unwrap()
    }

    #[test]
    fn delta_zero_maps_to_constant() {
        let out = dft_forward(&StateVector::<f64>::delta(g10(), 0).unwrap());
        for (_, z) in out.iter() {
            assert!((z.re - 0.218_217_890_235_992_4).abs() < 1e-12);
            assert!(z.im.abs() < 1e-15);
        }
    }

    #[test]
    fn constant_inverts_to_delta_zero() {
        let out = dft_inverse(&uniform_state::<f64>(g10()));
        assert!(out.max_abs_diff(&StateVector::delta(g10(), 0).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn trend_basis_round_trips_with_delta() {
        let grid = g10();
        for n in grid.indices() {
            let phi = trend_basis::<f64>(grid, n).unwrap();
            let delta = StateVector::delta(grid, n).unwrap();
            assert!(dft_forward(&phi).max_abs_diff(&delta).unwrap() < 1e-12);
            assert!(dft_inverse(&delta).max_abs_diff(&phi).unwrap() < 1e-12);
        }
    }

    #[test]
    fn trend_basis_is_orthonormal() {
        let grid = g10();
        let p2 = trend_basis::<f64>(grid, 2).unwrap();
        let p7 = trend_basis::<f64>(grid, 7).unwrap();
        assert!((inner_product(&p2, &p2).unwrap() - 1.0).norm() < 1e-12);
        assert!(inner_product(&p2, &p7).unwrap().norm() < 1e-12);
    }

    #[test]
    fn trend_basis_has_uniform_probabilities() {
        let grid = g10();
        for p in probabilities(&trend_basis::<f64>(grid, 4).unwrap()).unwrap() {
            assert!((p - 1.0 / 21.0).abs() < 1e-14);
        }
    }

    #[test]
    fn cached_transform_matches_free_functions() {
        let grid = GridSpec::new(3).unwrap();
        let ft = FourierTransform::<f64>::new(grid);
        let psi = StateVector::from_fn(grid, |n| Complex::new(n as f64, 1.0 - n as f64)).unwrap();
        assert_eq!(ft.forward(&psi).unwrap(), dft_forward(&psi));
        assert!(ft.inverse(&psi).unwrap().max_abs_diff(&dft_inverse(&psi)).unwrap() < 1e-15);
    }
}
