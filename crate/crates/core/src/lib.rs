//! Finite-dimensional quantum model of a stock market with a daily price
//! limit.
//!
//! Daily returns live on the lattice `{-q/100, ..., q/100}` of `d = 2q + 1`
//! points. A market state is a complex wavefunction on that lattice; the
//! return operator `R̂` is diagonal and the trend operator `T̂ = F⁻¹R̂F` is its
//! finite-Fourier conjugate. Equilibrium is a periodized (theta) Gaussian and
//! states evolve under `Ĥ(t) = T̂²/(2μ) + V(R̂, t)`.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below fix the precision the model's tolerances were calibrated for.

// `!(x <= limit)` is the NaN-rejecting form used throughout the validators.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod eigen;
pub mod error;
pub mod fourier;
pub mod gaussian;
pub mod grid;
pub mod matrix;
pub mod operators;
pub mod scalar;
pub mod state;

pub use dynamics::{
    hamiltonian_at, integrate_tdse, most_probable_return, propagate_static, top_returns, EvolutionParams, Hamiltonian,
    Method, MostProbable, PotentialSpec, Trajectory, RK4_DRIFT_LIMIT, TIE_TOL,
};
pub use error::{Error, Result};
pub use fourier::{dft_forward, dft_inverse, trend_basis, uniform_state, FourierTransform};
pub use gaussian::{check_ruzzi, g_alpha, g_alpha_values, gaussian_state, ThetaGaussianSpec};
pub use grid::GridSpec;
pub use matrix::CMatrix;
pub use operators::{
    eigendecompose, expectation, op_price, op_rate_of_return, op_trend, EigenSystem, HermitianOperator,
};
pub use scalar::Real;
pub use state::{inner_product, normalize, probabilities, StateVector};

pub type Complex64 = num_complex::Complex<f64>;
pub type StateVector64 = StateVector<f64>;
pub type HermitianOperator64 = HermitianOperator<f64>;
pub type EigenSystem64 = EigenSystem<f64>;
pub type CMatrix64 = CMatrix<f64>;
pub type EvolutionParams64 = EvolutionParams<f64>;
pub type PotentialSpec64 = PotentialSpec<f64>;
pub type Trajectory64 = Trajectory<f64>;
pub type ThetaGaussianSpec64 = ThetaGaussianSpec<f64>;

/// Builds the return lattice for a `±q%` price limit.
pub fn make_grid(q: i64) -> Result<GridSpec> {
    GridSpec::from_signed(q)
}
