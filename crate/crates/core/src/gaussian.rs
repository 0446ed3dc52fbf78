//! Finite Gaussians on the return lattice.
//!
//! `g_α(n/100) = Σ_m exp(-απ(md + n)²/d)` is the periodized Gaussian; its
//! normalization `γ_α` is the equilibrium state of the market. The family is
//! closed under the finite Fourier transform: `F[g_α] = g_{1/α}/√α`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fourier::FourierTransform;
use crate::grid::GridSpec;
use crate::scalar::Real;
use crate::state::{normalize, StateVector};

/// Cap on the number of image terms per side; only reachable for absurdly
/// small `α`.
const MAX_IMAGES: usize = 10_000_000;

/// Parameters of a finite Gaussian on a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaGaussianSpec<T> {
    alpha: T,
    grid: GridSpec,
    truncation_tol: T,
}

impl<T: Real> ThetaGaussianSpec<T> {
    pub fn new(alpha: T, grid: GridSpec) -> Result<Self> {
        Self::with_tolerance(alpha, grid, T::lit(1e-16))
    }

    pub fn with_tolerance(alpha: T, grid: GridSpec, truncation_tol: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "width parameter alpha must be positive and finite, got {alpha}"
            )));
        }
        if !(truncation_tol > T::zero()) {
            return Err(Error::InvalidArgument(format!(
                "truncation tolerance must be positive, got {truncation_tol}"
            )));
        }
        Ok(Self {
            alpha,
            grid,
            truncation_tol,
        })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn truncation_tol(&self) -> T {
        self.truncation_tol
    }

    fn term(&self, n: i64, m: i64) -> T {
        let d = self.grid.dim() as i64;
        let x = T::from_index(m * d + n);
        (-self.alpha * T::PI() * x * x / T::from_index(d)).exp()
    }

    /// Number of image pairs `M` kept for index `n`: the smallest `M` such
    /// that both terms at `m = ±(M+1)` fall below the truncation tolerance.
    pub fn cutoff(&self, n: i64) -> Result<usize> {
        self.grid.offset(n)?;
        for m in 1..=MAX_IMAGES {
            let m = m as i64;
            if self.term(n, m).max(self.term(n, -m)) < self.truncation_tol {
                return Ok((m - 1) as usize);
            }
        }
        Err(Error::NumericConsistency(format!(
            "theta series for alpha={} did not reach tolerance within {MAX_IMAGES} images",
            self.alpha
        )))
    }

    /// `Σ_{m=-M}^{M} exp(-απ(md + n)²/d)` for an explicit `M`.
    pub fn partial_sum(&self, n: i64, images: usize) -> T {
        // Smallest terms first.
        let mut s = T::zero();
        for m in (1..=images as i64).rev() {
            s += self.term(n, m) + self.term(n, -m);
        }
        s + self.term(n, 0)
    }
}

/// `g_α(n/100)`, summed outward from `m = 0` until the next image pair is
/// below the truncation tolerance.
pub fn g_alpha<T: Real>(spec: &ThetaGaussianSpec<T>, n: i64) -> Result<T> {
    let images = spec.cutoff(n)?;
    Ok(spec.partial_sum(n, images))
}

/// Unnormalized `g_α` over the whole lattice. Evaluated on `|n|` so the
/// result is exactly even.
pub fn g_alpha_values<T: Real>(spec: &ThetaGaussianSpec<T>) -> Result<Vec<T>> {
    let q = spec.grid.q() as i64;
    let half: Vec<T> = (0..=q).map(|n| g_alpha(spec, n)).collect::<Result<_>>()?;
    Ok(spec.grid.indices().map(|n| half[n.unsigned_abs() as usize]).collect())
}

/// The normalized equilibrium state `γ_α = g_α / ‖g_α‖`.
pub fn gaussian_state<T: Real>(spec: &ThetaGaussianSpec<T>) -> Result<StateVector<T>> {
    let g = g_alpha_values(spec)?;
    normalize(&StateVector::from_real(spec.grid, &g)?)
}

/// `max_k |F[g_α](k/100) - g_{1/α}(k/100)/√α|`.
pub fn check_ruzzi<T: Real>(alpha: T, grid: GridSpec) -> Result<T> {
    let spec = ThetaGaussianSpec::new(alpha, grid)?;
    let dual = ThetaGaussianSpec::new(T::one() / alpha, grid)?;
    let g = StateVector::from_real(grid, &g_alpha_values(&spec)?)?;
    let lhs = FourierTransform::new(grid).forward(&g)?;
    let scale = T::one() / alpha.sqrt();
    let rhs: Vec<Complex<T>> = g_alpha_values(&dual)?
        .into_iter()
        .map(|x| Complex::new(x * scale, T::zero()))
        .collect();
    lhs.max_abs_diff(&StateVector::from_amplitudes(grid, rhs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::probabilities;

    fn spec(alpha: f64, q: usize) -> ThetaGaussianSpec<f64> {
        ThetaGaussianSpec::new(alpha, GridSpec::new(q).unwrap()).unwrap()
    }

    #[test]
    fn g_at_center_alpha_point_two() {
        // 1 + 2·exp(-0.2π·21)
        let v = g_alpha(&spec(0.2, 10), 0).unwrap();
        assert!((v - 1.000_003_7).abs() < 1e-6);
        let expected = 1.0 + 2.0 * (-0.2 * std::f64::consts::PI * 21.0).exp();
        assert!((v - expected).abs() < 1e-15);
    }

    #[test]
    fn large_alpha_concentrates_on_center() {
        let s = spec(50.0, 10);
        assert!((g_alpha(&s, 0).unwrap() - 1.0).abs() < 1e-10);
        // Only the m = 0 image survives: g(n) = exp(-50π n²/21). At n = ±1
        // that is still about 5.6e-4, from n = ±2 on it is below 1e-10.
        for n in 1..=10i64 {
            let dominant = (-50.0 * std::f64::consts::PI * (n * n) as f64 / 21.0).exp();
            assert!((g_alpha(&s, n).unwrap() - dominant).abs() < 1e-10);
            if n >= 2 {
                assert!(g_alpha(&s, n).unwrap() < 1e-10);
                assert!(g_alpha(&s, -n).unwrap() < 1e-10);
            }
        }
    }

    #[test]
    fn g_is_even() {
        for &alpha in &[0.05, 0.2, 1.0, 3.7] {
            let s = spec(alpha, 10);
            for n in 1..=10 {
                assert_eq!(g_alpha(&s, n).unwrap(), g_alpha(&s, -n).unwrap());
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let grid = GridSpec::new(10).unwrap();
        assert!(ThetaGaussianSpec::new(0.0, grid).is_err());
        assert!(ThetaGaussianSpec::new(-1.0, grid).is_err());
        assert!(ThetaGaussianSpec::new(f64::INFINITY, grid).is_err());
        assert!(ThetaGaussianSpec::with_tolerance(1.0, grid, 0.0).is_err());
        assert!(g_alpha(&spec(1.0, 10), 11).is_err());
    }

    #[test]
    fn gaussian_state_peak() {
        let s = gaussian_state(&spec(0.2, 10)).unwrap();
        let p = probabilities(&s).unwrap();
        assert!((p[10] - 0.1380).abs() < 5e-4);
        let total: f64 = p.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gaussian_state_is_positive_even_unimodal() {
        for &alpha in &[0.2, 1.0, 2.0] {
            let s = gaussian_state(&spec(alpha, 10)).unwrap();
            let a: Vec<f64> = s.amplitudes().iter().map(|z| z.re).collect();
            assert!(s.amplitudes().iter().all(|z| z.im == 0.0));
            assert!(a.iter().all(|&x| x > 0.0));
            for i in 0..10 {
                assert_eq!(a[i], a[20 - i]);
                assert!(a[i] <= a[i + 1]);
            }
        }
    }

    #[test]
    fn wider_alpha_is_more_peaked() {
        let peak = |alpha| gaussian_state(&spec(alpha, 10)).unwrap().amp(0).unwrap().re;
        assert!(peak(2.0) > peak(1.0));
        assert!(peak(1.0) > peak(0.2));
    }

    #[test]
    fn ruzzi_self_dual_point() {
        assert!(check_ruzzi(1.0, GridSpec::new(10).unwrap()).unwrap() <= 1e-10);
    }

    #[test]
    fn cutoff_grows_as_alpha_shrinks() {
        let wide = spec(0.01, 10);
        let narrow = spec(5.0, 10);
        assert!(wide.cutoff(0).unwrap() > narrow.cutoff(0).unwrap());
        assert_eq!(narrow.cutoff(0).unwrap(), 0);
    }
}
