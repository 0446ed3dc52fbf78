//! Wavefunctions on the return lattice.

use std::fmt::Write as _;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::scalar::Real;

/// Complex amplitudes `φ(n/100)` over a return lattice, stored for
/// `n = -q..=q` in increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    grid: GridSpec,
    amps: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// Wraps amplitudes given in lattice order. Rejects wrong lengths and
    /// non-finite entries.
    pub fn from_amplitudes(grid: GridSpec, amps: Vec<Complex<T>>) -> Result<Self> {
        if amps.len() != grid.dim() {
            return Err(Error::DimensionMismatch {
                expected: grid.dim(),
                found: amps.len(),
            });
        }
        if let Some(i) = amps.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidArgument(format!(
                "amplitude at n={} is not finite",
                grid.index_at(i)
            )));
        }
        Ok(Self { grid, amps })
    }

    pub fn from_real(grid: GridSpec, values: &[T]) -> Result<Self> {
        Self::from_amplitudes(grid, values.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    /// Builds a state by evaluating `f` at every signed index.
    pub fn from_fn(grid: GridSpec, f: impl FnMut(i64) -> Complex<T>) -> Result<Self> {
        Self::from_amplitudes(grid, grid.indices().map(f).collect())
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            amps: vec![Complex::zero(); grid.dim()],
        }
    }

    /// Canonical basis vector `δ_n`, an eigenvector of the return operator.
    pub fn delta(grid: GridSpec, n: i64) -> Result<Self> {
        let i = grid.offset(n)?;
        let mut s = Self::zeros(grid);
        s.amps[i] = Complex::new(T::one(), T::zero());
        Ok(s)
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amps
    }

    /// Amplitude at signed index `n`.
    pub fn amp(&self, n: i64) -> Result<Complex<T>> {
        Ok(self.amps[self.grid.offset(n)?])
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex<T>)> + '_ {
        self.grid.indices().zip(self.amps.iter().copied())
    }

    /// `Σ |φ(n/100)|²`.
    pub fn norm_sqr(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - T::one()).abs() <= T::NORM_TOL
    }

    pub(crate) fn ensure_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized {
                norm_sq: self.norm_sqr().to_f64().unwrap_or(f64::NAN),
            })
        }
    }

    pub(crate) fn ensure_grid(&self, grid: GridSpec) -> Result<()> {
        if self.grid == grid {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: grid.dim(),
                found: self.grid.dim(),
            })
        }
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self {
            grid: self.grid,
            amps: self.amps.iter().map(|&z| z * c).collect(),
        }
    }

    /// `max_n |a(n) - b(n)|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        other.ensure_grid(self.grid)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm())))
    }

    /// Serializes as CSV rows `n,re,im` with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,re,im\n");
        for (n, z) in self.iter() {
            let _ = writeln!(out, "{n},{},{}", z.re, z.im);
        }
        out
    }

    pub(crate) fn from_raw(grid: GridSpec, amps: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(amps.len(), grid.dim());
        Self { grid, amps }
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.amps
    }
}

/// `⟨a, b⟩ = Σ conj(a(n))·b(n)`, conjugate-linear in `a`.
pub fn inner_product<T: Real>(a: &StateVector<T>, b: &StateVector<T>) -> Result<Complex<T>> {
    b.ensure_grid(a.grid)?;
    Ok(a.amps
        .iter()
        .zip(&b.amps)
        .fold(Complex::zero(), |acc, (x, y)| acc + x.conj() * y))
}

/// Rescales a nonzero state to unit norm.
pub fn normalize<T: Real>(psi: &StateVector<T>) -> Result<StateVector<T>> {
    let n2 = psi.norm_sqr();
    if !(n2 >= T::ZERO_NORM_SQ) {
        return Err(Error::ZeroNorm);
    }
    let inv = T::one() / n2.sqrt();
    Ok(StateVector {
        grid: psi.grid,
        amps: psi.amps.iter().map(|&z| z * inv).collect(),
    })
}

/// Probability `|φ(n/100)|²` of each lattice return, in lattice order.
pub fn probabilities<T: Real>(psi: &StateVector<T>) -> Result<Vec<T>> {
    psi.ensure_normalized()?;
    Ok(psi.amps.iter().map(|z| z.norm_sqr()).collect())
}
