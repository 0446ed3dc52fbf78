//! Time evolution under `Ĥ(t) = T̂²/(2μ) + V(R̂, t)`.
//!
//! The state obeys `i ∂Φ/∂t = Ĥ(t)Φ`, a linear system of `d` complex ODEs.
//! Two steppers are provided: an exponential midpoint rule, which is unitary
//! by construction, and classical fourth-order Runge-Kutta as a cross-check.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::operators::{eigendecompose, op_trend, EigenSystem, HermitianOperator};
use crate::scalar::Real;
use crate::state::{normalize, probabilities, StateVector};

/// Probabilities closer than this to the maximum count as tied.
pub const TIE_TOL: f64 = 1e-6;

/// Drift budget for the Runge-Kutta stepper before a run is rejected.
pub const RK4_DRIFT_LIMIT: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Method {
    /// `Φ(t+dt) = exp(-i·dt·Ĥ(t+dt/2))·Φ(t)`, exponential by eigendecomposition.
    #[default]
    UnitaryMidpoint,
    Rk4,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::UnitaryMidpoint => "unitary-midpoint",
            Method::Rk4 => "rk4",
        }
    }

    fn drift_limit<T: Real>(&self) -> T {
        match self {
            Method::UnitaryMidpoint => T::DRIFT_TOL,
            Method::Rk4 => T::lit(RK4_DRIFT_LIMIT),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unitary-midpoint" => Ok(Method::UnitaryMidpoint),
            "rk4" => Ok(Method::Rk4),
            other => Err(Error::InvalidArgument(format!(
                "unknown integrator '{other}' (expected unitary-midpoint or rk4)"
            ))),
        }
    }
}

/// Model and integrator parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionParams<T> {
    pub mu: T,
    pub beta: T,
    pub omega: T,
    pub dt: T,
    pub method: Method,
}

impl<T: Real> EvolutionParams<T> {
    pub fn new(mu: T, beta: T, omega: T, dt: T, method: Method) -> Result<Self> {
        let p = Self {
            mu,
            beta,
            omega,
            dt,
            method,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: T| {
            if v > T::zero() && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!(
                    "{name} must be positive and finite, got {v}"
                )))
            }
        };
        positive("mu", self.mu)?;
        positive("omega", self.omega)?;
        if !self.beta.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "beta must be finite, got {}",
                self.beta
            )));
        }
        if !(self.dt > T::zero() && self.dt.is_finite()) {
            return Err(Error::InvalidStepSize(format!(
                "dt must be positive and finite, got {}",
                self.dt
            )));
        }
        Ok(())
    }

    /// The cosine information potential described by `beta` and `omega`.
    pub fn potential(&self) -> PotentialSpec<T> {
        PotentialSpec::CosineInformation {
            beta: self.beta,
            omega: self.omega,
        }
    }
}

/// Diagonal potential `V(R̂, t)`.
#[derive(Clone)]
pub enum PotentialSpec<T> {
    None,
    /// `V(r, t) = β·r·cos(ωt)`.
    CosineInformation {
        beta: T,
        omega: T,
    },
    /// Arbitrary real `V(r, t)`, with `r` the return fraction.
    CustomDiagonal(Arc<dyn Fn(T, T) -> T + Send + Sync>),
}

impl<T: Real> PotentialSpec<T> {
    pub fn custom(f: impl Fn(T, T) -> T + Send + Sync + 'static) -> Self {
        PotentialSpec::CustomDiagonal(Arc::new(f))
    }

    pub fn is_time_independent(&self) -> bool {
        matches!(self, PotentialSpec::None)
    }

    pub fn value(&self, r: T, t: T) -> T {
        match self {
            PotentialSpec::None => T::zero(),
            PotentialSpec::CosineInformation { beta, omega } => *beta * r * (*omega * t).cos(),
            PotentialSpec::CustomDiagonal(f) => f(r, t),
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for PotentialSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PotentialSpec::None => f.write_str("None"),
            PotentialSpec::CosineInformation { beta, omega } => f
                .debug_struct("CosineInformation")
                .field("beta", beta)
                .field("omega", omega)
                .finish(),
            PotentialSpec::CustomDiagonal(_) => f.write_str("CustomDiagonal(..)"),
        }
    }
}

/// `Ĥ(t)` with the kinetic part precomputed.
#[derive(Debug, Clone)]
pub struct Hamiltonian<T> {
    grid: GridSpec,
    kinetic: HermitianOperator<T>,
    potential: PotentialSpec<T>,
    returns: Vec<T>,
}

impl<T: Real> Hamiltonian<T> {
    pub fn new(grid: GridSpec, mu: T, potential: PotentialSpec<T>) -> Result<Self> {
        if !(mu > T::zero() && mu.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "mu must be positive and finite, got {mu}"
            )));
        }
        let kinetic = op_trend::<T>(grid).square().scale(T::one() / (T::lit(2.0) * mu));
        Ok(Self {
            grid,
            kinetic,
            potential,
            returns: grid.values(),
        })
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// `T̂²/(2μ)`.
    pub fn kinetic(&self) -> &HermitianOperator<T> {
        &self.kinetic
    }

    pub fn potential(&self) -> &PotentialSpec<T> {
        &self.potential
    }

    pub fn potential_diagonal(&self, t: T) -> Vec<T> {
        self.returns.iter().map(|&r| self.potential.value(r, t)).collect()
    }

    pub fn at(&self, t: T) -> HermitianOperator<T> {
        if self.potential.is_time_independent() {
            return self.kinetic.clone();
        }
        self.kinetic
            .plus_diagonal(&self.potential_diagonal(t))
            .expect("potential has one entry per lattice point")
    }
}

/// `Ĥ(t) = T̂²/(2μ) + diag(V(n/100, t))`.
pub fn hamiltonian_at<T: Real>(
    grid: GridSpec,
    params: &EvolutionParams<T>,
    pot: &PotentialSpec<T>,
    t: T,
) -> Result<HermitianOperator<T>> {
    params.validate()?;
    Ok(Hamiltonian::new(grid, params.mu, pot.clone())?.at(t))
}

/// `exp(-i·t·H)·ψ0` for a time-independent `H`.
pub fn propagate_static<T: Real>(h: &HermitianOperator<T>, psi0: &StateVector<T>, t: T) -> Result<StateVector<T>> {
    psi0.ensure_grid(h.grid())?;
    psi0.ensure_normalized()?;
    eigendecompose(h)?.evolve(psi0, t)
}

/// States sampled along one run.
#[derive(Debug, Clone)]
pub struct Trajectory<T> {
    pub sample_times: Vec<T>,
    /// Renormalized states, one per sample time.
    pub states: Vec<StateVector<T>>,
    /// Raw `max |‖Φ‖ - 1|` accumulated up to each sample time.
    pub drift_at_samples: Vec<T>,
    /// Raw `max |‖Φ‖ - 1|` over the whole run.
    pub norm_drift: T,
}

impl<T: Real> Trajectory<T> {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn probabilities(&self, i: usize) -> Vec<T> {
        probabilities(&self.states[i]).expect("trajectory states are normalized")
    }
}

/// Converts sample times into step counts, rejecting anything not on the
/// `dt` grid.
fn sample_steps<T: Real>(times: &[T], dt: T) -> Result<Vec<u64>> {
    if times.is_empty() {
        return Err(Error::InvalidArgument("no sample times given".into()));
    }
    let mut steps = Vec::with_capacity(times.len());
    for (i, &t) in times.iter().enumerate() {
        if !(t >= T::zero() && t.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "sample time {t} must be finite and non-negative"
            )));
        }
        if i > 0 && !(t > times[i - 1]) {
            return Err(Error::InvalidArgument(
                "sample times must be strictly increasing".into(),
            ));
        }
        let ratio = t / dt;
        let k = ratio.round();
        let slack = T::lit(1e-9) * T::one().max(ratio);
        if (ratio - k).abs() > slack {
            return Err(Error::InvalidStepSize(format!(
                "sample time {t} is not an integer multiple of dt = {dt}"
            )));
        }
        steps.push(
            k.to_u64()
                .ok_or_else(|| Error::InvalidStepSize(format!("too many steps to reach {t}")))?,
        );
    }
    Ok(steps)
}

fn apply_minus_i<T: Real>(h: &HermitianOperator<T>, x: &[Complex<T>]) -> Vec<Complex<T>> {
    let minus_i = Complex::new(T::zero(), -T::one());
    h.matrix().matvec(x).into_iter().map(|z| z * minus_i).collect()
}

fn rk4_step<T: Real>(ham: &Hamiltonian<T>, psi: &mut StateVector<T>, t: T, dt: T) {
    let half = dt * T::lit(0.5);
    let h0 = ham.at(t);
    let hm = ham.at(t + half);
    let h1 = ham.at(t + dt);
    let x = psi.amplitudes().to_vec();
    let axpy = |a: &[Complex<T>], s: T, b: &[Complex<T>]| -> Vec<Complex<T>> {
        a.iter().zip(b).map(|(x, y)| x + y * s).collect()
    };
    let k1 = apply_minus_i(&h0, &x);
    let k2 = apply_minus_i(&hm, &axpy(&x, half, &k1));
    let k3 = apply_minus_i(&hm, &axpy(&x, half, &k2));
    let k4 = apply_minus_i(&h1, &axpy(&x, dt, &k3));
    let sixth = dt / T::lit(6.0);
    let two = T::lit(2.0);
    for (i, z) in psi.amps_mut().iter_mut().enumerate() {
        *z += (k1[i] + k2[i] * two + k3[i] * two + k4[i]) * sixth;
    }
}

/// Integrates `i ∂Φ/∂t = Ĥ(t)Φ` from `psi0` at `t = 0`, recording the state
/// at each requested sample time.
pub fn integrate_tdse<T: Real>(
    grid: GridSpec,
    params: &EvolutionParams<T>,
    pot: &PotentialSpec<T>,
    psi0: &StateVector<T>,
    sample_times: &[T],
) -> Result<Trajectory<T>> {
    params.validate()?;
    psi0.ensure_grid(grid)?;
    psi0.ensure_normalized()?;
    let steps = sample_steps(sample_times, params.dt)?;
    let ham = Hamiltonian::new(grid, params.mu, pot.clone())?;
    let dt = params.dt;
    let limit: T = params.method.drift_limit();

    // A constant Hamiltonian needs only one exponential.
    let frozen: Option<EigenSystem<T>> = match (params.method, pot.is_time_independent()) {
        (Method::UnitaryMidpoint, true) => Some(eigendecompose(&ham.at(T::zero()))?),
        _ => None,
    };

    let mut psi = psi0.clone();
    let mut drift = T::zero();
    let mut step = 0u64;
    let mut traj = Trajectory {
        sample_times: sample_times.to_vec(),
        states: Vec::with_capacity(steps.len()),
        drift_at_samples: Vec::with_capacity(steps.len()),
        norm_drift: T::zero(),
    };

    for &target in &steps {
        while step < target {
            let t = T::from_u64(step).expect("step count representable") * dt;
            match params.method {
                Method::UnitaryMidpoint => {
                    psi = match &frozen {
                        Some(es) => es.evolve(&psi, dt)?,
                        None => eigendecompose(&ham.at(t + dt * T::lit(0.5)))?.evolve(&psi, dt)?,
                    };
                }
                Method::Rk4 => rk4_step(&ham, &mut psi, t, dt),
            }
            step += 1;
            drift = drift.max((psi.norm() - T::one()).abs());
            if !(drift <= limit) {
                return Err(Error::NormDrift {
                    drift: drift.to_f64().unwrap_or(f64::NAN),
                    limit: limit.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        traj.states.push(normalize(&psi)?);
        traj.drift_at_samples.push(drift);
    }
    traj.norm_drift = drift;
    Ok(traj)
}

/// Most likely lattice return of a state, plus every index whose probability
/// is within [`TIE_TOL`] of the maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MostProbable {
    pub argmax: i64,
    pub tied: Vec<i64>,
}

pub fn most_probable_return<T: Real>(psi: &StateVector<T>) -> Result<MostProbable> {
    let p = probabilities(psi)?;
    let grid = psi.grid();
    let (imax, pmax) = p
        .iter()
        .enumerate()
        .fold((0, p[0]), |(bi, bp), (i, &x)| if x > bp { (i, x) } else { (bi, bp) });
    let tol = T::lit(TIE_TOL);
    let tied = p
        .iter()
        .enumerate()
        .filter(|(_, &x)| pmax - x <= tol)
        .map(|(i, _)| grid.index_at(i))
        .collect();
    Ok(MostProbable {
        argmax: grid.index_at(imax),
        tied,
    })
}

/// The `k` most probable lattice indices, most probable first. Equal
/// probabilities keep lattice order.
pub fn top_returns<T: Real>(psi: &StateVector<T>, k: usize) -> Result<Vec<i64>> {
    let p = probabilities(psi)?;
    let mut idx: Vec<usize> = (0..p.len()).collect();
    idx.sort_by(|&a, &b| p[b].partial_cmp(&p[a]).unwrap_or(std::cmp::Ordering::Equal));
    Ok(idx.into_iter().take(k).map(|i| psi.grid().index_at(i)).collect())
}
