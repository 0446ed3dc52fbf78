#![allow(dead_code)]

use std::sync::OnceLock;

use qmarket_core::{
    gaussian_state, integrate_tdse, EvolutionParams, GridSpec, Method, StateVector, ThetaGaussianSpec, Trajectory,
};

pub const SAMPLE_TIMES: [f64; 6] = [0.0, 1800.0, 3600.0, 7200.0, 14400.0, 28800.0];

/// Bar heights of the reference return distributions at t = 1800, 14400 and
/// 28800 s for α=0.2, μ=1, β=0.1, ω=1e-4, in plot units where 0.15 of
/// probability spans 6.75 units.
pub const PLOT_UNITS_PER_PROB: f64 = 45.0;
pub const REFERENCE_BARS: [(f64, [f64; 21]); 3] = [
    (
        1800.0,
        [
            0.23069, 0.31801, 0.59318, 1.29181, 2.16144, 3.37613, 4.62276, 5.65583, 6.13359, 5.91867, 5.07290, 3.87041,
            2.62170, 1.57189, 0.83793, 0.41563, 0.20245, 0.08433, 0.01885, 0.00133, 0.00047,
        ],
    ),
    (
        14400.0,
        [
            0.22142, 0.15772, 0.03522, 0.10466, 1.14867, 1.17518, 4.15439, 11.43886, 11.10236, 6.50992, 3.60920,
            2.22168, 1.37579, 0.74373, 0.35260, 0.22090, 0.12321, 0.03390, 0.08147, 0.05860, 0.13052,
        ],
    ),
    (
        28800.0,
        [
            0.01781, 0.17846, 0.00218, 0.23587, 0.50558, 1.03165, 0.67882, 0.12255, 0.31818, 1.21771, 0.48644, 2.70926,
            3.97091, 6.96429, 7.95978, 6.08198, 5.51983, 4.60327, 1.63150, 0.60217, 0.16176,
        ],
    ),
];

pub fn grid10() -> GridSpec {
    GridSpec::new(10).unwrap()
}

pub fn gamma(alpha: f64, grid: GridSpec) -> StateVector<f64> {
    gaussian_state(&ThetaGaussianSpec::new(alpha, grid).unwrap()).unwrap()
}

pub fn market_params(dt: f64, method: Method) -> EvolutionParams<f64> {
    EvolutionParams::new(1.0, 0.1, 1e-4, dt, method).unwrap()
}

pub fn run_market(dt: f64, method: Method) -> Trajectory<f64> {
    let p = market_params(dt, method);
    integrate_tdse(grid10(), &p, &p.potential(), &gamma(0.2, grid10()), &SAMPLE_TIMES).unwrap()
}

/// Default run (unitary midpoint, dt = 1), computed once per test binary.
pub fn market_run() -> &'static Trajectory<f64> {
    static RUN: OnceLock<Trajectory<f64>> = OnceLock::new();
    RUN.get_or_init(|| run_market(1.0, Method::UnitaryMidpoint))
}

pub fn sample_index(t: f64) -> usize {
    SAMPLE_TIMES.iter().position(|&s| s == t).unwrap()
}

pub fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}
