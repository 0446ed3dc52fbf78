//! Property tests for the lattice, transform, operator and Gaussian invariants.

mod common;

use num_complex::Complex64 as C;
use proptest::prelude::*;
use qmarket_core::*;

fn grid_strategy() -> impl Strategy<Value = GridSpec> {
    prop_oneof![Just(1usize), Just(10), Just(50)].prop_map(|q| GridSpec::new(q).unwrap())
}

fn state_strategy() -> impl Strategy<Value = StateVector64> {
    grid_strategy().prop_flat_map(|grid| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), grid.dim()).prop_map(move |v| {
            StateVector::from_amplitudes(grid, v.into_iter().map(|(re, im)| C::new(re, im)).collect()).unwrap()
        })
    })
}

fn state_pair() -> impl Strategy<Value = (StateVector64, StateVector64)> {
    grid_strategy().prop_flat_map(|grid| {
        let v = move || {
            prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), grid.dim()).prop_map(move |v| {
                StateVector::from_amplitudes(grid, v.into_iter().map(|(re, im)| C::new(re, im)).collect()).unwrap()
            })
        };
        (v(), v())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transform_is_unitary(psi in state_strategy()) {
        prop_assert!((dft_forward(&psi).norm() - psi.norm()).abs() <= 1e-12);
        prop_assert!((dft_inverse(&psi).norm() - psi.norm()).abs() <= 1e-12);
    }

    #[test]
    fn transform_inverts(psi in state_strategy()) {
        prop_assert!(dft_inverse(&dft_forward(&psi)).max_abs_diff(&psi).unwrap() <= 1e-12);
        prop_assert!(dft_forward(&dft_inverse(&psi)).max_abs_diff(&psi).unwrap() <= 1e-12);
    }

    #[test]
    fn transform_preserves_inner_products((a, b) in state_pair()) {
        let lhs = inner_product(&dft_forward(&a), &dft_forward(&b)).unwrap();
        prop_assert!((lhs - inner_product(&a, &b).unwrap()).norm() <= 1e-12);
    }

    #[test]
    fn probabilities_sum_to_one(psi in state_strategy()) {
        prop_assume!(psi.norm_sqr() > 1e-6);
        let p = probabilities(&normalize(&psi).unwrap()).unwrap();
        prop_assert!(p.iter().all(|&x| x >= 0.0));
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn trend_expectation_matches_fourier_weights(psi in state_strategy()) {
        prop_assume!(psi.norm_sqr() > 1e-6);
        let psi = normalize(&psi).unwrap();
        let grid = psi.grid();
        let f = dft_forward(&psi);
        let weighted: f64 = f.iter().map(|(k, a)| k as f64 / 100.0 * a.norm_sqr()).sum();
        prop_assert!((expectation(&op_trend(grid), &psi).unwrap() - weighted).abs() <= 1e-10);
    }

    #[test]
    fn eigendecomposition_reconstructs(
        entries in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 21 * 21)
    ) {
        let grid = common::grid10();
        let mut m = CMatrix::from_fn(21, |i, j| {
            let (re, im) = entries[i * 21 + j];
            C::new(re, im)
        });
        m.symmetrize();
        let op = HermitianOperator::new(grid, m.clone()).unwrap();
        let es = eigendecompose(&op).unwrap();
        prop_assert!(es.reconstruct().max_abs_diff(&m) <= 1e-9);
        let v = es.vector_matrix();
        prop_assert!(v.adjoint().matmul(v).max_abs_diff(&CMatrix::identity(21)) <= 1e-10);
    }

    #[test]
    fn g_alpha_is_even_and_positive(alpha in 0.01f64..20.0, q in 1usize..30) {
        let grid = GridSpec::new(q).unwrap();
        let spec = ThetaGaussianSpec::new(alpha, grid).unwrap();
        for n in 0..=q as i64 {
            let a = g_alpha(&spec, n).unwrap();
            // The leading image can underflow for wide grids and large alpha.
            let leading = (-alpha * std::f64::consts::PI * (n * n) as f64 / grid.dim() as f64).exp();
            prop_assert!(a >= leading * (1.0 - 1e-12) && (leading == 0.0 || a > 0.0));
            prop_assert_eq!(a, g_alpha(&spec, -n).unwrap());
        }
    }

    #[test]
    fn truncation_is_sound(alpha in 0.01f64..20.0, q in 1usize..30) {
        let grid = GridSpec::new(q).unwrap();
        let spec = ThetaGaussianSpec::new(alpha, grid).unwrap();
        for n in grid.indices() {
            let m = spec.cutoff(n).unwrap();
            let extended = spec.partial_sum(n, m + 2);
            prop_assert!((extended - g_alpha(&spec, n).unwrap()).abs() <= spec.truncation_tol());
        }
    }

    #[test]
    fn gaussian_has_zero_mean_return(alpha in 0.05f64..10.0) {
        let grid = common::grid10();
        let g = common::gamma(alpha, grid);
        prop_assert!((g.norm_sqr() - 1.0).abs() <= 1e-12);
        prop_assert!(expectation(&op_rate_of_return(grid), &g).unwrap().abs() <= 1e-12);
    }
}

#[test]
fn ruzzi_identity_over_parameter_grid() {
    for &alpha in &[0.2, 0.5, 1.0, 2.0, 5.0] {
        for q in [5usize, 10, 25] {
            let dev = check_ruzzi(alpha, GridSpec::new(q).unwrap()).unwrap();
            assert!(dev <= 1e-10, "alpha={alpha} q={q}: {dev:e}");
        }
    }
}

fn variance(grid: GridSpec, p: &[f64]) -> f64 {
    let mean: f64 = grid.indices().zip(p).map(|(n, w)| n as f64 * w).sum();
    grid.indices().zip(p).map(|(n, w)| (n as f64 - mean).powi(2) * w).sum()
}

#[test]
fn fourier_width_duality() {
    let grid = common::grid10();
    let alphas = [0.1, 0.2, 0.5, 1.0, 2.0, 5.0];
    let mut last: Option<(f64, f64)> = None;
    for &a in &alphas {
        let g = common::gamma(a, grid);
        let vx = variance(grid, &probabilities(&g).unwrap());
        let vk = variance(grid, &probabilities(&dft_forward(&g)).unwrap());
        if let Some((px, pk)) = last {
            assert!(vx < px, "return variance must shrink as alpha grows");
            assert!(vk > pk, "trend variance must grow as alpha grows");
        }
        last = Some((vx, vk));
    }
}

#[test]
fn trend_and_return_share_spectrum() {
    for q in [1usize, 10, 25] {
        let grid = GridSpec::new(q).unwrap();
        let er = eigendecompose(&op_rate_of_return::<f64>(grid)).unwrap();
        let et = eigendecompose(&op_trend::<f64>(grid)).unwrap();
        for (n, (a, b)) in grid.indices().zip(er.eigenvalues().iter().zip(et.eigenvalues())) {
            assert!((a - n as f64 / 100.0).abs() <= 1e-10);
            assert!((b - n as f64 / 100.0).abs() <= 1e-10);
        }
    }
}
