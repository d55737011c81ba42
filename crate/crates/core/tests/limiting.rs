use heunlim::limiting::{
    commuting_params, kernel_matrix, kernel_routes, limiting_ops, projections, solve, KernelRoute, LimitingConfig,
    LimitingTolerances, SpectralRoute,
};
use heunlim::linalg::dense_sym_eig;
use heunlim::orthopoly::{hahn_basis, HahnParams};

fn cfg(a: f64, b: f64, n: usize, j1: usize, j2: usize) -> LimitingConfig<f64> {
    LimitingConfig::new(HahnParams::<f64>::new(a, b, n).unwrap(), j1, j2).unwrap()
}

#[test]
fn two_point_kernel_by_hand() {
    // N = 1, α = β = 0: w = w̃ = (1/2, 1/2), φ₀ = χ₀ = 1
    let c = cfg(0.0, 0.0, 1, 0, 0);
    let basis = hahn_basis(&c.hahn).unwrap();
    let ks = kernel_matrix(&c, &basis, &LimitingTolerances::default()).unwrap();
    for r in KernelRoute::ALL {
        let k = ks.kernel(r);
        assert!((k[(0, 0)] - 0.5).abs() < 1e-15, "{}", r.name());
        assert!((k[(0, 1)] - 0.5).abs() < 1e-15, "{}", r.name());
    }
}

#[test]
fn full_band_kernel_is_identity_block() {
    let c = cfg(0.4, 1.2, 8, 8, 8);
    let basis = hahn_basis(&c.hahn).unwrap();
    let ks = kernel_routes(&c, &basis).unwrap();
    for r in KernelRoute::ALL {
        let k = ks.kernel(r);
        for t in 0..=8 {
            for n in 0..=8 {
                let want = if t == n { 1.0 } else { 0.0 };
                assert!((k[(t, n)] - want).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn traces_and_shared_spectra() {
    let c = cfg(0.3, 0.7, 8, 3, 4);
    let basis = hahn_basis(&c.hahn).unwrap();
    let (p1, p2) = projections(&c, &basis).unwrap();
    let ops = limiting_ops(&p1, &p2).unwrap();
    let tr = ops.v1.matrix().trace();
    assert!((tr - ops.v2.matrix().trace()).abs() < 1e-12);
    assert!((tr - ops.e1.compose(&ops.e2).unwrap().matrix().trace()).abs() < 1e-12);
    assert!((tr - ops.e2.compose(&ops.e1).unwrap().matrix().trace()).abs() < 1e-12);
    let s1 = dense_sym_eig(ops.v1.matrix()).unwrap().values;
    let s2 = dense_sym_eig(ops.v2.matrix()).unwrap().values;
    for (a, b) in s1.iter().zip(&s2) {
        assert!((a - b).abs() < 1e-10);
        assert!(*a >= -1e-10 && *a <= 1.0 + 1e-10);
    }
}

#[test]
fn rank_of_the_limiting_block() {
    let r = solve(&cfg(0.3, 0.7, 8, 5, 2)).unwrap();
    let positive = r.v1_eigs_direct.iter().filter(|&&v| v > 0.0).count();
    assert_eq!(positive, 3);
    let r = solve(&cfg(0.3, 0.7, 8, 3, 4)).unwrap();
    assert!(r.v1_eigs_direct.iter().all(|&v| v > 0.0 && v <= 1.0 + 1e-12));
}

#[test]
fn legendre_type_tau3() {
    for j2 in 0..7 {
        let t = commuting_params(&cfg(0.0, 0.0, 8, 2, j2)).unwrap();
        let want = -(((j2 + 1) * (j2 + 1)) as f64);
        assert_eq!(t.tau3, want);
        assert_eq!(t.tau4, -2.5);
        assert_eq!(t.tau1, t.tau2);
    }
}

#[test]
fn regression_pin() {
    let r = solve(&cfg(0.3, 0.7, 16, 5, 7)).unwrap();
    let sol = r.commuting.as_ref().unwrap();
    assert!(sol.commutator_residuals.0 <= 1e-11 && sol.commutator_residuals.1 <= 1e-11);
    assert!(r.eigenvalue_mismatch <= 1e-9);
    assert!(r.eigenvector_agreement <= 1e-7);
    assert!(r.diagnostics.gap_ratio > 1.0);
    assert!(r.via_m_residual < 1e-12);
}

#[test]
fn boundary_cases_use_projection_answer() {
    let r = solve(&cfg(1.0, 2.0, 6, 2, 6)).unwrap();
    assert_eq!(r.route, SpectralRoute::Analytic);
    assert_eq!(r.v1_eigs_via_m, vec![1.0; 3]);
    let r = solve(&cfg(1.0, 2.0, 6, 6, 6)).unwrap();
    assert_eq!(r.v1_eigs_direct.len(), 7);
    assert!(r.eigenvalue_mismatch < 1e-12);
    let r = solve(&cfg(1.0, 2.0, 6, 6, 1)).unwrap();
    let ones = r.v1_eigs_via_m.iter().filter(|&&v| v == 1.0).count();
    assert_eq!(ones, 2);
    assert!(r.eigenvalue_mismatch < 1e-12);
}

#[test]
fn commuting_params_reject_boundary() {
    assert!(commuting_params(&cfg(0.0, 0.0, 5, 5, 2)).is_err());
    assert!(LimitingConfig::new(HahnParams::<f64>::new(0.0, 0.0, 5).unwrap(), 2, 6).is_err());
}
