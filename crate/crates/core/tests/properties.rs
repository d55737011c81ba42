use heunlim::heun::{heun_hahn, HeunTau};
use heunlim::limiting::{commuting_tau, projection_defect, projections, LimitingConfig, LimitingTolerances};
use heunlim::operators::to_hahn;
use heunlim::orthopoly::{hahn_basis, jacobi_recurrence, HahnParams, JacobiParams};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn recurrence_stays_in_the_support(a in -0.9f64..3.0, b in -0.9f64..3.0) {
        let rec = jacobi_recurrence(&JacobiParams::<f64>::new(a, b).unwrap(), 15).unwrap();
        for n in 0..=15 {
            prop_assert!(rec.b()[n] > 0.0 && rec.b()[n] < 1.0);
            if n > 0 {
                prop_assert!(rec.u(n) > 0.0 && rec.u(n) < 0.25);
            }
        }
    }

    #[test]
    fn commuting_operator_commutes(
        a in -0.9f64..3.0,
        b in -0.9f64..3.0,
        n in 2usize..20,
        f1 in 0.0f64..1.0,
        f2 in 0.0f64..1.0,
    ) {
        let j1 = ((n as f64) * f1) as usize % n;
        let j2 = ((n as f64) * f2) as usize % n;
        let c = LimitingConfig::new(HahnParams::<f64>::new(a, b, n).unwrap(), j1, j2).unwrap();
        let basis = hahn_basis(&c.hahn).unwrap();
        let (p1, p2) = projections(&c, &basis).unwrap();
        prop_assert!(projection_defect(&p1) <= 1e-12 && projection_defect(&p2) <= 1e-12);
        let sol = commuting_tau(&c, &basis, &LimitingTolerances::default()).unwrap();
        prop_assert!(sol.commutator_residuals.0 <= 1e-10 && sol.commutator_residuals.1 <= 1e-10);
    }

    #[test]
    fn hahn_heun_is_tridiagonal_in_hahn_basis(
        a in -0.9f64..3.0,
        b in -0.9f64..3.0,
        t in prop::array::uniform5(-2.0f64..2.0),
    ) {
        let p = HahnParams::<f64>::new(a, b, 10).unwrap();
        let basis = hahn_basis(&p).unwrap();
        let w = to_hahn(&heun_hahn(&HeunTau::new(t), &p).unwrap(), &basis).unwrap();
        prop_assert!(w.matrix().off_band_norm(1) <= 1e-10 * w.matrix().frobenius());
    }
}
