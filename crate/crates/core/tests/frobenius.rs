use mtc_core::category_data::{builtin_catalog, builtin_category, modular_datum, C64};
use mtc_core::engine::Crossing;
use mtc_core::frobenius::*;
use mtc_core::{MtcError, ToleranceConfig};

const FROB_TOL: f64 = 1e-8;

fn modular_builtins() -> Vec<&'static str> {
    let tol = ToleranceConfig::default();
    builtin_catalog()
        .into_iter()
        .filter(|n| modular_datum(&builtin_category(n).unwrap(), &tol).is_modular)
        .collect()
}

#[test]
fn axioms_hold_at_every_level() {
    for name in builtin_catalog() {
        let spec = builtin_category(name).unwrap();
        for n in -2..=2 {
            let alg = build_frobenius_algebra(&spec, n).unwrap();
            let report = verify_frobenius_axioms(&alg, FROB_TOL).unwrap();
            assert!(report.all_passed(), "{name} n={n}: {:?}", report.first_failure());
        }
    }
}

#[test]
fn dimension_is_global_dimension() {
    for name in builtin_catalog() {
        let spec = builtin_category(name).unwrap();
        let alg = build_frobenius_algebra(&spec, 0).unwrap();
        assert!((alg.dimension() - spec.global_dim()).abs() < 1e-12, "{name}");
    }
}

#[test]
fn sigma_intertwines_levels() {
    let tol = ToleranceConfig::default();
    for name in ["fibonacci", "ising", "z_3(1)"] {
        let spec = builtin_category(name).unwrap();
        let algs: Vec<_> = (-2..=2).map(|n| build_frobenius_algebra(&spec, n).unwrap()).collect();
        for w in algs.windows(2) {
            let (_, report) = sigma_isomorphism(&w[0], &w[1], &tol).unwrap();
            assert!(report.all_passed(), "{name}: {:?}", report.first_failure());
        }
        let (_, report) = sigma_isomorphism(&algs[0], &algs[4], &tol).unwrap();
        assert!(report.all_passed());
        for alg in &algs {
            assert!(phi_level_deviation(alg, &algs[2]).unwrap() < FROB_TOL);
        }
    }
}

#[test]
fn sigma_is_not_identity_on_levels() {
    let spec = builtin_category("fibonacci").unwrap();
    let a0 = build_frobenius_algebra(&spec, 0).unwrap();
    let a1 = build_frobenius_algebra(&spec, 1).unwrap();
    assert!(a0.product.distance(&a1.product) > 1e-3);
}

#[test]
fn product_is_basis_independent() {
    for name in ["ising", "z_4(1)"] {
        let spec = builtin_category(name).unwrap();
        let plain = build_frobenius_algebra(&spec, 1).unwrap();
        let twisted = build_with_phases(&spec, 1, &random_phases(&spec, 11)).unwrap();
        assert!(plain.product.distance(&twisted.product) < FROB_TOL);
        assert!(plain.coproduct.distance(&twisted.coproduct) < FROB_TOL);
    }
}

#[test]
fn center_is_trivial_for_modular_inputs() {
    let tol = ToleranceConfig::default();
    for name in modular_builtins() {
        let spec = builtin_category(name).unwrap();
        for n in -1..=1 {
            let alg = build_frobenius_algebra(&spec, n).unwrap();
            let c = left_center_idempotent(&alg, &tol).unwrap();
            assert!(c.idempotency_defect < 1e-9, "{name} n={n}");
            assert!(c.p.distance(&alg.trivial_center().unwrap()) < FROB_TOL, "{name} n={n}");
            assert!(c.is_trivial);
            let mut want = vec![0; spec.rank()];
            want[0] = 1;
            assert_eq!(c.rank_per_component, want);
        }
    }
}

#[test]
fn center_agrees_with_scalar_formula_for_both_crossings() {
    for name in builtin_catalog() {
        let spec = builtin_category(name).unwrap();
        let xi = xi_values(&spec);
        let alg = build_frobenius_algebra(&spec, 0).unwrap();
        for crossing in [Crossing::Over, Crossing::Under] {
            let p = alg.center_idempotent_with(crossing).unwrap();
            for (i, z) in xi.iter().enumerate() {
                assert!((p.scalar_part(i, i) - z).norm() < 1e-9, "{name} {i}");
            }
        }
    }
}

#[test]
fn xi_oracles() {
    let tol = ToleranceConfig::default();
    // Fibonacci τ-entry vanishes because 1 + ϑ² + φϑ = 0 at ϑ = e^{4πi/5}.
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let t = C64::from_polar(1.0, 4.0 * std::f64::consts::PI / 5.0);
    assert!((C64::new(1.0, 0.0) + t * t + t * phi).norm() < 1e-12);

    for name in builtin_catalog() {
        let spec = builtin_category(name).unwrap();
        let xi = xi_values(&spec);
        assert!((xi[0] - C64::new(1.0, 0.0)).norm() < 1e-9, "{name}");
    }
    for name in modular_builtins() {
        let (xi, az) = xi_azumaya(&builtin_category(name).unwrap(), &tol).unwrap();
        assert!(az, "{name}");
        assert!(xi[1..].iter().all(|z| z.norm() < 1e-9));
    }
}

#[test]
fn symmetric_control_is_not_azumaya() {
    let tol = ToleranceConfig::default();
    let spec = builtin_category("rep_z2_symmetric").unwrap();
    let (xi, az) = xi_azumaya(&spec, &tol).unwrap();
    assert!(!az);
    assert!(xi.iter().all(|z| (z - C64::new(1.0, 0.0)).norm() < 1e-12));
    let alg = build_frobenius_algebra(&spec, 0).unwrap();
    let c = left_center_idempotent(&alg, &tol).unwrap();
    assert_eq!(c.rank_per_component, vec![1, 1]);
    assert!(!c.is_trivial);
    assert!(c.idempotency_defect < 1e-12);
}

#[test]
fn inconsistent_twists_are_rejected() {
    let tol = ToleranceConfig::default();
    let mut spec = builtin_category("fibonacci").unwrap();
    spec.ribbon.twists[1] = C64::new(0.0, 1.0);
    assert!(matches!(xi_azumaya(&spec, &tol), Err(MtcError::XiNotZeroOne { index: 1, .. })));
}
