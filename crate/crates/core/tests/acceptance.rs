//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use mtc_core::category_data::{
    builtin_catalog, builtin_category, modular_datum, modular_group_relations, validate_category, verlinde_fusion,
    CategorySpec, C64,
};
use mtc_core::cft::{
    annulus_coefficients, check_modular_invariance, compose_permutations, permutation_matrix, permutation_z_nfold,
    transposition_z,
};
use mtc_core::engine::Engine;
use mtc_core::frobenius::{
    build_frobenius_algebra, left_center_idempotent, sigma_isomorphism, verify_frobenius_axioms, xi_values,
};
use mtc_core::module_category::{
    check_module_pentagon, gamma_twist_functor, transposition_nat_iso, twist_round_trip, Sample, Side,
};
use mtc_core::suite::{all_permutations, run_suite, Suite, SuiteOptions};
use mtc_core::{Result, ToleranceConfig};

const COHERENCE_TOL: f64 = 1e-9;
const SNAP_TOL: f64 = 1e-6;
const RELATION_TOL: f64 = 1e-9;
const PENTAGON_TOL: f64 = 1e-9;
const FUNCTOR_TOL: f64 = 1e-9;
const TWIST_TOL: f64 = 1e-12;
const WITNESS_TOL: f64 = 1e-9;
const FROBENIUS_TOL: f64 = 1e-8;
const SIGMA_TOL: f64 = 1e-9;
const XI_TOL: f64 = 1e-9;
const CENTER_TOL: f64 = 1e-8;
const INVARIANT_TOL: f64 = 1e-9;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn measured(dev: f64, tol: f64) -> Self {
        Outcome {
            passed: dev <= tol,
            detail: format!("max deviation {dev:.3e}, tolerance {tol:.0e}"),
        }
    }

    fn exact(mismatches: usize, what: &str) -> Self {
        Outcome {
            passed: mismatches == 0,
            detail: format!("{mismatches} mismatches over {what}"),
        }
    }

    fn and(self, other: Outcome) -> Self {
        Outcome {
            passed: self.passed && other.passed,
            detail: format!("{}; {}", self.detail, other.detail),
        }
    }
}

fn spec(name: &str) -> CategorySpec {
    builtin_category(name).expect("built-in resolves")
}

fn modular_names() -> Vec<&'static str> {
    let tol = ToleranceConfig::default();
    builtin_catalog()
        .into_iter()
        .filter(|n| modular_datum(&spec(n), &tol).is_modular)
        .collect()
}

fn tol_at(atol: f64) -> ToleranceConfig {
    ToleranceConfig::with_atol(atol)
}

fn coherence() -> Result<Outcome> {
    let mut dev: f64 = 0.0;
    let mut failed = 0;
    for name in builtin_catalog() {
        let report = validate_category(&spec(name), &tol_at(COHERENCE_TOL));
        failed += report.checks.iter().filter(|c| !c.passed()).count();
        for key in ["pentagon", "hexagon.over", "hexagon.under", "ribbon.double_braiding"] {
            dev = dev.max(report.get(key).map_or(f64::INFINITY, |c| c.max_deviation));
        }
    }
    Ok(Outcome::measured(dev, COHERENCE_TOL).and(Outcome::exact(failed, "all coherence checks")))
}

fn verlinde() -> Result<Outcome> {
    let tol = ToleranceConfig {
        atol: RELATION_TOL,
        integer_snap: SNAP_TOL,
    };
    let mut snap: f64 = 0.0;
    let mut mismatches = 0;
    for name in modular_names() {
        let s = spec(name);
        let v = verlinde_fusion(&modular_datum(&s, &tol), &tol)?;
        snap = snap.max(v.max_snap_distance);
        mismatches += v.n.iter().zip(s.ring.tensor()).filter(|(a, b)| a != b).count();
    }
    Ok(Outcome::measured(snap, SNAP_TOL).and(Outcome::exact(mismatches, "fusion tensors")))
}

fn sl2z() -> Result<Outcome> {
    let tol = tol_at(RELATION_TOL);
    let mut dev: f64 = 0.0;
    for name in modular_names() {
        let (gamma, report) = modular_group_relations(&modular_datum(&spec(name), &tol), &tol)?;
        dev = dev.max(report.max_deviation("sl2z")).max((gamma.norm() - 1.0).abs());
    }
    Ok(Outcome::measured(dev, RELATION_TOL))
}

fn module_pentagon() -> Result<Outcome> {
    let tol = tol_at(PENTAGON_TOL);
    let mut dev: f64 = 0.0;
    for name in ["fibonacci", "semion", "ising"] {
        let e = Engine::new(&spec(name))?;
        for n in -2..=2 {
            for side in [Side::Right, Side::Left] {
                let r = check_module_pentagon(&e, n, side, Sample::AllSimples, &tol)?;
                dev = dev.max(r.max_deviation("module."));
            }
        }
    }
    Ok(Outcome::measured(dev, PENTAGON_TOL))
}

fn twist_functor() -> Result<Outcome> {
    let tol = tol_at(FUNCTOR_TOL);
    let mut dev: f64 = 0.0;
    for name in ["fibonacci", "semion", "ising"] {
        let e = Engine::new(&spec(name))?;
        for n in -2..=1 {
            dev = dev.max(gamma_twist_functor(&e, n, &tol)?.1.max_deviation("gamma."));
        }
    }
    let mut round_trip: f64 = 0.0;
    for name in builtin_catalog() {
        let e = Engine::new(&spec(name))?;
        round_trip = round_trip.max(twist_round_trip(&e, &tol_at(TWIST_TOL))?.max_deviation("gamma.twist_round_trip"));
    }
    Ok(Outcome::measured(dev, FUNCTOR_TOL).and(Outcome::measured(round_trip, TWIST_TOL)))
}

fn witness() -> Result<Outcome> {
    let tol = tol_at(WITNESS_TOL);
    let mut dev: f64 = 0.0;
    for name in ["fibonacci", "ising"] {
        let e = Engine::new(&spec(name))?;
        for u in 0..e.rank() {
            for v in 0..e.rank() {
                dev = dev.max(transposition_nat_iso(&e, u, v, &tol)?.max_deviation("witness."));
            }
        }
    }
    Ok(Outcome::measured(dev, WITNESS_TOL))
}

fn frobenius() -> Result<Outcome> {
    let tol = tol_at(SIGMA_TOL);
    let (mut axioms, mut sigma): (f64, f64) = (0.0, 0.0);
    for name in ["fibonacci", "semion"] {
        let s = spec(name);
        let algs: Vec<_> = (-2..=2).map(|n| build_frobenius_algebra(&s, n)).collect::<Result<_>>()?;
        for alg in &algs {
            axioms = axioms.max(verify_frobenius_axioms(alg, FROBENIUS_TOL)?.max_deviation("frobenius."));
        }
        for w in algs.windows(2) {
            sigma = sigma.max(sigma_isomorphism(&w[0], &w[1], &tol)?.1.max_deviation("sigma."));
        }
    }
    Ok(Outcome::measured(axioms, FROBENIUS_TOL).and(Outcome::measured(sigma, SIGMA_TOL)))
}

fn azumaya() -> Result<Outcome> {
    let tol = tol_at(XI_TOL);
    let (mut xi_dev, mut p_dev): (f64, f64) = (0.0, 0.0);
    for name in modular_names() {
        let s = spec(name);
        for (i, z) in xi_values(&s).iter().enumerate() {
            let want = if i == 0 { 1.0 } else { 0.0 };
            xi_dev = xi_dev.max((z - C64::new(want, 0.0)).norm());
        }
        for n in -1..=1 {
            let alg = build_frobenius_algebra(&s, n)?;
            let c = left_center_idempotent(&alg, &tol)?;
            p_dev = p_dev.max(c.p.distance(&alg.trivial_center()?));
        }
    }
    let control = spec("rep_z2_symmetric");
    let xi_ok = xi_values(&control).iter().all(|z| (z - C64::new(1.0, 0.0)).norm() <= XI_TOL);
    let alg = build_frobenius_algebra(&control, 0)?;
    let ranks = left_center_idempotent(&alg, &tol)?.rank_per_component;
    let control_ok = Outcome {
        passed: xi_ok && ranks == vec![1, 1],
        detail: format!("control xi = (1,1): {xi_ok}, rank vector {ranks:?}"),
    };
    Ok(Outcome::measured(xi_dev, XI_TOL)
        .and(Outcome::measured(p_dev, CENTER_TOL))
        .and(control_ok))
}

fn permutation_invariant() -> Result<Outcome> {
    let tol = tol_at(INVARIANT_TOL);
    let mut dev: f64 = 0.0;
    for name in modular_names() {
        let s = spec(name);
        let r = check_modular_invariance(&transposition_z(&s), &s, &tol)?;
        dev = dev.max(r.max_deviation("z."));
    }
    let fib = spec("fibonacci");
    let s3 = all_permutations(3);
    let mut failures = 0;
    for g in &s3 {
        let zg = permutation_z_nfold(&fib, g)?;
        failures += usize::from(zg.z != permutation_matrix(2, g));
        for h in &s3 {
            let zh = permutation_z_nfold(&fib, h)?;
            let zgh = permutation_z_nfold(&fib, &compose_permutations(g, h))?;
            failures += usize::from(zgh.z != &zg.z * &zh.z);
        }
    }
    Ok(Outcome::measured(dev, INVARIANT_TOL).and(Outcome::exact(failures, "S3 products")))
}

fn annulus() -> Result<Outcome> {
    let mut mismatches = 0;
    let mut total = 0;
    for name in builtin_catalog() {
        let s = spec(name);
        let e = Engine::new(&s)?;
        let r = s.rank();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let trees = e.hom_dims(&[i, j, k])?;
                    for (l, &count) in trees.iter().enumerate() {
                        total += 1;
                        mismatches += usize::from(annulus_coefficients(&s, i, j, k, l) != count as u64);
                    }
                }
            }
        }
    }
    Ok(Outcome::exact(mismatches, &format!("{total} index quadruples")))
}

fn determinism() -> Result<Outcome> {
    let mut differing = 0;
    for (name, suites) in [("fibonacci", Suite::ALL.to_vec()), ("z_4(1)", vec![Suite::Module, Suite::Cft])] {
        let s = spec(name);
        let options = SuiteOptions {
            seed: 42,
            suites,
            ..SuiteOptions::default()
        };
        let a = run_suite(name, &s, &options).to_json();
        let b = run_suite(name, &s, &options).to_json();
        differing += usize::from(a != b);
    }
    Ok(Outcome::exact(differing, "repeated JSON reports"))
}

fn main() -> ExitCode {
    type Criterion = (usize, &'static str, fn() -> Result<Outcome>);
    let criteria: [Criterion; 11] = [
        (1, "coherence of all built-ins", coherence),
        (2, "Verlinde round trip", verlinde),
        (3, "modular group relations", sl2z),
        (4, "module pentagon, both sides, n in -2..2", module_pentagon),
        (5, "twist module functor and twist round trip", twist_functor),
        (6, "transposition witness", witness),
        (7, "Frobenius axioms and sigma intertwiners", frobenius),
        (8, "Azumaya certificate and symmetric control", azumaya),
        (9, "permutation invariant and S3 homomorphism", permutation_invariant),
        (10, "annulus coefficients against fusion trees", annulus),
        (11, "deterministic JSON reports", determinism),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (id, title, run) in criteria {
        let t = Instant::now();
        let outcome = run().unwrap_or_else(|e| Outcome {
            passed: false,
            detail: format!("error: {e}"),
        });
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        failed += usize::from(!outcome.passed);
        println!(
            "criterion {id:>2}: {status}  {title} ({}) [{:.2}s]",
            outcome.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of 11 criteria passed in {:.1}s",
        11 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
