use mtc_core::category_data::{builtin_category, load_category_spec, serialize_category_spec};
use mtc_core::suite::*;
use mtc_core::{MtcError, Status, ToleranceConfig};

fn options(suites: &str) -> SuiteOptions {
    SuiteOptions {
        suites: parse_suites(suites).unwrap(),
        ..SuiteOptions::default()
    }
}

#[test]
fn n_range_parsing() {
    assert_eq!(parse_n_range("-2..2").unwrap(), (-2, 2));
    assert_eq!(parse_n_range("3").unwrap(), (3, 3));
    assert_eq!(parse_n_range(" -1 .. 0 ").unwrap(), (-1, 0));
    for bad in ["2..-2", "a..b", "", "1..", "..1"] {
        assert!(matches!(parse_n_range(bad), Err(MtcError::InvalidOption(_))), "{bad}");
    }
}

#[test]
fn suite_parsing_sorts_and_dedups() {
    assert_eq!(parse_suites("cft,coherence,cft").unwrap(), vec![Suite::Coherence, Suite::Cft]);
    assert!(parse_suites("nope").is_err());
    for s in Suite::ALL {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
    }
}

#[test]
fn tolerance_bounds() {
    assert!(checked_tolerance(1e-9).is_ok());
    for bad in [0.0, -1.0, 0.5, f64::NAN] {
        assert!(checked_tolerance(bad).is_err(), "{bad}");
    }
}

#[test]
fn fibonacci_passes_every_suite() {
    let report = run_target("fibonacci", &SuiteOptions::default()).unwrap();
    assert_eq!(report.exit_code(), 0, "{:?}", report.first_failure());
    assert_eq!(report.summary.failed, 0);
    assert_eq!(report.summary.skipped, 0);
    assert!(report.checks.iter().all(|c| c.wall_time.is_none()));
    let back = SuiteReport::from_json(&report.to_json()).unwrap();
    assert_eq!(back, report);
}

#[test]
fn reports_are_deterministic() {
    let opts = options("coherence,frobenius,cft");
    let a = run_target("ising", &opts).unwrap().to_json();
    let b = run_target("ising", &opts).unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn timings_are_recorded_on_request() {
    let opts = SuiteOptions {
        timings: true,
        ..options("coherence")
    };
    let report = run_target("semion", &opts).unwrap();
    assert!(report.checks.iter().all(|c| c.wall_time.is_some()));
}

#[test]
fn non_modular_input_runs_premodular_profile() {
    let report = run_target("rep_z2_symmetric", &SuiteOptions::default()).unwrap();
    assert_eq!(report.exit_code(), 0, "{:?}", report.first_failure());
    assert!(report.summary.skipped > 0);
    let azumaya: Vec<_> = report.checks.iter().filter(|c| c.name.starts_with("azumaya.")).collect();
    assert!(!azumaya.is_empty());
    assert!(azumaya
        .iter()
        .any(|c| c.note.as_deref().is_some_and(|n| n.contains("non-modular"))));
}

fn corrupted_fibonacci() -> String {
    let spec = builtin_category("fibonacci").unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&serialize_category_spec(&spec)).unwrap();
    let r = value["R"].as_array_mut().unwrap();
    let last = r.last_mut().unwrap().as_array_mut().unwrap();
    let n = last.len();
    last[n - 2] = serde_json::json!(0.3);
    last[n - 1] = serde_json::json!(0.1);
    value.to_string()
}

#[test]
fn corrupted_braiding_is_reported() {
    let spec = load_category_spec(&corrupted_fibonacci()).unwrap();
    let report = run_suite("bad", &spec, &SuiteOptions::default());
    assert_eq!(report.exit_code(), 1);
    let first = report.first_failure().unwrap();
    assert_eq!(first.name, "hexagon.over");
}

#[test]
fn corrupted_input_fails_even_without_coherence_suite() {
    let spec = load_category_spec(&corrupted_fibonacci()).unwrap();
    let report = run_suite("bad", &spec, &options("frobenius,cft"));
    assert_eq!(report.exit_code(), 1);
    assert_eq!(report.first_failure().unwrap().name, "coherence.precondition");
    assert!(report.checks.iter().all(|c| c.status != Status::Pass));
}

#[test]
fn unknown_target_is_an_error() {
    assert!(matches!(
        run_target("no-such-category", &SuiteOptions::default()),
        Err(MtcError::UnknownBuiltin { .. })
    ));
}

#[test]
fn permutation_enumeration() {
    assert_eq!(all_permutations(0), vec![Vec::<usize>::new()]);
    let p3 = all_permutations(3);
    assert_eq!(p3.len(), 6);
    assert_eq!(p3[0], vec![0, 1, 2]);
    assert_eq!(p3[5], vec![2, 1, 0]);
}

#[test]
fn compute_commands() {
    let tol = ToleranceConfig::default();
    let fib = builtin_category("fibonacci").unwrap();

    let xi = compute(ComputeCommand::Xi, &fib, &ComputeArgs::default(), &tol).unwrap();
    let vals = xi.json["xi"].as_array().unwrap();
    assert!((vals[0]["re"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!(vals[1]["re"].as_f64().unwrap().abs() < 1e-9);
    assert_eq!(xi.json["is_azumaya"], true);

    let tau = || Some("τ".to_string());
    let args = ComputeArgs {
        i: tau(),
        j: tau(),
        k: tau(),
        l: tau(),
        ..ComputeArgs::default()
    };
    let annulus = compute(ComputeCommand::Annulus, &fib, &args, &tol).unwrap();
    assert_eq!(annulus.json["value"], 2);
    assert_eq!(annulus.text.trim(), "2");

    let z = compute(ComputeCommand::Z, &fib, &ComputeArgs::default(), &tol).unwrap();
    assert_eq!(z.json["dim"], 4);
    assert_eq!(z.json["triples"].as_array().unwrap().len(), 4);

    let missing = compute(ComputeCommand::Annulus, &fib, &ComputeArgs::default(), &tol);
    assert!(matches!(missing, Err(MtcError::InvalidOption(_))));
    assert!("bogus".parse::<ComputeCommand>().is_err());
}

#[test]
fn label_parsing() {
    let fib = builtin_category("fibonacci").unwrap();
    assert_eq!(parse_label(&fib, "τ").unwrap(), 1);
    assert_eq!(parse_label(&fib, "0").unwrap(), 0);
    assert!(matches!(parse_label(&fib, "7"), Err(MtcError::InvalidLabel { label: 7, rank: 2 })));
    assert!(parse_label(&fib, "sigma").is_err());
}
