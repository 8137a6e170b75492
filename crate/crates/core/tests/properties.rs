use mtc_core::category_data::{builtin_category, load_category_spec, serialize_category_spec, z_n};
use mtc_core::deligne::ProductLabel;
use mtc_core::engine::{Crossing, Engine};
use mtc_core::frobenius::{build_frobenius_algebra, build_with_phases, random_phases};
use mtc_core::report::{Check, Status, Summary};
use mtc_core::suite::{SuiteOptions, SuiteReport, TOOL_VERSION};
use mtc_core::Morphism;
use proptest::prelude::*;

fn crossing(over: bool) -> Crossing {
    if over {
        Crossing::Over
    } else {
        Crossing::Under
    }
}

/// Applies generators in order starting from `word`; returns the composite.
fn braid_word(e: &Engine, word: &[usize], gens: &[(usize, bool)]) -> Morphism {
    let mut acc = e.identity(word).unwrap();
    for &(p, over) in gens {
        let g = e.generator(&acc.target, p, crossing(over)).unwrap();
        acc = acc.then(&g).unwrap();
    }
    acc
}

fn gens_strategy(len: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0..len - 1, any::<bool>()), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn braid_word_times_inverse_is_identity(
        cat in prop::sample::select(vec!["fibonacci", "ising", "z_3(1)"]),
        raw in prop::collection::vec(0usize..3, 3..5),
        gens in gens_strategy(3),
    ) {
        let spec = builtin_category(cat).unwrap();
        let e = Engine::new(&spec).unwrap();
        let word: Vec<usize> = raw.iter().map(|&x| x % spec.rank()).collect();
        let forward = braid_word(&e, &word, &gens);
        let inverse: Vec<(usize, bool)> = gens.iter().rev().map(|&(p, o)| (p, !o)).collect();
        let round = forward.then(&braid_word(&e, &forward.target, &inverse)).unwrap();
        prop_assert!(round.distance(&e.identity(&word).unwrap()) < 1e-9);
        prop_assert!(forward.unitarity_deviation() < 1e-9);
    }

    #[test]
    fn braid_relation_on_random_words(
        cat in prop::sample::select(vec!["fibonacci", "ising"]),
        raw in prop::collection::vec(0usize..3, 3),
        over in any::<bool>(),
    ) {
        let spec = builtin_category(cat).unwrap();
        let e = Engine::new(&spec).unwrap();
        let word: Vec<usize> = raw.iter().map(|&x| x % spec.rank()).collect();
        let lhs = braid_word(&e, &word, &[(0, over), (1, over), (0, over)]);
        let rhs = braid_word(&e, &word, &[(1, over), (0, over), (1, over)]);
        prop_assert_eq!(&lhs.target, &rhs.target);
        prop_assert!(lhs.distance(&rhs) < 1e-9);
    }

    #[test]
    fn product_label_round_trip(r in 1usize..6, arity in 1usize..5, seed in any::<u64>()) {
        let size = r.pow(arity as u32);
        let index = (seed % size as u64) as usize;
        let label = ProductLabel::unflatten(index, r, arity);
        prop_assert_eq!(label.arity(), arity);
        prop_assert!(label.components.iter().all(|&c| c < r));
        prop_assert_eq!(label.flatten(r), index);
    }

    #[test]
    fn file_format_round_trip(n in 1usize..7, k in 0i64..12) {
        let spec = z_n(n, k);
        let text = serialize_category_spec(&spec);
        let back = load_category_spec(&text).unwrap();
        prop_assert_eq!(&back, &spec);
        prop_assert_eq!(serialize_category_spec(&back), text);
    }

    #[test]
    fn report_json_round_trip(
        devs in prop::collection::vec((0.0f64..1.0, 0u8..3, any::<bool>()), 0..8),
        seed in any::<u64>(),
    ) {
        let checks: Vec<Check> = devs
            .iter()
            .enumerate()
            .map(|(i, &(d, kind, timed))| {
                let mut c = match kind {
                    0 => Check::measured(format!("c{i}"), "tag", d, 0.5),
                    1 => Check::exact(format!("c{i}"), "tag", (d * 4.0) as usize),
                    _ => Check::skipped(format!("c{i}"), "tag", "reason"),
                };
                if timed {
                    c.wall_time = Some(d);
                }
                c
            })
            .collect();
        let summary = Summary {
            total: checks.len(),
            passed: checks.iter().filter(|c| c.status == Status::Pass).count(),
            failed: checks.iter().filter(|c| c.status == Status::Fail).count(),
            skipped: checks.iter().filter(|c| c.status == Status::Skipped).count(),
        };
        let report = SuiteReport {
            tool_version: TOOL_VERSION.into(),
            target: "fibonacci".into(),
            options: SuiteOptions { seed, ..SuiteOptions::default() },
            checks,
            summary,
        };
        let text = report.to_json();
        let back = SuiteReport::from_json(&text).unwrap();
        prop_assert_eq!(&back, &report);
        prop_assert_eq!(back.to_json(), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn frobenius_structure_is_basis_independent(seed in any::<u64>(), n in -1i64..=1) {
        let spec = builtin_category("ising").unwrap();
        let plain = build_frobenius_algebra(&spec, n).unwrap();
        let twisted = build_with_phases(&spec, n, &random_phases(&spec, seed)).unwrap();
        prop_assert!(plain.product.distance(&twisted.product) < 1e-8);
        prop_assert!(plain.coproduct.distance(&twisted.coproduct) < 1e-8);
        prop_assert!(plain.unit.distance(&twisted.unit) < 1e-8);
        prop_assert!(plain.counit.distance(&twisted.counit) < 1e-8);
    }
}
