use mtc_core::category_data::{builtin_catalog, builtin_category, C64};
use mtc_core::engine::{Crossing, Engine, Morphism};
use mtc_core::ToleranceConfig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

fn engine(name: &str) -> Engine {
    Engine::new(&builtin_category(name).unwrap()).unwrap()
}

fn phi() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

fn random_endo(e: &Engine, word: &[usize], rng: &mut ChaCha8Rng) -> Morphism {
    e.from_fn(word, word, |_, _, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .unwrap()
}

#[test]
fn hom_basis_counts() {
    let e = engine("fibonacci");
    assert_eq!(e.basis(&[1, 1], 0).unwrap().len(), 1);
    assert_eq!(e.basis(&[1, 1, 1], 1).unwrap().len(), 2);
    assert_eq!(e.basis(&[1], 1).unwrap().len(), 1);
    assert_eq!(e.basis(&[], 0).unwrap().len(), 1);
    // Fibonacci numbers for τ^n
    assert_eq!(e.hom_dims(&[1; 7]).unwrap(), vec![8, 13]);
    let ising = engine("ising");
    assert_eq!(ising.hom_dims(&[1; 4]).unwrap(), vec![2, 0, 2]);
}

#[test]
fn hom_basis_is_sorted_and_matches_ring() {
    for name in builtin_catalog() {
        let e = engine(name);
        let r = e.rank();
        for w in [vec![], vec![r - 1], vec![r - 1, r - 1, 0], vec![r - 1; 4]] {
            let counts = e.spec().ring.fuse_word(&w);
            for (c, &count) in counts.iter().enumerate() {
                let b = e.basis(&w, c).unwrap();
                assert_eq!(b.len() as u64, count, "{name} {w:?} {c}");
                assert!(b.trees.windows(2).all(|p| p[0] < p[1]));
            }
        }
    }
}

#[test]
fn two_strand_braiding_is_r() {
    let e = engine("fibonacci");
    let c = e.braid_generator(&[1, 1], 1, Crossing::Over).unwrap();
    let r0 = C64::from_polar(1.0, -4.0 * std::f64::consts::PI / 5.0);
    let r1 = C64::from_polar(1.0, 3.0 * std::f64::consts::PI / 5.0);
    assert!((c.blocks[0][(0, 0)] - r0).norm() < 1e-12);
    assert!((c.blocks[1][(0, 0)] - r1).norm() < 1e-12);
}

#[test]
fn braiding_past_unit_is_identity() {
    for name in builtin_catalog() {
        let e = engine(name);
        for x in 0..e.rank() {
            for w in [[0, x, x], [x, 0, x], [x, x, 0]] {
                for p in 0..2 {
                    if w[p] != 0 && w[p + 1] != 0 {
                        continue;
                    }
                    let c = e.generator(&w, p, Crossing::Over).unwrap();
                    for b in &c.blocks {
                        let id = nalgebra::DMatrix::<C64>::identity(b.nrows(), b.ncols());
                        assert!((b - id).iter().all(|z| z.norm() < 1e-12), "{name} {w:?} {p}");
                    }
                }
            }
        }
    }
}

#[test]
fn position_out_of_range() {
    let e = engine("fibonacci");
    assert!(e.braid_generator(&[1, 1], 2, Crossing::Over).is_err());
    assert!(e.braid_generator(&[1, 1], 0, Crossing::Over).is_err());
}

fn yang_baxter_deviation(e: &Engine, w: &[usize]) -> f64 {
    let b1 = |w: &[usize]| e.generator(w, 0, Crossing::Over).unwrap();
    let b2 = |w: &[usize]| e.generator(w, 1, Crossing::Over).unwrap();
    let x = b1(w);
    let x = b2(&x.target).compose(&x).unwrap();
    let x = b1(&x.target).compose(&x).unwrap();
    let y = b2(w);
    let y = b1(&y.target).compose(&y).unwrap();
    let y = b2(&y.target).compose(&y).unwrap();
    x.distance(&y)
}

#[test]
fn braid_relations_on_short_words() {
    for name in builtin_catalog() {
        let e = engine(name);
        let r = e.rank();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    assert!(yang_baxter_deviation(&e, &[a, b, c]) < TOL, "{name} {a}{b}{c}");
                    for d in 0..r {
                        let w = [a, b, c, d];
                        let g0 = e.generator(&w, 0, Crossing::Over).unwrap();
                        let g2 = e.generator(&g0.target, 2, Crossing::Over).unwrap();
                        let h2 = e.generator(&w, 2, Crossing::Over).unwrap();
                        let h0 = e.generator(&h2.target, 0, Crossing::Over).unwrap();
                        let lhs = g2.compose(&g0).unwrap();
                        let rhs = h0.compose(&h2).unwrap();
                        assert!(lhs.distance(&rhs) < TOL, "{name} far commutation {w:?}");
                        let under = e.generator(&g0.target, 0, Crossing::Under).unwrap();
                        assert!(under.compose(&g0).unwrap().distance(&e.identity(&w).unwrap()) < TOL);
                        // unitary data gives unitary generators
                        assert!(g0.unitarity_deviation() < TOL);
                        assert!(e.generator(&w, 1, Crossing::Over).unwrap().unitarity_deviation() < TOL);
                    }
                }
            }
        }
    }
}

#[test]
fn interchange_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["fibonacci", "ising", "z_3(1)"] {
        let e = engine(name);
        let r = e.rank();
        let w1 = vec![r - 1, 1];
        let w2 = vec![1, r - 1, 1];
        let f = random_endo(&e, &w1, &mut rng);
        let g = random_endo(&e, &w2, &mut rng);
        let fg = e.tensor(&f, &g).unwrap();
        let a = e.tensor(&f, &e.identity(&w2).unwrap()).unwrap();
        let b = e.tensor(&e.identity(&w1).unwrap(), &g).unwrap();
        assert!(a.compose(&b).unwrap().distance(&fg) < TOL);
        assert!(b.compose(&a).unwrap().distance(&fg) < TOL);
        let id = e.tensor(&e.identity(&w1).unwrap(), &e.identity(&w2).unwrap()).unwrap();
        let mut w = w1.clone();
        w.extend(&w2);
        assert!(id.distance(&e.identity(&w).unwrap()) < TOL);
        // associativity of juxtaposition
        let h = random_endo(&e, &[1], &mut rng);
        let l = e.tensor(&e.tensor(&f, &g).unwrap(), &h).unwrap();
        let rr = e.tensor(&f, &e.tensor(&g, &h).unwrap()).unwrap();
        assert!(l.distance(&rr) < TOL);
        assert!(e.identity(&w1).unwrap().compose(&f).unwrap().distance(&f) < 1e-15);
    }
}

#[test]
fn block_braid_is_natural_and_hexagonal() {
    let e = engine("ising");
    let w = [1, 2, 1, 1];
    // c_{A,B} with A two strands equals the composite of single-strand braids
    let c = e.block_braid(&w, 0, 2, 2, Crossing::Over).unwrap();
    let c1 = e.block_braid(&w, 1, 1, 2, Crossing::Over).unwrap();
    let c2 = e.block_braid(&c1.target, 0, 1, 2, Crossing::Over).unwrap();
    assert!(c.distance(&c2.compose(&c1).unwrap()) < TOL);
    let cu = e.block_braid(&c.target, 0, 2, 2, Crossing::Under).unwrap();
    assert!(cu.compose(&c).unwrap().distance(&e.identity(&w).unwrap()) < TOL);
}

#[test]
fn monodromy_eigenvalues_and_powers() {
    let e = engine("fibonacci");
    let d = e.double_braiding_power(&[1, 1], 1, 1).unwrap();
    let th = |i: usize| e.spec().twist(i);
    for k in 0..2 {
        assert!((d.blocks[k][(0, 0)] - th(k) / (th(1) * th(1))).norm() < TOL);
    }
    for name in ["fibonacci", "ising"] {
        let e = engine(name);
        let w = [1, 1, 1];
        for split in [0, 3] {
            assert!(e.double_braiding_power(&w, split, 1).unwrap().distance(&e.identity(&w).unwrap()) < TOL);
        }
        assert!(e.double_braiding_power(&w, 1, 0).unwrap().distance(&e.identity(&w).unwrap()) < TOL);
        for m in -2..=2 {
            for n in -2..=2 {
                let a = e.double_braiding_power(&w, 1, m).unwrap();
                let b = e.double_braiding_power(&w, 1, n).unwrap();
                let c = e.double_braiding_power(&w, 1, m + n).unwrap();
                assert!(a.compose(&b).unwrap().distance(&c) < TOL);
            }
        }
    }
}

#[test]
fn composite_monodromy_identity() {
    // (D_{MU1,U2} ⊗ id_{U3}) ∘ D_{MU1U2,U3} = (id_{MU1} ⊗ D_{U2,U3}) ∘ D_{MU1,U2U3}
    for name in ["fibonacci", "ising", "semion"] {
        let e = engine(name);
        let r = e.rank();
        for m in 0..r {
            for u1 in 0..r {
                for u2 in 0..r {
                    for u3 in 0..r {
                        let w = [m, u1, u2, u3];
                        let lhs = e
                            .monodromy(&w, 0, 2, 1, 1)
                            .unwrap()
                            .compose(&e.monodromy(&w, 0, 3, 1, 1).unwrap())
                            .unwrap();
                        let rhs = e
                            .monodromy(&w, 2, 1, 1, 1)
                            .unwrap()
                            .compose(&e.monodromy(&w, 0, 2, 2, 1).unwrap())
                            .unwrap();
                        assert!(lhs.distance(&rhs) < TOL, "{name} {w:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn twist_of_pair_is_monodromy_times_twists() {
    for name in builtin_catalog() {
        let e = engine(name);
        let r = e.rank();
        for i in 0..r {
            let t = e.twist(&[i], 0, 1).unwrap();
            assert!((t.blocks[i][(0, 0)] - e.spec().twist(i)).norm() < 1e-15);
            assert!(e.twist(&[i], 0, 0).unwrap().distance(&e.identity(&[i]).unwrap()) == 0.0);
            for j in 0..r {
                let w = [i, j];
                let full = e.twist(&w, 0, 2).unwrap();
                let singles = e.twist(&w, 0, 1).unwrap().compose(&e.twist(&w, 1, 1).unwrap()).unwrap();
                let rhs = e.monodromy(&w, 0, 1, 1, 1).unwrap().compose(&singles).unwrap();
                assert!(full.distance(&rhs) < TOL, "{name} {i}{j}");
            }
        }
    }
}

#[test]
fn traces_and_duality() {
    let tol = ToleranceConfig::default();
    for name in builtin_catalog() {
        let e = engine(name);
        let rep = e.duality_report(&tol).unwrap();
        assert!(rep.all_passed(), "{name}: {:?}", rep.checks);
        for i in 0..e.rank() {
            let d = e.spec().dim(i);
            let id = e.identity(&[i]).unwrap();
            assert!((e.trace(&id).unwrap() - d).norm() < TOL);
            assert!((e.closure_trace(&id).unwrap() - d).norm() < TOL);
            let t = e.twist(&[i], 0, 1).unwrap();
            assert!((e.trace(&t).unwrap() - e.spec().twist(i) * d).norm() < TOL);
            for j in 0..e.rank() {
                let dd = e.monodromy(&[i, j], 0, 1, 1, 1).unwrap();
                assert!((e.trace(&dd).unwrap() - e.closure_trace(&dd).unwrap()).norm() < TOL);
            }
        }
    }
    let e = engine("fibonacci");
    assert!((e.trace(&e.identity(&[1]).unwrap()).unwrap() - phi()).norm() < TOL);
    let f = e.cup(1).unwrap();
    assert!(e.trace(&f).is_err());
}

#[test]
fn word_length_bound() {
    let e = engine("fibonacci");
    assert!(e.identity(&[1; 8]).is_ok());
    assert!(e.identity(&[1; 9]).is_err());
}
