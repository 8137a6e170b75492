//! Coherence checks on skeletal data: fusion-ring axioms, pentagon, both
//! hexagons, balancing, and consistency of quantum dimensions.

use nalgebra::DMatrix;

use super::{BraidedData, CategorySpec, FusionRing, Tables, C64};
use crate::report::{Check, VerificationReport};
use crate::tolerance::ToleranceConfig;

pub const TAG_FUSION: &str = "fusion ring axioms";
pub const TAG_PENTAGON: &str = "associator coherence (pentagon)";
pub const TAG_HEXAGON: &str = "braiding coherence (hexagon)";
pub const TAG_RIBBON: &str = "balancing: double braiding equals ratio of twists";
pub const TAG_DIMS: &str = "quantum dimensions";

/// `ϑ_i R^{i ī}_0 / F^{i ī i}_i` at the unit channels. Gauge invariant for
/// self-dual labels; for a dual pair only the product over the pair is.
fn braiding_ratio(ring: &FusionRing, twists: &[C64], braided: &BraidedData, i: usize) -> C64 {
    let ib = ring.dual(i);
    let r = braided.r(&[i, ib, 0, 0, 0]);
    let f = braided.f(&[i, ib, i, i, 0, 0, 0, 0, 0, 0]);
    twists[i] * r / f
}

/// Quantum dimensions recovered from the braiding data, used when a file
/// omits `dims`.
pub(crate) fn dims_from_braiding(ring: &FusionRing, twists: &[C64], braided: &BraidedData) -> Vec<f64> {
    (0..ring.rank())
        .map(|i| {
            let ib = ring.dual(i);
            let ri = braiding_ratio(ring, twists, braided, i);
            if ib == i {
                ri.re
            } else {
                let p = ri * braiding_ratio(ring, twists, braided, ib);
                let sign = if ri.re < 0.0 { -1.0 } else { 1.0 };
                sign * p.norm().sqrt()
            }
        })
        .collect()
}

pub fn validate_category(spec: &CategorySpec, tol: &ToleranceConfig) -> VerificationReport {
    let mut report = VerificationReport::new();
    let atol = tol.atol;
    let ring = &spec.ring;

    report.push(Check::exact("fusion.unit", TAG_FUSION, fusion_unit_mismatches(ring)));
    report.push(Check::exact("fusion.duality", TAG_FUSION, fusion_duality_mismatches(ring)));
    report.push(Check::exact(
        "fusion.associativity",
        TAG_FUSION,
        fusion_associativity_mismatches(ring),
    ));
    report.push(Check::exact("fusion.dual_involution", TAG_FUSION, dual_involution_mismatches(ring)));
    report.push(Check::measured("ribbon.data", TAG_DIMS, ribbon_data_deviation(spec), atol));
    report.push(Check::measured(
        "dims.homomorphism",
        TAG_DIMS,
        dimension_homomorphism_deviation(spec),
        atol,
    ));
    report.push(Check::measured(
        "dims.from_braiding",
        TAG_DIMS,
        dims_braiding_deviation(spec),
        atol,
    ));

    let tables = match Tables::new(spec) {
        Ok(t) => t,
        Err(e) => {
            report.push(Check::measured("F.invertible", TAG_PENTAGON, f64::INFINITY, atol).with_note(e.to_string()));
            return report;
        }
    };
    report.push(Check::measured("F.invertible", TAG_PENTAGON, 0.0, atol));
    report.push(Check::measured("F.unit_normalization", TAG_PENTAGON, f_unit_deviation(&tables), atol));
    report.push(Check::measured("pentagon", TAG_PENTAGON, pentagon_deviation(&tables), atol));
    report.push(Check::measured("hexagon.over", TAG_HEXAGON, hexagon_deviation(&tables, true), atol));
    report.push(Check::measured("hexagon.under", TAG_HEXAGON, hexagon_deviation(&tables, false), atol));
    report.push(Check::measured("ribbon.double_braiding", TAG_RIBBON, ribbon_deviation(spec, &tables), atol));
    report
}

pub fn fusion_unit_mismatches(ring: &FusionRing) -> usize {
    let r = ring.rank();
    let mut bad = 0;
    for j in 0..r {
        for k in 0..r {
            let want = u32::from(j == k);
            bad += usize::from(ring.n(0, j, k) != want);
            bad += usize::from(ring.n(j, 0, k) != want);
        }
    }
    bad
}

pub fn fusion_duality_mismatches(ring: &FusionRing) -> usize {
    let r = ring.rank();
    let mut bad = 0;
    for i in 0..r {
        for j in 0..r {
            bad += usize::from(ring.n(i, j, 0) != u32::from(j == ring.dual(i)));
        }
    }
    bad
}

pub fn fusion_associativity_mismatches(ring: &FusionRing) -> usize {
    let r = ring.rank();
    let mut bad = 0;
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                for l in 0..r {
                    let lhs: u64 = (0..r).map(|m| ring.n(i, j, m) as u64 * ring.n(m, k, l) as u64).sum();
                    let rhs: u64 = (0..r).map(|m| ring.n(j, k, m) as u64 * ring.n(i, m, l) as u64).sum();
                    bad += usize::from(lhs != rhs);
                }
            }
        }
    }
    bad
}

pub fn dual_involution_mismatches(ring: &FusionRing) -> usize {
    let r = ring.rank();
    usize::from(ring.dual(0) != 0) + (0..r).filter(|&i| ring.dual(ring.dual(i)) != i).count()
}

fn ribbon_data_deviation(spec: &CategorySpec) -> f64 {
    let r = spec.rank();
    let d = &spec.ribbon.dims;
    let t = &spec.ribbon.twists;
    if d.len() != r || t.len() != r {
        return f64::INFINITY;
    }
    let mut dev = (d[0] - 1.0).abs().max((t[0] - C64::new(1.0, 0.0)).norm());
    for i in 0..r {
        if d[i] == 0.0 || !d[i].is_finite() {
            return f64::INFINITY;
        }
        dev = dev.max((d[i] - d[spec.ring.dual(i)]).abs());
        dev = dev.max((t[i].norm() - 1.0).abs());
    }
    dev
}

fn dimension_homomorphism_deviation(spec: &CategorySpec) -> f64 {
    let r = spec.rank();
    let d = &spec.ribbon.dims;
    let mut dev: f64 = 0.0;
    for i in 0..r {
        for j in 0..r {
            let rhs: f64 = (0..r).map(|k| spec.ring.n(i, j, k) as f64 * d[k]).sum();
            dev = dev.max((d[i] * d[j] - rhs).abs());
        }
    }
    dev
}

fn dims_braiding_deviation(spec: &CategorySpec) -> f64 {
    let ring = &spec.ring;
    let d = &spec.ribbon.dims;
    let mut dev: f64 = 0.0;
    for i in 0..spec.rank() {
        let ib = ring.dual(i);
        let ri = braiding_ratio(ring, &spec.ribbon.twists, &spec.braided, i);
        let delta = if ib == i {
            (ri - C64::new(d[i], 0.0)).norm()
        } else {
            let p = ri * braiding_ratio(ring, &spec.ribbon.twists, &spec.braided, ib);
            (p - C64::new(d[i] * d[ib], 0.0)).norm()
        };
        dev = dev.max(if delta.is_nan() { f64::INFINITY } else { delta });
    }
    dev
}

/// F-moves with a unit leg must be the identity under the evident matching
/// of left and right trees.
fn f_unit_deviation(t: &Tables) -> f64 {
    let r = t.rank();
    let mut dev: f64 = 0.0;
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    if a != 0 && b != 0 && c != 0 {
                        continue;
                    }
                    let Some(block) = t.fblock(a, b, c, d) else { continue };
                    for (i, &(_, al, be)) in block.left.iter().enumerate() {
                        // image of the left tree under the identification
                        let matched = if a == 0 {
                            (d, be, 0)
                        } else if b == 0 {
                            (c, 0, be)
                        } else {
                            (b, 0, al)
                        };
                        for (j, &rt) in block.right.iter().enumerate() {
                            let want = if rt == matched { 1.0 } else { 0.0 };
                            dev = dev.max((block.mat[(i, j)] - C64::new(want, 0.0)).norm());
                        }
                    }
                }
            }
        }
    }
    dev
}

pub fn pentagon_deviation(t: &Tables) -> f64 {
    let r = t.rank();
    let mut dev: f64 = 0.0;
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    for e in 0..r {
                        dev = dev.max(pentagon_instance(t, [a, b, c, d, e]));
                    }
                }
            }
        }
    }
    dev
}

/// Two ways of moving the left-nested tree on `(a b c d; e)` to the fully
/// right-nested one.
fn pentagon_instance(t: &Tables, [a, b, c, d, e]: [usize; 5]) -> f64 {
    let mut left = Vec::new();
    for &(f, m1) in t.channels(a, b) {
        for al in 0..m1 as usize {
            for &(g, m2) in t.channels(f, c) {
                for be in 0..m2 as usize {
                    for ga in 0..t.n(g, d, e) {
                        left.push((f, al, g, be, ga));
                    }
                }
            }
        }
    }
    let mut right = Vec::new();
    for &(l, m1) in t.channels(c, d) {
        for de in 0..m1 as usize {
            for &(k, m2) in t.channels(b, l) {
                for ze in 0..m2 as usize {
                    for et in 0..t.n(a, k, e) {
                        right.push((l, de, k, ze, et));
                    }
                }
            }
        }
    }
    if left.len() != right.len() {
        return f64::INFINITY;
    }
    let mut dev: f64 = 0.0;
    for &(f, al, g, be, ga) in &left {
        for &(l, de, k, ze, et) in &right {
            let mut lhs = C64::default();
            for ep in 0..t.n(f, l, e) {
                lhs += t.f([f, c, d, e], (g, be, ga), (l, de, ep)) * t.f([a, b, l, e], (f, al, ep), (k, ze, et));
            }
            let mut rhs = C64::default();
            for &(h, mh) in t.channels(b, c) {
                for ka in 0..mh as usize {
                    for la in 0..t.n(a, h, g) {
                        let x = t.f([a, b, c, g], (f, al, be), (h, ka, la));
                        if x == C64::default() {
                            continue;
                        }
                        for mu in 0..t.n(h, d, k) {
                            rhs += x
                                * t.f([a, h, d, e], (g, la, ga), (k, mu, et))
                                * t.f([b, c, d, k], (h, ka, mu), (l, de, ze));
                        }
                    }
                }
            }
            dev = dev.max((lhs - rhs).norm());
        }
    }
    dev
}

pub fn hexagon_deviation(t: &Tables, over: bool) -> f64 {
    let r = t.rank();
    let mut dev: f64 = 0.0;
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    dev = dev.max(hexagon_instance(t, [a, b, c, d], over));
                }
            }
        }
    }
    dev
}

/// Braiding `a` past `b ⊗ c` in one step versus two, written as a map from
/// right-nested trees on `(a b c; d)` to left-nested trees on `(b c a; d)`.
fn hexagon_instance(t: &Tables, [a, b, c, d]: [usize; 4], over: bool) -> f64 {
    let Some(abc) = t.fblock(a, b, c, d) else { return 0.0 };
    let (Some(bac), Some(bca)) = (t.fblock(b, a, c, d), t.fblock(b, c, a, d)) else {
        return f64::INFINITY;
    };
    let braid = |x: usize, y: usize, z: usize| if over { t.r(x, y, z) } else { t.r_under(x, y, z) };

    let n = abc.left.len();
    let mut lhs = DMatrix::<C64>::zeros(n, n);
    for (i, &(f, ga, de)) in abc.right.iter().enumerate() {
        let Some(rm) = braid(a, f, d) else { return f64::INFINITY };
        for (j, &(h, ka, la)) in bca.left.iter().enumerate() {
            if h == f && ka == ga {
                lhs[(i, j)] = rm[(de, la)];
            }
        }
    }

    // braid the first two strands of left trees on (a b c) into left trees on (b a c)
    let mut m1 = DMatrix::<C64>::zeros(n, n);
    for (i, &(e, al, be)) in abc.left.iter().enumerate() {
        let Some(rm) = braid(a, b, e) else { return f64::INFINITY };
        for (j, &(e2, al2, be2)) in bac.left.iter().enumerate() {
            if e2 == e && be2 == be {
                m1[(i, j)] = rm[(al, al2)];
            }
        }
    }
    // braid the inner vertex of right trees on (b a c) into right trees on (b c a)
    let mut m2 = DMatrix::<C64>::zeros(n, n);
    for (i, &(g, mu, nu)) in bac.right.iter().enumerate() {
        let Some(rm) = braid(a, c, g) else { return f64::INFINITY };
        for (j, &(g2, mu2, nu2)) in bca.right.iter().enumerate() {
            if g2 == g && nu2 == nu {
                m2[(i, j)] = rm[(mu, mu2)];
            }
        }
    }
    let rhs = &abc.inv * m1 * &bac.mat * m2 * &bca.inv;
    (lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn ribbon_deviation(spec: &CategorySpec, t: &Tables) -> f64 {
    let r = spec.rank();
    let mut dev: f64 = 0.0;
    for a in 0..r {
        for b in 0..r {
            for &(c, _) in t.channels(a, b) {
                let (Some(rab), Some(rba)) = (t.r(a, b, c), t.r(b, a, c)) else {
                    return f64::INFINITY;
                };
                let want = spec.twist(c) / (spec.twist(a) * spec.twist(b));
                let prod = rab * rba;
                for i in 0..prod.nrows() {
                    for j in 0..prod.ncols() {
                        let w = if i == j { want } else { C64::default() };
                        dev = dev.max((prod[(i, j)] - w).norm());
                    }
                }
            }
        }
    }
    dev
}
