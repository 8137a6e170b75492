//! Deligne powers `C^⊠N` built componentwise from a skeletal spec.
//!
//! Labels of the power are flattened row-major: `(a_1, ..., a_N)` has index
//! `((a_1 r + a_2) r + ...) r + a_N`. Vertex multiplicities are flattened the
//! same way, so a product vertex has index `μ_1 n_2 ⋯ n_N + ... + μ_N`.

use std::collections::BTreeMap;

use crate::category_data::{BraidedData, CategorySpec, FusionRing, ProductOf, RibbonStructure, C64};
use crate::error::{MtcError, Result};

/// Largest rank a Deligne power may have unless the caller raises it.
pub const DEFAULT_RANK_BOUND: usize = 4096;

/// A simple object of `C^⊠N`, one label per factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductLabel {
    pub components: Vec<usize>,
}

impl ProductLabel {
    pub fn new(components: Vec<usize>) -> Self {
        Self { components }
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn flatten(&self, base_rank: usize) -> usize {
        self.components.iter().fold(0, |acc, &a| acc * base_rank + a)
    }

    pub fn unflatten(index: usize, base_rank: usize, arity: usize) -> Self {
        let mut components = vec![0; arity];
        let mut rest = index;
        for slot in components.iter_mut().rev() {
            *slot = rest % base_rank;
            rest /= base_rank;
        }
        Self { components }
    }
}

pub fn deligne_power(spec: &CategorySpec, n: usize) -> Result<CategorySpec> {
    deligne_power_bounded(spec, n, DEFAULT_RANK_BOUND)
}

pub fn deligne_square(spec: &CategorySpec) -> Result<CategorySpec> {
    deligne_power(spec, 2)
}

/// `C^⊠N` with braiding `c × ⋯ × c`; fails if `rank^N > bound`.
pub fn deligne_power_bounded(spec: &CategorySpec, n: usize, bound: usize) -> Result<CategorySpec> {
    if n == 0 {
        return Err(MtcError::InvalidOption("Deligne power must be at least 1".into()));
    }
    let r = spec.rank();
    let rank = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(r)).unwrap_or(usize::MAX);
    if rank > bound {
        return Err(MtcError::RankOverflow { rank, bound });
    }
    if n == 1 {
        return Ok(spec.clone());
    }
    let mut out = spec.clone();
    for _ in 1..n {
        out = product(&out, spec);
    }
    out.name = format!("{}^⊠{n}", spec.name);
    out.labels = (0..rank)
        .map(|i| {
            let parts: Vec<&str> = ProductLabel::unflatten(i, r, n)
                .components
                .iter()
                .map(|&a| spec.label_name(a))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    out.product_of = Some(ProductOf {
        base: spec.name.clone(),
        power: n,
        base_rank: r,
    });
    Ok(out)
}

/// `P ⊠ B` with label `p * rank(B) + b`.
fn product(p: &CategorySpec, b: &CategorySpec) -> CategorySpec {
    let (rp, rb) = (p.rank(), b.rank());
    let rank = rp * rb;
    let join = |x: usize, y: usize| x * rb + y;

    let mut n = vec![0u32; rank * rank * rank];
    for (i1, i2) in pairs(rp, rb) {
        for (j1, j2) in pairs(rp, rb) {
            for (k1, k2) in pairs(rp, rb) {
                n[(join(i1, i2) * rank + join(j1, j2)) * rank + join(k1, k2)] =
                    p.ring.n(i1, j1, k1) * b.ring.n(i2, j2, k2);
            }
        }
    }
    let dual = pairs(rp, rb).map(|(x, y)| join(p.ring.dual(x), b.ring.dual(y))).collect();
    let ring = FusionRing::new(rank, n, dual);

    let ribbon = RibbonStructure {
        dims: pairs(rp, rb).map(|(x, y)| p.dim(x) * b.dim(y)).collect(),
        twists: pairs(rp, rb).map(|(x, y)| p.twist(x) * b.twist(y)).collect(),
    };

    // flattened vertex index for (x1 x2 -> x3) paired with (y1 y2 -> y3)
    let mu = |y: [usize; 3], m1: usize, m2: usize| m1 * b.ring.n(y[0], y[1], y[2]) as usize + m2;

    let mut f = BTreeMap::new();
    for (k1, v1) in &p.braided.f {
        for (k2, v2) in &b.braided.f {
            let [a1, b1, c1, d1, e1, al1, be1, f1, ga1, de1] = *k1;
            let [a2, b2, c2, d2, e2, al2, be2, f2, ga2, de2] = *k2;
            let key = [
                join(a1, a2),
                join(b1, b2),
                join(c1, c2),
                join(d1, d2),
                join(e1, e2),
                mu([a2, b2, e2], al1, al2),
                mu([e2, c2, d2], be1, be2),
                join(f1, f2),
                mu([b2, c2, f2], ga1, ga2),
                mu([a2, f2, d2], de1, de2),
            ];
            f.insert(key, v1 * v2);
        }
    }
    let mut rmap = BTreeMap::new();
    for (k1, v1) in &p.braided.r {
        for (k2, v2) in &b.braided.r {
            let [a1, b1, c1, al1, be1] = *k1;
            let [a2, b2, c2, al2, be2] = *k2;
            let key = [
                join(a1, a2),
                join(b1, b2),
                join(c1, c2),
                mu([a2, b2, c2], al1, al2),
                mu([b2, a2, c2], be1, be2),
            ];
            rmap.insert(key, v1 * v2);
        }
    }
    let labels = pairs(rp, rb)
        .map(|(x, y)| format!("{}{}", p.label_name(x), b.label_name(y)))
        .collect();
    CategorySpec::new(
        format!("{}⊠{}", p.name, b.name),
        labels,
        ring,
        ribbon,
        BraidedData { f, r: rmap },
    )
}

fn pairs(rp: usize, rb: usize) -> impl Iterator<Item = (usize, usize)> + Clone {
    (0..rp).flat_map(move |x| (0..rb).map(move |y| (x, y)))
}

/// Twist of a product label from the base twists.
pub fn product_twist(spec: &CategorySpec, label: &ProductLabel) -> C64 {
    label.components.iter().map(|&a| spec.twist(a)).product()
}
