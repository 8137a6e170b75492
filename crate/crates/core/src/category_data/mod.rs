//! Skeletal premodular and modular categories: the data, its validation and
//! the scalar invariants derived from it.

mod builtins;
mod format;
mod modular;
mod tables;
mod validate;

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use builtins::{builtin_catalog, builtin_category, builtin_names, z_n};
pub use format::{load_category_spec, serialize_category_spec};
pub use modular::{
    modular_datum, modular_group_relations, s_squared_deviation, unitarity_deviation, verlinde_fusion, ModularDatum, TAG_SL2Z, TAG_VERLINDE,
    VerlindeResult,
};
pub use tables::{FBlock, Tables, Vertex3};
pub use validate::{
    fusion_associativity_mismatches, hexagon_deviation, pentagon_deviation, validate_category, TAG_FUSION, TAG_HEXAGON,
    TAG_PENTAGON, TAG_RIBBON,
};

pub type C64 = Complex64;

/// Index of a simple object; 0 is the tensor unit.
pub type SimpleLabel = usize;

/// `[a, b, c, d, e, alpha, beta, f, gamma, delta]`: the coefficient of the
/// right-nested splitting tree `(b c -> f, gamma; a f -> d, delta)` in the
/// expansion of the left-nested tree `(a b -> e, alpha; e c -> d, beta)`.
/// Multiplicity indices are 0-based in memory.
pub type FKey = [usize; 10];

/// `[a, b, c, alpha, beta]`: braiding `c_{a,b}` sends the splitting vertex
/// `(a b -> c, alpha)` to `sum_beta R * (b a -> c, beta)`.
pub type RKey = [usize; 5];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FusionRing {
    rank: usize,
    n: Vec<u32>,
    dual: Vec<usize>,
}

impl FusionRing {
    /// `n` is the flattened tensor `n[(i * rank + j) * rank + k] = N_ij^k`.
    pub fn new(rank: usize, n: Vec<u32>, dual: Vec<usize>) -> Self {
        assert_eq!(n.len(), rank * rank * rank, "fusion tensor must be rank^3");
        assert_eq!(dual.len(), rank, "dual table must have one entry per label");
        Self { rank, n, dual }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        self.n[(i * self.rank + j) * self.rank + k]
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    pub fn tensor(&self) -> &[u32] {
        &self.n
    }

    /// Nonzero channels of `i ⊗ j`, in increasing label order.
    pub fn channels(&self, i: usize, j: usize) -> Vec<(usize, u32)> {
        (0..self.rank)
            .filter_map(|k| {
                let m = self.n(i, j, k);
                (m > 0).then_some((k, m))
            })
            .collect()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.n.iter().all(|&m| m <= 1)
    }

    /// Multiplicities of `w_1 ⊗ ... ⊗ w_m` over the simples, fused left to right.
    pub fn fuse_word(&self, word: &[usize]) -> Vec<u64> {
        let mut v = vec![0u64; self.rank];
        v[0] = 1;
        for &x in word {
            let mut next = vec![0u64; self.rank];
            for (a, &ma) in v.iter().enumerate() {
                if ma == 0 {
                    continue;
                }
                for (c, m) in self.channels(a, x) {
                    next[c] += ma * m as u64;
                }
            }
            v = next;
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RibbonStructure {
    pub dims: Vec<f64>,
    pub twists: Vec<C64>,
}

#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct BraidedData {
    pub f: BTreeMap<FKey, C64>,
    pub r: BTreeMap<RKey, C64>,
}

impl BraidedData {
    pub fn f(&self, key: &FKey) -> C64 {
        self.f.get(key).copied().unwrap_or_default()
    }

    pub fn r(&self, key: &RKey) -> C64 {
        self.r.get(key).copied().unwrap_or_default()
    }
}

/// Records that a spec was produced as a Deligne power of another.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductOf {
    pub base: String,
    pub power: usize,
    pub base_rank: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CategorySpec {
    pub name: String,
    pub labels: Vec<String>,
    pub ring: FusionRing,
    pub ribbon: RibbonStructure,
    pub braided: BraidedData,
    pub multiplicity_free: bool,
    pub product_of: Option<ProductOf>,
}

impl CategorySpec {
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        ring: FusionRing,
        ribbon: RibbonStructure,
        braided: BraidedData,
    ) -> Self {
        let multiplicity_free = ring.is_multiplicity_free();
        Self {
            name: name.into(),
            labels,
            ring,
            ribbon,
            braided,
            multiplicity_free,
            product_of: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn dim(&self, i: usize) -> f64 {
        self.ribbon.dims[i]
    }

    pub fn twist(&self, i: usize) -> C64 {
        self.ribbon.twists[i]
    }

    /// Global dimension: the sum of squared quantum dimensions.
    pub fn global_dim(&self) -> f64 {
        self.ribbon.dims.iter().map(|d| d * d).sum()
    }

    /// Resolves a label given as an index or a name (`tau` is accepted for `τ`).
    pub fn label_index(&self, s: &str) -> Option<usize> {
        if let Ok(i) = s.parse::<usize>() {
            return (i < self.rank()).then_some(i);
        }
        let norm = |x: &str| x.replace('τ', "tau").replace('σ', "sigma").replace('ψ', "psi");
        let want = norm(s);
        self.labels.iter().position(|l| norm(l) == want)
    }

    pub fn label_name(&self, i: usize) -> &str {
        &self.labels[i]
    }
}
