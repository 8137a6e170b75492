//! Permutation modular invariants on Deligne powers, their invariance under
//! the modular data, annulus coefficients and induced-module decompositions.
//!
//! Tuples of labels are flattened row-major, matching [`crate::deligne`].

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::category_data::{modular_datum, CategorySpec, C64};
use crate::deligne::{ProductLabel, DEFAULT_RANK_BOUND};
use crate::error::{MtcError, Result};
use crate::report::{Check, VerificationReport};
use crate::tolerance::ToleranceConfig;

pub const TAG_PERMUTATION_INVARIANT: &str = "permutation modular invariant";
pub const TAG_ANNULUS: &str = "annulus coefficients of the permutation invariant";
pub const TAG_MULTIFOLD: &str = "multiplicities of the internal End of the unit";

/// A permutation of `{0, ..., N-1}` as its image list: `g[t] = g(t)`.
pub type Permutation = Vec<usize>;

#[derive(Clone, Debug, PartialEq)]
pub struct ModularInvariant {
    pub arity: usize,
    pub base_rank: usize,
    pub z: DMatrix<u64>,
    /// The permutation that produced `z`, when it is a permutation invariant.
    pub permutation: Option<Permutation>,
    /// Set when the input is not modular, so invariance is not guaranteed.
    pub warning: Option<String>,
}

impl ModularInvariant {
    pub fn dim(&self) -> usize {
        self.z.nrows()
    }

    /// Nonzero entries as `(row, col, value)`, row-major.
    pub fn sparse_triples(&self) -> Vec<(usize, usize, u64)> {
        let n = self.dim();
        (0..n)
            .flat_map(|p| (0..n).map(move |q| (p, q)))
            .filter(|&(p, q)| self.z[(p, q)] != 0)
            .map(|(p, q)| (p, q, self.z[(p, q)]))
            .collect()
    }

    pub fn is_permutation_matrix(&self) -> bool {
        let n = self.dim();
        let rows_ok = (0..n).all(|p| self.z.row(p).iter().sum::<u64>() == 1);
        let cols_ok = (0..n).all(|q| self.z.column(q).iter().sum::<u64>() == 1);
        rows_ok && cols_ok && self.z.iter().all(|&v| v <= 1)
    }

    pub fn label(&self) -> String {
        match &self.permutation {
            Some(g) => cycle_notation(g),
            None => "custom".into(),
        }
    }
}

fn modularity_warning(spec: &CategorySpec) -> Option<String> {
    let md = modular_datum(spec, &ToleranceConfig::default());
    (!md.is_modular).then(|| format!("`{}` is not modular; invariance is not guaranteed", spec.name))
}

/// `Z_{(i,j),(k,l)} = δ_{i,l} δ_{j,k}`.
pub fn transposition_z(spec: &CategorySpec) -> ModularInvariant {
    let r = spec.rank();
    let z = DMatrix::from_fn(r * r, r * r, |p, q| u64::from(p / r == q % r && p % r == q / r));
    ModularInvariant {
        arity: 2,
        base_rank: r,
        z,
        permutation: Some(vec![1, 0]),
        warning: modularity_warning(spec),
    }
}

/// Adjacent positions `t` with `g = s_{t_1} ∘ s_{t_2} ∘ ⋯`, found by bubble sort.
pub fn adjacent_transpositions(g: &[usize]) -> Vec<usize> {
    let mut arr = g.to_vec();
    let mut swaps = Vec::new();
    while let Some(t) = (0..arr.len().saturating_sub(1)).find(|&t| arr[t] > arr[t + 1]) {
        arr.swap(t, t + 1);
        swaps.push(t);
    }
    swaps.reverse();
    swaps
}

fn validate_permutation(g: &[usize]) -> Result<()> {
    let mut seen = vec![false; g.len()];
    for &x in g {
        if x >= g.len() || std::mem::replace(&mut seen[x], true) {
            return Err(MtcError::InvalidOption(format!("{g:?} is not a permutation")));
        }
    }
    Ok(())
}

fn checked_power(r: usize, n: usize, bound: usize) -> Result<usize> {
    let size = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(r)).unwrap_or(usize::MAX);
    if size > bound {
        return Err(MtcError::RankOverflow { rank: size, bound });
    }
    Ok(size)
}

/// Transposition invariant on factors `t, t+1` of an `n`-fold product.
fn adjacent_z(r: usize, n: usize, t: usize) -> DMatrix<u64> {
    let size = r.pow(n as u32);
    let mut z = DMatrix::zeros(size, size);
    for p in 0..size {
        let mut q = ProductLabel::unflatten(p, r, n);
        q.components.swap(t, t + 1);
        z[(p, q.flatten(r))] = 1;
    }
    z
}

pub fn permutation_z_nfold(spec: &CategorySpec, g: &[usize]) -> Result<ModularInvariant> {
    permutation_z_nfold_bounded(spec, g, DEFAULT_RANK_BOUND)
}

/// Product of adjacent transposition invariants; the result sends the tuple
/// `p` to `q` with `q_t = p_{g(t)}`.
pub fn permutation_z_nfold_bounded(spec: &CategorySpec, g: &[usize], bound: usize) -> Result<ModularInvariant> {
    validate_permutation(g)?;
    let (r, n) = (spec.rank(), g.len());
    let size = checked_power(r, n, bound)?;
    let mut z = DMatrix::<u64>::identity(size, size);
    for t in adjacent_transpositions(g) {
        z *= adjacent_z(r, n, t);
    }
    Ok(ModularInvariant {
        arity: n,
        base_rank: r,
        z,
        permutation: Some(g.to_vec()),
        warning: modularity_warning(spec),
    })
}

/// Direct construction of the permutation matrix, for cross-checking the product.
pub fn permutation_matrix(r: usize, g: &[usize]) -> DMatrix<u64> {
    let n = g.len();
    let size = r.pow(n as u32);
    let mut z = DMatrix::zeros(size, size);
    for p in 0..size {
        let pl = ProductLabel::unflatten(p, r, n);
        let q = ProductLabel::new(g.iter().map(|&gt| pl.components[gt]).collect());
        z[(p, q.flatten(r))] = 1;
    }
    z
}

/// `(g ∘ h)(t) = g(h(t))`.
pub fn compose_permutations(g: &[usize], h: &[usize]) -> Permutation {
    h.iter().map(|&x| g[x]).collect()
}

/// Cycle notation with 1-based points, e.g. `(1 2 3)`; the identity is `()`.
pub fn cycle_notation(g: &[usize]) -> String {
    let mut seen = vec![false; g.len()];
    let mut out = String::new();
    for start in 0..g.len() {
        if seen[start] || g[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = g[x];
        }
        out.push_str(&format!("({})", cycle.join(" ")));
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Parses cycle notation over `{1..n}`; `(a b c)` sends `a ↦ b ↦ c ↦ a`.
pub fn parse_cycles(text: &str, n: usize) -> Result<Permutation> {
    let bad = |msg: &str| MtcError::InvalidOption(format!("permutation `{text}`: {msg}"));
    let mut g: Permutation = (0..n).collect();
    let mut used = vec![false; n];
    let mut rest = text.trim();
    while !rest.is_empty() {
        let inner_end = rest.find(')').ok_or_else(|| bad("unbalanced parentheses"))?;
        let inner = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
        let points: Vec<usize> = inner[..inner_end - 1]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| bad("points must be integers")))
            .collect::<Result<_>>()?;
        if points.iter().any(|&p| p == 0 || p > n) {
            return Err(bad("point out of range"));
        }
        if points.iter().any(|&p| std::mem::replace(&mut used[p - 1], true)) {
            return Err(bad("cycles overlap"));
        }
        for (k, &p) in points.iter().enumerate() {
            g[p - 1] = points[(k + 1) % points.len()] - 1;
        }
        rest = rest[inner_end + 1..].trim_start();
    }
    Ok(g)
}

fn kron_power(m: &DMatrix<C64>, n: usize) -> DMatrix<C64> {
    (1..n).fold(m.clone(), |acc, _| acc.kronecker(m))
}

/// `Σ_{p,q} Z_pq S_pp' S*_qq' = Z_p'q'`, `T Z = Z T` and `Z_{0,0} = 1`.
pub fn check_modular_invariance(
    inv: &ModularInvariant,
    spec: &CategorySpec,
    tol: &ToleranceConfig,
) -> Result<VerificationReport> {
    let md = modular_datum(spec, tol);
    if !md.is_modular {
        return Err(MtcError::NotModular(spec.name.clone()));
    }
    if inv.base_rank != spec.rank() {
        return Err(MtcError::ShapeMismatch("invariant and category ranks differ".into()));
    }
    let s = kron_power(&md.s, inv.arity);
    let t = kron_power(&md.t, inv.arity);
    let z = inv.z.map(|v| C64::new(v as f64, 0.0));
    let s_dev = (s.transpose() * &z * s.conjugate() - &z).iter().map(|c| c.norm()).fold(0.0, f64::max);
    let t_dev = (&t * &z - &z * &t).iter().map(|c| c.norm()).fold(0.0, f64::max);
    let vac = inv.z[(0, 0)].abs_diff(1) as usize;
    let label = inv.label();
    let mut report = VerificationReport::new();
    report.push(Check::measured(format!("z.s_invariance.{label}"), TAG_PERMUTATION_INVARIANT, s_dev, tol.atol));
    report.push(Check::measured(format!("z.t_invariance.{label}"), TAG_PERMUTATION_INVARIANT, t_dev, tol.atol));
    report.push(Check::exact(format!("z.vacuum.{label}"), TAG_PERMUTATION_INVARIANT, vac));
    Ok(report)
}

/// `Σ_m N_ij^m N_mk^l`.
pub fn annulus_coefficients(spec: &CategorySpec, i: usize, j: usize, k: usize, l: usize) -> u64 {
    (0..spec.rank())
        .map(|m| u64::from(spec.ring.n(i, j, m)) * u64::from(spec.ring.n(m, k, l)))
        .sum()
}

/// `dim Hom(U_i ⊗ U_j ⊗ U_k, U_l)` by fusing the word left to right.
pub fn triple_hom_count(spec: &CategorySpec, i: usize, j: usize, k: usize, l: usize) -> u64 {
    spec.ring.fuse_word(&[i, j, k])[l]
}

/// `Ind_A(U_i × U_j) ≅ ⊕_k N_ij^k M_k`.
pub fn induced_module_decomposition(spec: &CategorySpec, i: usize, j: usize) -> Vec<u64> {
    (0..spec.rank()).map(|k| u64::from(spec.ring.n(i, j, k))).collect()
}

pub fn multifold_end_multiplicities(spec: &CategorySpec, m: usize) -> Result<BTreeMap<Vec<usize>, u64>> {
    multifold_end_multiplicities_bounded(spec, m, DEFAULT_RANK_BOUND)
}

/// `N_{i_1 ⋯ i_m} = dim Hom(U_{i_1} ⊗ ⋯ ⊗ U_{i_m}, 1)` for every `m`-tuple.
pub fn multifold_end_multiplicities_bounded(
    spec: &CategorySpec,
    m: usize,
    bound: usize,
) -> Result<BTreeMap<Vec<usize>, u64>> {
    if m == 0 {
        return Err(MtcError::InvalidOption("tuple length must be at least 1".into()));
    }
    let r = spec.rank();
    let size = checked_power(r, m, bound)?;
    Ok((0..size)
        .map(|p| {
            let tuple = ProductLabel::unflatten(p, r, m).components;
            let count = spec.ring.fuse_word(&tuple)[0];
            (tuple, count)
        })
        .collect())
}
