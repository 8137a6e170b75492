//! S and T matrices, modularity, Verlinde formula and the SL(2,Z) relations.

use nalgebra::DMatrix;

use super::{CategorySpec, C64};
use crate::error::{MtcError, Result};
use crate::report::{Check, VerificationReport};
use crate::tolerance::ToleranceConfig;

pub const TAG_VERLINDE: &str = "Verlinde formula";
pub const TAG_SL2Z: &str = "modular group relations";

#[derive(Clone, Debug, PartialEq)]
pub struct ModularDatum {
    pub name: String,
    pub s: DMatrix<C64>,
    pub t: DMatrix<C64>,
    pub global_dim: f64,
    pub is_modular: bool,
    pub charge_conjugation: DMatrix<C64>,
    pub singular_values: Vec<f64>,
}

impl ModularDatum {
    pub fn rank(&self) -> usize {
        self.s.nrows()
    }
}

/// `S_ij = S_00 Σ_k N_{ij}^k ϑ_k / (ϑ_i ϑ_j) d_k` with `S_00 = Dim^{-1/2}`:
/// the closed double braiding of `j` and `i` with both loops oriented alike.
/// The variant with `N_{ī j}` differs by `C` and breaks `S t S = γ t⁻¹ S t⁻¹ C`
/// on non-self-dual data. Modularity is decided by the smallest singular
/// value against `atol`.
pub fn modular_datum(spec: &CategorySpec, tol: &ToleranceConfig) -> ModularDatum {
    let r = spec.rank();
    let dim = spec.global_dim();
    let s00 = 1.0 / dim.sqrt();
    let s = DMatrix::from_fn(r, r, |i, j| {
        let sum: C64 = (0..r)
            .map(|k| spec.ring.n(i, j, k) as f64 * spec.twist(k) / (spec.twist(i) * spec.twist(j)) * spec.dim(k))
            .sum();
        sum * s00
    });
    let t = DMatrix::from_fn(r, r, |i, j| if i == j { spec.twist(i) } else { C64::default() });
    let c = DMatrix::from_fn(r, r, |k, l| {
        if k == spec.ring.dual(l) {
            C64::new(1.0, 0.0)
        } else {
            C64::default()
        }
    });
    let mut singular_values: Vec<f64> = s.clone().svd(false, false).singular_values.iter().copied().collect();
    singular_values.sort_by(|a, b| b.total_cmp(a));
    let is_modular = singular_values.last().is_some_and(|&m| m > tol.atol);
    ModularDatum {
        name: spec.name.clone(),
        s,
        t,
        global_dim: dim,
        is_modular,
        charge_conjugation: c,
        singular_values,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerlindeResult {
    /// Flattened `n[(i * rank + j) * rank + k]`.
    pub n: Vec<u32>,
    pub max_snap_distance: f64,
}

impl VerlindeResult {
    pub fn get(&self, rank: usize, i: usize, j: usize, k: usize) -> u32 {
        self.n[(i * rank + j) * rank + k]
    }
}

/// `N_ij^k = Σ_l S_il S_jl conj(S_kl) / S_0l`, snapped to integers.
pub fn verlinde_fusion(md: &ModularDatum, tol: &ToleranceConfig) -> Result<VerlindeResult> {
    if !md.is_modular {
        return Err(MtcError::NotModular(md.name.clone()));
    }
    let r = md.rank();
    let s = &md.s;
    let mut n = vec![0u32; r * r * r];
    let mut max_snap: f64 = 0.0;
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let v: C64 = (0..r).map(|l| s[(i, l)] * s[(j, l)] * s[(k, l)].conj() / s[(0, l)]).sum();
                let rounded = v.re.round();
                let dist = (v - C64::new(rounded, 0.0)).norm();
                if dist > tol.integer_snap || rounded < 0.0 {
                    return Err(MtcError::SnapFailure {
                        i,
                        j,
                        k,
                        value: v.re,
                        distance: dist,
                    });
                }
                max_snap = max_snap.max(dist);
                n[(i * r + j) * r + k] = rounded as u32;
            }
        }
    }
    Ok(VerlindeResult {
        n,
        max_snap_distance: max_snap,
    })
}

fn worst_entry(m: &DMatrix<C64>) -> (usize, usize, f64) {
    let mut worst = (0, 0, 0.0);
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let v = m[(i, j)].norm();
            if v > worst.2 {
                worst = (i, j, v);
            }
        }
    }
    worst
}

/// Solves `S t S = γ t⁻¹ S t⁻¹ C` for `γ` at the (0,0) entry, then checks
/// that identity and `S t⁻¹ S = γ⁻¹ t S t` entrywise, and `|γ| = 1`.
pub fn modular_group_relations(md: &ModularDatum, tol: &ToleranceConfig) -> Result<(C64, VerificationReport)> {
    if !md.is_modular {
        return Err(MtcError::NotModular(md.name.clone()));
    }
    let s = &md.s;
    let t = &md.t;
    let tinv = DMatrix::from_fn(t.nrows(), t.ncols(), |i, j| {
        if i == j {
            t[(i, i)].inv()
        } else {
            C64::default()
        }
    });
    let sts = s * t * s;
    let rhs1 = &tinv * s * &tinv * &md.charge_conjugation;
    let gamma = sts[(0, 0)] / rhs1[(0, 0)];
    let d1 = &sts - rhs1 * gamma;
    let d2 = s * &tinv * s - t * s * t * gamma.inv();

    let mut report = VerificationReport::new();
    for (name, diff) in [("sl2z.sts", d1), ("sl2z.st_inv_s", d2)] {
        let (row, col, dev) = worst_entry(&diff);
        let mut check = Check::measured(name, TAG_SL2Z, dev, tol.atol);
        if !check.passed() {
            check = check.with_note(MtcError::RelationFailure { row, col, deviation: dev }.to_string());
        }
        report.push(check);
    }
    report.push(Check::measured("sl2z.gamma_unimodular", TAG_SL2Z, (gamma.norm() - 1.0).abs(), tol.atol));
    Ok((gamma, report))
}

/// `S S†` against the identity.
pub fn unitarity_deviation(md: &ModularDatum) -> f64 {
    let r = md.rank();
    let prod = &md.s * md.s.adjoint() - DMatrix::<C64>::identity(r, r);
    worst_entry(&prod).2
}

/// `S S` against `C` (normalized S squares to charge conjugation).
pub fn s_squared_deviation(md: &ModularDatum) -> f64 {
    worst_entry(&(&md.s * &md.s - &md.charge_conjugation)).2
}
