//! End-to-end verification runs over one category, and the `compute`
//! commands that print single invariants.

use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::category_data::{
    load_category_spec, modular_datum, modular_group_relations, unitarity_deviation, validate_category,
    verlinde_fusion, CategorySpec, ModularDatum, TAG_VERLINDE,
};
use crate::cft::{
    annulus_coefficients, check_modular_invariance, compose_permutations, cycle_notation,
    multifold_end_multiplicities, parse_cycles, permutation_z_nfold, transposition_z, triple_hom_count,
    TAG_ANNULUS, TAG_MULTIFOLD, TAG_PERMUTATION_INVARIANT,
};
use crate::deligne::deligne_square;
use crate::engine::Engine;
use crate::error::{MtcError, Result};
use crate::frobenius::{
    build_frobenius_algebra, left_center_idempotent, phi_level_deviation, sigma_isomorphism,
    verify_frobenius_axioms, xi_azumaya, xi_values, TAG_AZUMAYA, TAG_CENTER, TAG_FROBENIUS,
};
use crate::module_category::{
    alpha_induction, check_module_pentagon, gamma_twist_functor, transposition_nat_iso, twist_round_trip,
    Pair, Sample, Side, Sign,
};
use crate::report::{Check, Status, Summary, VerificationReport};
use crate::tolerance::ToleranceConfig;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Environment variable overriding the default absolute tolerance.
pub const TOL_ENV: &str = "MTC_TOL";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Coherence,
    Modular,
    Deligne,
    Module,
    Gamma,
    Witness,
    Frobenius,
    Azumaya,
    Cft,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Coherence,
        Suite::Modular,
        Suite::Deligne,
        Suite::Module,
        Suite::Gamma,
        Suite::Witness,
        Suite::Frobenius,
        Suite::Azumaya,
        Suite::Cft,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Coherence => "coherence",
            Suite::Modular => "modular",
            Suite::Deligne => "deligne",
            Suite::Module => "module",
            Suite::Gamma => "gamma",
            Suite::Witness => "witness",
            Suite::Frobenius => "frobenius",
            Suite::Azumaya => "azumaya",
            Suite::Cft => "cft",
        }
    }
}

impl FromStr for Suite {
    type Err = MtcError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                MtcError::InvalidOption(format!("unknown suite `{s}`; available: {}", names.join(", ")))
            })
    }
}

/// Parses `A..B` (inclusive) or a single integer.
pub fn parse_n_range(text: &str) -> Result<(i64, i64)> {
    let bad = || MtcError::InvalidOption(format!("n-range `{text}` must look like -2..2"));
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v = text.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

pub fn parse_suites(text: &str) -> Result<Vec<Suite>> {
    let mut out: Vec<Suite> = text.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Default tolerance, overridden by `MTC_TOL` when set.
pub fn tolerance_from_env() -> Result<ToleranceConfig> {
    match std::env::var(TOL_ENV) {
        Ok(v) => {
            let atol: f64 = v
                .trim()
                .parse()
                .map_err(|_| MtcError::InvalidOption(format!("{TOL_ENV}=`{v}` is not a number")))?;
            checked_tolerance(atol)
        }
        Err(_) => Ok(ToleranceConfig::default()),
    }
}

pub fn checked_tolerance(atol: f64) -> Result<ToleranceConfig> {
    let tol = ToleranceConfig::with_atol(atol);
    if !tol.is_consistent() {
        return Err(MtcError::InvalidOption(format!("tolerance {atol} must lie in (0, 0.1)")));
    }
    Ok(tol)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptions {
    /// Inclusive range of levels `n`.
    pub n_range: (i64, i64),
    pub tol: ToleranceConfig,
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub timings: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            n_range: (-2, 2),
            tol: ToleranceConfig::default(),
            suites: Suite::ALL.to_vec(),
            seed: 0,
            timings: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub tool_version: String,
    pub target: String,
    pub options: SuiteOptions,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.failed > 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| MtcError::InvalidOption(format!("report JSON: {e}")))
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }
}

/// A built-in name or the path of a category file.
pub fn resolve_target(target: &str) -> Result<CategorySpec> {
    match crate::category_data::builtin_category(target) {
        Ok(spec) => Ok(spec),
        Err(unknown) => {
            let path = std::path::Path::new(target);
            if !path.exists() {
                return Err(unknown);
            }
            let text = std::fs::read_to_string(path).map_err(|e| MtcError::Io(format!("{target}: {e}")))?;
            load_category_spec(&text)
        }
    }
}

pub fn run_target(target: &str, options: &SuiteOptions) -> Result<SuiteReport> {
    let spec = resolve_target(target)?;
    Ok(run_suite(target, &spec, options))
}

/// Runs the selected suites in parallel; checks are reported in fixed suite order.
pub fn run_suite(target: &str, spec: &CategorySpec, options: &SuiteOptions) -> SuiteReport {
    let md = modular_datum(spec, &options.tol);
    let coherent = validate_category(spec, &options.tol).all_passed();
    let mut suites = options.suites.clone();
    suites.sort();
    suites.dedup();
    let parts: Vec<VerificationReport> = suites
        .par_iter()
        .map(|&suite| {
            let ctx = Context {
                spec,
                md: &md,
                options,
            };
            if suite != Suite::Coherence && !coherent {
                let mut r = VerificationReport::new();
                r.push(Check::skipped(
                    format!("{}.skipped", suite.name()),
                    "input data",
                    "coherence failed; derived suites are not meaningful",
                ));
                return r;
            }
            let mut report = VerificationReport::new();
            if let Err(e) = ctx.run(suite, &mut report) {
                report.push(
                    Check::measured(format!("{}.error", suite.name()), "operation precondition", f64::INFINITY, 0.0)
                        .with_note(e.to_string()),
                );
            }
            report
        })
        .collect();
    let mut report = VerificationReport::new();
    if !coherent && !suites.contains(&Suite::Coherence) {
        report.push(
            Check::measured("coherence.precondition", "input data", f64::INFINITY, 0.0)
                .with_note("input fails coherence; run the coherence suite for details"),
        );
    }
    for p in parts {
        report.extend(p);
    }
    if !options.timings {
        report.strip_timings();
    }
    SuiteReport {
        tool_version: TOOL_VERSION.into(),
        target: target.into(),
        options: SuiteOptions {
            suites,
            ..options.clone()
        },
        summary: report.summary(),
        checks: report.checks,
    }
}

struct Context<'a> {
    spec: &'a CategorySpec,
    md: &'a ModularDatum,
    options: &'a SuiteOptions,
}

/// Runs `f` and stamps its checks with the elapsed time.
fn step(report: &mut VerificationReport, f: impl FnOnce() -> Result<VerificationReport>) -> Result<()> {
    let start = Instant::now();
    let mut part = f()?;
    let secs = start.elapsed().as_secs_f64();
    for c in &mut part.checks {
        c.wall_time = Some(secs);
    }
    report.extend(part);
    Ok(())
}

const NON_MODULAR: &str = "non-modular input (premodular profile)";
const EXPECTED_FAIL: &str = "fails as expected (non-modular input)";

impl Context<'_> {
    fn tol(&self) -> &ToleranceConfig {
        &self.options.tol
    }

    fn levels(&self) -> std::ops::RangeInclusive<i64> {
        self.options.n_range.0..=self.options.n_range.1
    }

    fn run(&self, suite: Suite, report: &mut VerificationReport) -> Result<()> {
        match suite {
            Suite::Coherence => step(report, || Ok(validate_category(self.spec, self.tol()))),
            Suite::Modular => self.modular(report),
            Suite::Deligne => self.deligne(report),
            Suite::Module => self.module(report),
            Suite::Gamma => self.gamma(report),
            Suite::Witness => self.witness(report),
            Suite::Frobenius => self.frobenius(report),
            Suite::Azumaya => self.azumaya(report),
            Suite::Cft => self.cft(report),
        }
    }

    fn modular(&self, report: &mut VerificationReport) -> Result<()> {
        if !self.md.is_modular {
            for name in ["modular.s_unitary", "verlinde.snap", "verlinde.fusion", "sl2z.relations"] {
                report.push(Check::skipped(name, TAG_VERLINDE, NON_MODULAR));
            }
            return Ok(());
        }
        step(report, || {
            let mut r = VerificationReport::new();
            r.push(Check::measured(
                "modular.s_unitary",
                TAG_VERLINDE,
                unitarity_deviation(self.md),
                self.tol().atol,
            ));
            match verlinde_fusion(self.md, self.tol()) {
                Ok(v) => {
                    let mismatches = v.n.iter().zip(self.spec.ring.tensor()).filter(|(a, b)| a != b).count();
                    r.push(Check::measured(
                        "verlinde.snap",
                        TAG_VERLINDE,
                        v.max_snap_distance,
                        self.tol().integer_snap,
                    ));
                    r.push(Check::exact("verlinde.fusion", TAG_VERLINDE, mismatches));
                }
                Err(e) => r.push(
                    Check::measured("verlinde.snap", TAG_VERLINDE, f64::INFINITY, self.tol().integer_snap)
                        .with_note(e.to_string()),
                ),
            }
            let (gamma, rel) = modular_group_relations(self.md, self.tol())?;
            let note = format!("gamma = {:.12}{:+.12}i", gamma.re, gamma.im);
            for c in rel.checks {
                r.push(c.with_note(note.clone()));
            }
            Ok(r)
        })
    }

    fn deligne(&self, report: &mut VerificationReport) -> Result<()> {
        step(report, || {
            let sq = deligne_square(self.spec)?;
            let mut r = VerificationReport::new();
            for mut c in validate_category(&sq, self.tol()).checks {
                c.name = format!("deligne.{}", c.name);
                r.push(c);
            }
            let dim_dev = (sq.global_dim() - self.spec.global_dim().powi(2)).abs();
            r.push(Check::measured("deligne.global_dim", "Deligne square", dim_dev, self.tol().atol));
            Ok(r)
        })
    }

    fn module(&self, report: &mut VerificationReport) -> Result<()> {
        let engine = Engine::new(self.spec)?;
        let sample = Sample::default_for(self.spec.rank(), self.options.seed);
        for n in self.levels() {
            for side in [Side::Right, Side::Left] {
                step(report, || check_module_pentagon(&engine, n, side, sample, self.tol()))?;
            }
        }
        Ok(())
    }

    fn gamma(&self, report: &mut VerificationReport) -> Result<()> {
        let engine = Engine::new(self.spec)?;
        let (lo, hi) = self.options.n_range;
        for n in lo..hi {
            step(report, || Ok(gamma_twist_functor(&engine, n, self.tol())?.1))?;
        }
        step(report, || twist_round_trip(&engine, self.tol()))
    }

    fn witness(&self, report: &mut VerificationReport) -> Result<()> {
        let engine = Engine::new(self.spec)?;
        let r = self.spec.rank();
        let z = transposition_z(self.spec);
        let mut mismatches = 0;
        for u in 0..r {
            for v in 0..r {
                let mut part = VerificationReport::new();
                step(&mut part, || transposition_nat_iso(&engine, u, v, self.tol()))?;
                let invertible = part.checks.iter().all(|c| c.passed());
                if invertible != (z.z[(u * r + v, v * r + u)] == 1) {
                    mismatches += 1;
                }
                report.extend(part);
            }
        }
        report.push(Check::exact(
            "witness.matches_z",
            TAG_PERMUTATION_INVARIANT,
            mismatches,
        ));
        let x = Pair::simple(r - 1, r - 1);
        for sign in [Sign::Plus, Sign::Minus] {
            step(report, || Ok(alpha_induction(&engine, sign, &x, 0, self.tol())?.1))?;
        }
        Ok(())
    }

    fn frobenius(&self, report: &mut VerificationReport) -> Result<()> {
        let tol = self.tol().frobenius();
        let mut algs = Vec::new();
        for n in self.levels() {
            let alg = build_frobenius_algebra(self.spec, n)?;
            step(report, || verify_frobenius_axioms(&alg, tol))?;
            algs.push(alg);
        }
        for w in algs.windows(2) {
            step(report, || Ok(sigma_isomorphism(&w[0], &w[1], self.tol())?.1))?;
        }
        let base = match algs.iter().find(|a| a.n == 0) {
            Some(_) => None,
            None => Some(build_frobenius_algebra(self.spec, 0)?),
        };
        let zero = base.as_ref().or_else(|| algs.iter().find(|a| a.n == 0)).expect("level 0 present");
        for alg in &algs {
            let dev = phi_level_deviation(alg, zero)?;
            report.push(Check::measured(format!("frobenius.phi_level.n={}", alg.n), TAG_FROBENIUS, dev, tol));
        }
        Ok(())
    }

    fn azumaya(&self, report: &mut VerificationReport) -> Result<()> {
        let tol = self.tol();
        let modular = self.md.is_modular;
        let xi = xi_values(self.spec);
        match xi_azumaya(self.spec, tol) {
            Ok((_, is_az)) => {
                let note = format!(
                    "xi = ({})",
                    xi.iter().map(|z| format!("{:.6}", z.re)).collect::<Vec<_>>().join(", ")
                );
                let check = if modular {
                    Check::exact("azumaya.xi", TAG_AZUMAYA, usize::from(!is_az)).with_note(note)
                } else {
                    Check::exact("azumaya.xi", TAG_AZUMAYA, usize::from(is_az))
                        .with_note(format!("{EXPECTED_FAIL}; {note}"))
                };
                report.push(check);
            }
            Err(e) => report.push(Check::measured("azumaya.xi", TAG_AZUMAYA, f64::INFINITY, 0.0).with_note(e.to_string())),
        }
        for n in self.levels().filter(|n| (-1..=1).contains(n)) {
            let alg = build_frobenius_algebra(self.spec, n)?;
            step(report, || {
                let c = left_center_idempotent(&alg, tol)?;
                let mut r = VerificationReport::new();
                r.push(Check::measured(
                    format!("azumaya.p_idempotent.n={n}"),
                    TAG_CENTER,
                    c.idempotency_defect,
                    tol.atol,
                ));
                let pattern: Vec<usize> = xi.iter().map(|z| usize::from((z - 1.0).norm() < tol.atol)).collect();
                let mismatches = pattern.iter().zip(&c.rank_per_component).filter(|(a, b)| a != b).count();
                r.push(
                    Check::exact(format!("azumaya.rank_matches_xi.n={n}"), TAG_CENTER, mismatches)
                        .with_note(format!("rank vector {:?}", c.rank_per_component)),
                );
                let dev = c.p.distance(&alg.trivial_center()?);
                if modular {
                    r.push(Check::measured(
                        format!("azumaya.p_trivial.n={n}"),
                        TAG_AZUMAYA,
                        dev,
                        tol.frobenius(),
                    ));
                } else {
                    r.push(
                        Check::exact(format!("azumaya.p_trivial.n={n}"), TAG_AZUMAYA, usize::from(c.is_trivial))
                            .with_note(format!("{EXPECTED_FAIL}; deviation {dev:.3e}")),
                    );
                }
                Ok(r)
            })?;
        }
        Ok(())
    }

    fn cft(&self, report: &mut VerificationReport) -> Result<()> {
        let spec = self.spec;
        let r = spec.rank();
        step(report, || {
            let mut rep = VerificationReport::new();
            let z = transposition_z(spec);
            let involution = &z.z * &z.z != nalgebra::DMatrix::identity(z.dim(), z.dim());
            rep.push(Check::exact(
                "z.permutation_involution",
                TAG_PERMUTATION_INVARIANT,
                usize::from(!z.is_permutation_matrix() || involution),
            ));
            if self.md.is_modular {
                rep.extend(check_modular_invariance(&z, spec, self.tol())?);
                let s3 = all_permutations(3);
                let mut hom_failures = 0;
                for g in &s3 {
                    let zg = permutation_z_nfold(spec, g)?;
                    rep.extend(check_modular_invariance(&zg, spec, self.tol())?);
                    for h in &s3 {
                        let zh = permutation_z_nfold(spec, h)?;
                        let zgh = permutation_z_nfold(spec, &compose_permutations(g, h))?;
                        hom_failures += usize::from(zgh.z != &zg.z * &zh.z);
                    }
                }
                rep.push(Check::exact("z.s3_homomorphism", TAG_PERMUTATION_INVARIANT, hom_failures));
            } else {
                rep.push(Check::skipped("z.s_invariance", TAG_PERMUTATION_INVARIANT, NON_MODULAR));
            }
            Ok(rep)
        })?;
        step(report, || {
            let mut mismatches = 0;
            for i in 0..r {
                for j in 0..r {
                    for k in 0..r {
                        for l in 0..r {
                            mismatches +=
                                usize::from(annulus_coefficients(spec, i, j, k, l) != triple_hom_count(spec, i, j, k, l));
                        }
                    }
                }
            }
            let ends = multifold_end_multiplicities(spec, 2)?;
            let end_mismatches = ends
                .iter()
                .filter(|(t, &v)| v != u64::from(t[1] == spec.ring.dual(t[0])))
                .count();
            let mut rep = VerificationReport::new();
            rep.push(Check::exact("annulus.hom_count", TAG_ANNULUS, mismatches));
            rep.push(Check::exact("multifold.m=2", TAG_MULTIFOLD, end_mismatches));
            Ok(rep)
        })
    }
}

/// All permutations of `{0..n}` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in all_permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut g = rest.clone();
            g.insert(pos, n - 1);
            out.push(g);
        }
    }
    out.sort();
    out
}

// ---- compute commands ------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComputeCommand {
    Xi,
    Z,
    Annulus,
    Multifold,
    ModularData,
}

impl FromStr for ComputeCommand {
    type Err = MtcError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xi" => Ok(Self::Xi),
            "z" => Ok(Self::Z),
            "annulus" => Ok(Self::Annulus),
            "multifold" => Ok(Self::Multifold),
            "modular-data" => Ok(Self::ModularData),
            _ => Err(MtcError::InvalidOption(format!(
                "unknown compute command `{s}`; available: xi, z, annulus, multifold, modular-data"
            ))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ComputeArgs {
    /// Cycle notation, default `(1 2)`.
    pub perm: Option<String>,
    /// Number of factors for `z`; defaults to the largest point in `perm`, at least 2.
    pub arity: Option<usize>,
    pub i: Option<String>,
    pub j: Option<String>,
    pub k: Option<String>,
    pub l: Option<String>,
    pub m: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComputeOutput {
    pub text: String,
    pub json: Value,
}

/// A label given by name or by index.
pub fn parse_label(spec: &CategorySpec, text: &str) -> Result<usize> {
    if let Some(i) = spec.label_index(text) {
        return Ok(i);
    }
    match text.parse::<usize>() {
        Ok(i) if i < spec.rank() => Ok(i),
        Ok(i) => Err(MtcError::InvalidLabel {
            label: i,
            rank: spec.rank(),
        }),
        Err(_) => Err(MtcError::InvalidOption(format!(
            "unknown label `{text}`; labels are {}",
            spec.labels.join(", ")
        ))),
    }
}

/// Values below print precision are shown as zero, avoiding `-0.000000000`.
fn fmt_c(z: crate::category_data::C64) -> String {
    let clean = |x: f64| if x.abs() < 5e-10 { 0.0 } else { x };
    format!("{:.9}{:+.9}i", clean(z.re), clean(z.im))
}

pub fn compute(command: ComputeCommand, spec: &CategorySpec, args: &ComputeArgs, tol: &ToleranceConfig) -> Result<ComputeOutput> {
    let ctx = |e: MtcError| match e {
        MtcError::InvalidOption(m) => MtcError::InvalidOption(format!("compute: {m}")),
        other => other,
    };
    match command {
        ComputeCommand::Xi => {
            let (xi, is_az) = xi_azumaya(spec, tol).map_err(ctx)?;
            let mut text = format!("{:<12} xi\n", "label");
            for (i, z) in xi.iter().enumerate() {
                text.push_str(&format!("{:<12} {}\n", spec.label_name(i), fmt_c(*z)));
            }
            text.push_str(&format!("azumaya: {is_az}\n"));
            let json = json!({
                "target": spec.name,
                "xi": xi.iter().enumerate().map(|(i, z)| json!({"label": spec.label_name(i), "re": z.re, "im": z.im})).collect::<Vec<_>>(),
                "is_azumaya": is_az,
            });
            Ok(ComputeOutput { text, json })
        }
        ComputeCommand::Z => {
            let perm = args.perm.clone().unwrap_or_else(|| "(1 2)".into());
            let max_point = perm
                .split(|c: char| !c.is_ascii_digit())
                .filter_map(|s| s.parse::<usize>().ok())
                .max()
                .unwrap_or(0);
            let arity = args.arity.unwrap_or(max_point.max(2));
            let g = parse_cycles(&perm, arity).map_err(ctx)?;
            let z = permutation_z_nfold(spec, &g)?;
            let r = spec.rank();
            let name = |p: usize| {
                let parts: Vec<&str> = crate::deligne::ProductLabel::unflatten(p, r, arity)
                    .components
                    .iter()
                    .map(|&a| spec.label_name(a))
                    .collect();
                format!("({})", parts.join(","))
            };
            let triples = z.sparse_triples();
            let mut text = format!("Z for {} on {}^{arity}: {}x{} matrix\n", cycle_notation(&g), spec.name, z.dim(), z.dim());
            for &(p, q, v) in &triples {
                text.push_str(&format!("{p} {q} {v}    {} -> {}\n", name(p), name(q)));
            }
            if let Some(w) = &z.warning {
                text.push_str(&format!("warning: {w}\n"));
            }
            let json = json!({
                "target": spec.name,
                "permutation": cycle_notation(&g),
                "arity": arity,
                "dim": z.dim(),
                "triples": triples,
                "warning": z.warning,
            });
            Ok(ComputeOutput { text, json })
        }
        ComputeCommand::Annulus => {
            let get = |v: &Option<String>, which: &str| -> Result<usize> {
                let text = v
                    .as_deref()
                    .ok_or_else(|| MtcError::InvalidOption(format!("compute annulus: missing --{which}")))?;
                parse_label(spec, text)
            };
            let (i, j, k, l) = (get(&args.i, "i")?, get(&args.j, "j")?, get(&args.k, "k")?, get(&args.l, "l")?);
            let a = annulus_coefficients(spec, i, j, k, l);
            Ok(ComputeOutput {
                text: format!("{a}\n"),
                json: json!({"target": spec.name, "i": i, "j": j, "k": k, "l": l, "value": a}),
            })
        }
        ComputeCommand::Multifold => {
            let m = args.m.unwrap_or(2);
            let ends = multifold_end_multiplicities(spec, m)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for (t, v) in ends.iter().filter(|(_, &v)| v > 0) {
                let names: Vec<&str> = t.iter().map(|&a| spec.label_name(a)).collect();
                text.push_str(&format!("({}) {v}\n", names.join(",")));
                rows.push(json!({"labels": t, "multiplicity": v}));
            }
            Ok(ComputeOutput {
                text,
                json: json!({"target": spec.name, "m": m, "nonzero": rows}),
            })
        }
        ComputeCommand::ModularData => {
            let md = modular_datum(spec, tol);
            let r = md.rank();
            let mut text = format!("Dim = {:.12}\nmodular = {}\nS =\n", md.global_dim, md.is_modular);
            let mut s_rows = Vec::new();
            for i in 0..r {
                let row: Vec<String> = (0..r).map(|j| fmt_c(md.s[(i, j)])).collect();
                text.push_str(&format!("  {}\n", row.join("  ")));
                s_rows.push((0..r).map(|j| [md.s[(i, j)].re, md.s[(i, j)].im]).collect::<Vec<_>>());
            }
            text.push_str("T =\n");
            for i in 0..r {
                text.push_str(&format!("  {:<10} {}\n", spec.label_name(i), fmt_c(md.t[(i, i)])));
            }
            let gamma = if md.is_modular {
                let (g, _) = modular_group_relations(&md, tol)?;
                text.push_str(&format!("gamma = {}\n", fmt_c(g)));
                Some([g.re, g.im])
            } else {
                None
            };
            let json = json!({
                "target": spec.name,
                "global_dim": md.global_dim,
                "is_modular": md.is_modular,
                "s": s_rows,
                "t": (0..r).map(|i| [md.t[(i, i)].re, md.t[(i, i)].im]).collect::<Vec<_>>(),
                "gamma": gamma,
            });
            Ok(ComputeOutput { text, json })
        }
    }
}
