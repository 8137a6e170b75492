//! `C` as a right (and left) module category over `C ⊠ C`.
//!
//! An object `U × V` of the Deligne square acts by `M ⊠ (U × V) = M ⊗ U ⊗ V`.
//! Objects are words of simple labels, so every structure map below is a
//! morphism of the diagram engine between concatenated words.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::category_data::C64;
use crate::engine::{Crossing, Engine, Morphism};
use crate::error::{MtcError, Result};
use crate::report::{Check, VerificationReport};
use crate::tolerance::{ToleranceConfig, TWIST_ROUND_TRIP};

pub const TAG_MODULE_PENTAGON: &str = "module category: pentagon for the associator family";
pub const TAG_MODULE_FUNCTOR: &str = "twist-induced module functor between neighbouring levels";
pub const TAG_TWIST_EXTRACTION: &str = "twist recovered from a level-raising module functor";
pub const TAG_INDUCTION: &str = "braided induction: module functor structure";
pub const TAG_TRANSPOSITION: &str = "transposition natural isomorphism between inductions";

/// An object `U × V` of `C ⊠ C` with each side a word of simples.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
}

impl Pair {
    pub fn new(u: Vec<usize>, v: Vec<usize>) -> Self {
        Self { u, v }
    }

    pub fn simple(u: usize, v: usize) -> Self {
        Self { u: vec![u], v: vec![v] }
    }

    /// The tensor unit, as an empty pair.
    pub fn unit() -> Self {
        Self { u: vec![], v: vec![] }
    }

    /// `(U × V) ⊗ (U' × V') = (U ⊗ U') × (V ⊗ V')`.
    pub fn tensor(&self, other: &Pair) -> Pair {
        Pair {
            u: cat(&[&self.u, &other.u]),
            v: cat(&[&self.v, &other.v]),
        }
    }

    /// The word of `M ⊠ X`.
    pub fn act(&self, m: &[usize]) -> Vec<usize> {
        cat(&[m, &self.u, &self.v])
    }

    /// The word of `X ⊠̂ M`.
    pub fn act_left(&self, m: &[usize]) -> Vec<usize> {
        cat(&[&self.u, &self.v, m])
    }
}

fn cat(parts: &[&[usize]]) -> Vec<usize> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sample {
    AllSimples,
    Random { draws: usize, seed: u64 },
}

impl Sample {
    /// Exhaustive for base rank ≤ 3, otherwise 64 seeded draws.
    pub fn default_for(rank: usize, seed: u64) -> Self {
        if rank <= 3 {
            Sample::AllSimples
        } else {
            Sample::Random { draws: 64, seed }
        }
    }
}

/// Decomposition of `M ⊗ U ⊗ V`: `k ↦ Σ_m N_MU^m N_mV^k`.
pub fn module_action(engine: &Engine, m: usize, x: (usize, usize)) -> Vec<u64> {
    engine.spec().ring.fuse_word(&[m, x.0, x.1])
}

/// The braiding used inside the associator. `Standard` is the genuine one;
/// `Perturbed` conjugates with `D^{+n}` on both sides instead of `D^{∓n}`,
/// which is not an associator for `n ≠ 0` and serves as a negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Standard,
    Perturbed,
}

/// `ψ^(n)_{M,X,Y}: M ⊠ (X ⊗ Y) -> (M ⊠ X) ⊠ Y`, i.e. the word
/// `M U1 U2 V1 V2 -> M U1 V1 U2 V2`, as
/// `[D^{-n}_{MU1V1,U2} ∘ (id_{MU1} ⊗ c_{U2,V1}) ∘ (D^n_{MU1,U2} ⊗ id_{V1})] ⊗ id_{V2}`.
pub fn psi(engine: &Engine, n: i64, m: &[usize], x: &Pair, y: &Pair) -> Result<Morphism> {
    psi_variant(engine, n, m, x, y, Variant::Standard)
}

pub fn psi_variant(engine: &Engine, n: i64, m: &[usize], x: &Pair, y: &Pair, variant: Variant) -> Result<Morphism> {
    let w = cat(&[m, &x.u, &y.u, &x.v, &y.v]);
    let mu1 = m.len() + x.u.len();
    let first = engine.monodromy(&w, 0, mu1, y.u.len(), n)?;
    let swap = engine.block_braid(&w, mu1, y.u.len(), x.v.len(), Crossing::Over)?;
    let outer = match variant {
        Variant::Standard => -n,
        Variant::Perturbed => n,
    };
    let last = engine.monodromy(&swap.target, 0, mu1 + x.v.len(), y.u.len(), outer)?;
    last.compose(&swap)?.compose(&first)
}

/// `ψ̂^(n)_{X,Y,M}: (X ⊗ Y) ⊠̂ M -> X ⊠̂ (Y ⊠̂ M)`, i.e. the word
/// `U1 U2 V1 V2 M -> U1 V1 U2 V2 M`, as
/// `id_{U1} ⊗ [D^n_{V1,U2V2M} ∘ (c^{-1}_{V1,U2} ⊗ id) ∘ (id_{U2} ⊗ D^{-n}_{V1,V2M})]`.
pub fn psi_left(engine: &Engine, n: i64, x: &Pair, y: &Pair, m: &[usize]) -> Result<Morphism> {
    let w = cat(&[&x.u, &y.u, &x.v, &y.v, m]);
    let u1 = x.u.len();
    let (u2, v1) = (y.u.len(), x.v.len());
    let rest = y.v.len() + m.len();
    let first = engine.monodromy(&w, u1 + u2, v1, rest, -n)?;
    let swap = engine.block_braid(&w, u1, u2, v1, Crossing::Under)?;
    let last = engine.monodromy(&swap.target, u1, v1, u2 + rest, n)?;
    last.compose(&swap)?.compose(&first)
}

/// Either side of the associator, in a form suitable for one pentagon term.
pub fn build_associator(
    engine: &Engine,
    n: i64,
    side: Side,
    m: &[usize],
    x: &Pair,
    y: &Pair,
) -> Result<Morphism> {
    match side {
        Side::Right => psi(engine, n, m, x, y),
        Side::Left => psi_left(engine, n, x, y, m),
    }
}

/// Deviation of one right pentagon:
/// `ψ_{M⊠X,Y,Z} ∘ ψ_{M,X,Y⊗Z}` against `(ψ_{M,X,Y} ⊠ id_Z) ∘ ψ_{M,X⊗Y,Z}`.
pub fn right_pentagon_deviation(
    engine: &Engine,
    n: i64,
    variant: Variant,
    m: &[usize],
    x: &Pair,
    y: &Pair,
    z: &Pair,
) -> Result<f64> {
    let lhs = psi_variant(engine, n, &x.act(m), y, z, variant)?.compose(&psi_variant(
        engine,
        n,
        m,
        x,
        &y.tensor(z),
        variant,
    )?)?;
    let inner = psi_variant(engine, n, m, x, y, variant)?;
    let rhs = engine
        .embed(&[], &inner, &cat(&[&z.u, &z.v]))?
        .compose(&psi_variant(engine, n, m, &x.tensor(y), z, variant)?)?;
    Ok(lhs.distance(&rhs))
}

/// Deviation of one left pentagon:
/// `ψ̂_{X,Y,Z⊠̂M} ∘ ψ̂_{X⊗Y,Z,M}` against `(id_X ⊠̂ ψ̂_{Y,Z,M}) ∘ ψ̂_{X,Y⊗Z,M}`.
pub fn left_pentagon_deviation(engine: &Engine, n: i64, x: &Pair, y: &Pair, z: &Pair, m: &[usize]) -> Result<f64> {
    let lhs = psi_left(engine, n, x, y, &z.act_left(m))?.compose(&psi_left(engine, n, &x.tensor(y), z, m)?)?;
    let inner = psi_left(engine, n, y, z, m)?;
    let rhs = engine
        .embed(&cat(&[&x.u, &x.v]), &inner, &[])?
        .compose(&psi_left(engine, n, x, &y.tensor(z), m)?)?;
    Ok(lhs.distance(&rhs))
}

/// Simple test objects: every `(M, X, Y, Z)` or a seeded random subset.
fn quadruples(rank: usize, sample: Sample) -> Vec<(usize, Pair, Pair, Pair)> {
    let pairs: Vec<Pair> = (0..rank).flat_map(|u| (0..rank).map(move |v| Pair::simple(u, v))).collect();
    match sample {
        Sample::AllSimples => {
            let mut out = Vec::new();
            for m in 0..rank {
                for x in &pairs {
                    for y in &pairs {
                        for z in &pairs {
                            out.push((m, x.clone(), y.clone(), z.clone()));
                        }
                    }
                }
            }
            out
        }
        Sample::Random { draws, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..draws)
                .map(|_| {
                    let mut pick = || pairs[rng.gen_range(0..pairs.len())].clone();
                    let (x, y, z) = (pick(), pick(), pick());
                    (rng.gen_range(0..rank), x, y, z)
                })
                .collect()
        }
    }
}

fn max_over<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<f64> + Sync) -> Result<f64> {
    items
        .par_iter()
        .map(&f)
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
}

/// Pentagon over simple quadruples plus the triangle identity: with `X = 𝟙 × 𝟙`
/// written as unit strands, `ψ_{M,X,Y}` must be the unit-strand transport.
pub fn check_module_pentagon(
    engine: &Engine,
    n: i64,
    side: Side,
    sample: Sample,
    tol: &ToleranceConfig,
) -> Result<VerificationReport> {
    let rank = engine.rank();
    let quads = quadruples(rank, sample);
    let dev = max_over(&quads, |(m, x, y, z)| match side {
        Side::Right => right_pentagon_deviation(engine, n, Variant::Standard, &[*m], x, y, z),
        Side::Left => left_pentagon_deviation(engine, n, x, y, z, &[*m]),
    })?;
    let unit = Pair::simple(0, 0);
    let mut tri: f64 = 0.0;
    for m in 0..rank {
        for u in 0..rank {
            for v in 0..rank {
                let x = Pair::simple(u, v);
                let p = build_associator(engine, n, side, &[m], &unit, &x)?;
                // the unit strand is moved by the canonical identification
                let transport = match side {
                    Side::Right => engine.block_braid(&p.source, 2, 1, 1, Crossing::Over)?,
                    Side::Left => engine.block_braid(&p.source, 1, 1, 1, Crossing::Over)?,
                };
                tri = tri.max(p.distance(&transport));
            }
        }
    }
    let label = match side {
        Side::Right => "right",
        Side::Left => "left",
    };
    let mut report = VerificationReport::new();
    report.push(Check::measured(
        format!("module.pentagon.{label}.n={n}"),
        TAG_MODULE_PENTAGON,
        dev,
        tol.atol,
    ));
    report.push(Check::measured(
        format!("module.triangle.{label}.n={n}"),
        TAG_MODULE_PENTAGON,
        tri,
        tol.atol,
    ));
    Ok(report)
}

/// Worst pentagon deviation of the perturbed family; large means the
/// control correctly fails.
pub fn perturbed_pentagon_deviation(engine: &Engine, n: i64, sample: Sample) -> Result<f64> {
    let quads = quadruples(engine.rank(), sample);
    max_over(&quads, |(m, x, y, z)| {
        right_pentagon_deviation(engine, n, Variant::Perturbed, &[*m], x, y, z)
    })
}

/// Largest unitarity and condition-number defects of `ψ^(n)` on simple triples.
pub fn associator_conditioning(engine: &Engine, n: i64, side: Side) -> Result<(f64, f64)> {
    let r = engine.rank();
    let mut unit_dev: f64 = 0.0;
    let mut cond: f64 = 1.0;
    for m in 0..r {
        for (u1, v1, u2, v2) in simple_quads(r) {
            let (x, y) = (Pair::simple(u1, v1), Pair::simple(u2, v2));
            let p = build_associator(engine, n, side, &[m], &x, &y)?;
            unit_dev = unit_dev.max(p.unitarity_deviation());
            cond = cond.max(p.condition_number());
        }
    }
    Ok((unit_dev, cond))
}

fn simple_quads(r: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..r * r * r * r).map(move |i| (i / (r * r * r), (i / (r * r)) % r, (i / r) % r, i % r))
}

// ---- twist-induced module functors -------------------------------------

/// Structure maps `γ_{M,U×V}` of the identity functor `C^(n) -> C^(n+1)`,
/// tabulated on simple `(M, U, V)`; `M = None` stands for the unit.
#[derive(Clone, Debug)]
pub struct ModuleFunctorData {
    pub source_n: i64,
    pub target_n: i64,
    pub gamma: BTreeMap<(Option<usize>, usize, usize), Morphism>,
}

/// `γ_{M,U×V} = [θ^{-1}_{M⊗U} ∘ (θ_M ⊗ id_U)] ⊗ id_V` on the word `M U V`.
pub fn gamma(engine: &Engine, m: &[usize], x: &Pair) -> Result<Morphism> {
    let w = x.act(m);
    let mu = m.len() + x.u.len();
    let a = engine.twist_power(&w, 0, m.len(), 1)?;
    let b = engine.twist_power(&w, 0, mu, -1)?;
    b.compose(&a)
}

/// Deviation of `(γ_{M,X} ⊠ id_Y) ∘ γ_{M⊠X,Y} ∘ ψ^(n) = ψ^(n+1) ∘ γ_{M,X⊗Y}`.
pub fn gamma_functor_deviation(engine: &Engine, n: i64, m: &[usize], x: &Pair, y: &Pair) -> Result<f64> {
    let mx = x.act(m);
    let g1 = engine.embed(&[], &gamma(engine, m, x)?, &cat(&[&y.u, &y.v]))?;
    let g2 = gamma(engine, &mx, y)?;
    let lhs = g1.compose(&g2)?.compose(&psi(engine, n, m, x, y)?)?;
    let rhs = psi(engine, n + 1, m, x, y)?.compose(&gamma(engine, m, &x.tensor(y))?)?;
    Ok(lhs.distance(&rhs))
}

fn simple_triples(r: usize) -> Vec<(usize, Pair, Pair)> {
    let mut out = Vec::new();
    for m in 0..r {
        for (u1, v1, u2, v2) in simple_quads(r) {
            out.push((m, Pair::simple(u1, v1), Pair::simple(u2, v2)));
        }
    }
    out
}

/// Builds `γ` from the twist and checks the module-functor equation from
/// level `n` to `n + 1` over all simple `(M, X, Y)`.
pub fn gamma_twist_functor(
    engine: &Engine,
    n: i64,
    tol: &ToleranceConfig,
) -> Result<(ModuleFunctorData, VerificationReport)> {
    let r = engine.rank();
    let mut table = BTreeMap::new();
    for m in std::iter::once(None).chain((0..r).map(Some)) {
        let mw: Vec<usize> = m.into_iter().collect();
        for u in 0..r {
            for v in 0..r {
                table.insert((m, u, v), gamma(engine, &mw, &Pair::simple(u, v))?);
            }
        }
    }
    let triples = simple_triples(r);
    let dev = max_over(&triples, |(m, x, y)| gamma_functor_deviation(engine, n, &[*m], x, y))?;
    let mut report = VerificationReport::new();
    report.push(Check::measured(
        format!("gamma.module_functor.n={n}->{}", n + 1),
        TAG_MODULE_FUNCTOR,
        dev,
        tol.atol,
    ));
    Ok((
        ModuleFunctorData {
            source_n: n,
            target_n: n + 1,
            gamma: table,
        },
        report,
    ))
}

/// `θ_U = γ_{𝟙,𝟙×U} ∘ γ_{𝟙,U×𝟙}^{-1}` read off as a scalar on each simple.
pub fn extract_twist(data: &ModuleFunctorData) -> Result<Vec<C64>> {
    if (data.source_n, data.target_n) != (0, 1) {
        return Err(MtcError::WrongLevels {
            from: data.source_n as i32,
            to: data.target_n as i32,
        });
    }
    let rank = data.gamma.keys().map(|k| k.1 + 1).max().unwrap_or(0);
    (0..rank)
        .map(|u| {
            let scalar = |key: (Option<usize>, usize, usize)| -> Result<C64> {
                let g = data
                    .gamma
                    .get(&key)
                    .ok_or_else(|| MtcError::ShapeMismatch(format!("γ missing for {key:?}")))?;
                Ok(g.blocks[u][(0, 0)])
            };
            Ok(scalar((None, 0, u))? / scalar((None, u, 0))?)
        })
        .collect()
}

/// Twist round trip: `extract_twist ∘ gamma_twist_functor(0)` against the data.
pub fn twist_round_trip(engine: &Engine, tol: &ToleranceConfig) -> Result<VerificationReport> {
    let data = level_zero_table(engine)?;
    let theta = extract_twist(&data)?;
    let dev = theta
        .iter()
        .enumerate()
        .map(|(i, t)| (t - engine.spec().twist(i)).norm())
        .fold(0.0, f64::max);
    let mut report = VerificationReport::new();
    report.push(Check::measured(
        "gamma.twist_round_trip",
        TAG_TWIST_EXTRACTION,
        dev,
        TWIST_ROUND_TRIP.min(tol.atol),
    ));
    Ok(report)
}

/// The level-0 table without running the functor check.
fn level_zero_table(engine: &Engine) -> Result<ModuleFunctorData> {
    let r = engine.rank();
    let mut table = BTreeMap::new();
    for u in 0..r {
        for v in 0..r {
            table.insert((None, u, v), gamma(engine, &[], &Pair::simple(u, v))?);
        }
    }
    Ok(ModuleFunctorData {
        source_n: 0,
        target_n: 1,
        gamma: table,
    })
}

/// `ψ^(n)` rebuilt from `ψ^(0)` by conjugating with `γ` `n` times, against
/// the direct construction, over simple triples.
pub fn sigma_chain_deviation(engine: &Engine, n: i64) -> Result<f64> {
    let triples = simple_triples(engine.rank());
    max_over(&triples, |(m, x, y)| {
        let m = [*m];
        let mut p = psi(engine, 0, &m, x, y)?;
        let g1 = engine.embed(&[], &gamma(engine, &m, x)?, &cat(&[&y.u, &y.v]))?;
        let g2 = gamma(engine, &x.act(&m), y)?;
        let left = g1.compose(&g2)?;
        let right_inv = gamma(engine, &m, &x.tensor(y))?.inverse()?;
        for _ in 0..n {
            p = left.compose(&p)?.compose(&right_inv)?;
        }
        Ok(p.distance(&psi(engine, n, &m, x, y)?))
    })
}

// ---- braided induction ---------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn crossing(self) -> Crossing {
        match self {
            Sign::Plus => Crossing::Over,
            Sign::Minus => Crossing::Under,
        }
    }
}

/// `α^±_X` with its structure maps tabulated on simple `(M, Y)`.
#[derive(Clone, Debug)]
pub struct InductionStructure {
    pub sign: Sign,
    pub x: Pair,
    pub n: i64,
    pub gamma: BTreeMap<(usize, Pair), Morphism>,
}

/// `γ^{X,+}_{M,Y} = ψ_{M,X,Y} ∘ (id_M ⊠ c_{Y,X}) ∘ ψ^{-1}_{M,Y,X}` and the
/// `−` version with `c^{-1}_{X,Y}`; word `M U_Y V_Y U_X V_X -> M U_X V_X U_Y V_Y`.
pub fn induction_gamma(engine: &Engine, sign: Sign, n: i64, m: &[usize], x: &Pair, y: &Pair) -> Result<Morphism> {
    let back = psi(engine, n, m, y, x)?.inverse()?;
    let w = back.target.clone();
    let c1 = engine.block_braid(&w, m.len(), y.u.len(), x.u.len(), sign.crossing())?;
    let start_v = m.len() + x.u.len() + y.u.len();
    let c2 = engine.block_braid(&c1.target, start_v, y.v.len(), x.v.len(), sign.crossing())?;
    psi(engine, n, m, x, y)?.compose(&c2)?.compose(&c1)?.compose(&back)
}

/// Deviation of the module-functor equation for `α^±_X` at `(M, Y, Z)`:
/// `(γ_{M,Y} ⊠ id_Z) ∘ γ_{M⊠Y,Z} ∘ (ψ_{M,Y,Z} ⊠ id_X) = ψ_{M⊠X,Y,Z} ∘ γ_{M,Y⊗Z}`.
pub fn induction_functor_deviation(
    engine: &Engine,
    sign: Sign,
    n: i64,
    x: &Pair,
    m: &[usize],
    y: &Pair,
    z: &Pair,
) -> Result<f64> {
    let xw = cat(&[&x.u, &x.v]);
    let zw = cat(&[&z.u, &z.v]);
    let lhs = engine
        .embed(&[], &induction_gamma(engine, sign, n, m, x, y)?, &zw)?
        .compose(&induction_gamma(engine, sign, n, &y.act(m), x, z)?)?
        .compose(&engine.embed(&[], &psi(engine, n, m, y, z)?, &xw)?)?;
    let rhs = psi(engine, n, &x.act(m), y, z)?.compose(&induction_gamma(engine, sign, n, m, x, &y.tensor(z))?)?;
    Ok(lhs.distance(&rhs))
}

pub fn alpha_induction(
    engine: &Engine,
    sign: Sign,
    x: &Pair,
    n: i64,
    tol: &ToleranceConfig,
) -> Result<(InductionStructure, VerificationReport)> {
    let r = engine.rank();
    let mut table = BTreeMap::new();
    let mut cond: f64 = 1.0;
    for m in 0..r {
        for u in 0..r {
            for v in 0..r {
                let y = Pair::simple(u, v);
                let g = induction_gamma(engine, sign, n, &[m], x, &y)?;
                cond = cond.max(g.condition_number());
                table.insert((m, y), g);
            }
        }
    }
    let triples = simple_triples(r);
    let dev = max_over(&triples, |(m, y, z)| {
        induction_functor_deviation(engine, sign, n, x, &[*m], y, z)
    })?;
    let s = match sign {
        Sign::Plus => "+",
        Sign::Minus => "-",
    };
    let mut report = VerificationReport::new();
    report.push(Check::measured(
        format!("induction{s}.module_functor.X=({:?},{:?}).n={n}", x.u, x.v),
        TAG_INDUCTION,
        dev,
        tol.atol,
    ));
    let inv = if cond.is_finite() { 0.0 } else { f64::INFINITY };
    report.push(Check::measured(
        format!("induction{s}.invertible.X=({:?},{:?}).n={n}", x.u, x.v),
        TAG_INDUCTION,
        inv,
        tol.atol,
    ));
    Ok((
        InductionStructure {
            sign,
            x: x.clone(),
            n,
            gamma: table,
        },
        report,
    ))
}

/// `Γ_M = [D_{M,V} ⊗ id_U] ∘ (id_M ⊗ c_{U,V})`: word `M U V -> M V U`.
pub fn transposition_gamma(engine: &Engine, m: &[usize], u: &[usize], v: &[usize]) -> Result<Morphism> {
    let w = cat(&[m, u, v]);
    let c = engine.block_braid(&w, m.len(), u.len(), v.len(), Crossing::Over)?;
    let d = engine.monodromy(&c.target, 0, m.len(), v.len(), 1)?;
    d.compose(&c)
}

/// `γ^{V×U,−}_{M,U'×V'} ∘ Γ_{M⊠(U'×V')} = (Γ_M ⊗ id) ∘ γ^{U×V,+}_{M,U'×V'}` at level 0.
pub fn transposition_deviation(engine: &Engine, u: usize, v: usize, m: usize, y: &Pair) -> Result<f64> {
    let xp = Pair::simple(u, v);
    let xm = Pair::simple(v, u);
    let my = y.act(&[m]);
    let lhs = induction_gamma(engine, Sign::Minus, 0, &[m], &xm, y)?.compose(&transposition_gamma(
        engine,
        &my,
        &[u],
        &[v],
    )?)?;
    let gm = engine.embed(&[], &transposition_gamma(engine, &[m], &[u], &[v])?, &cat(&[&y.u, &y.v]))?;
    let rhs = gm.compose(&induction_gamma(engine, Sign::Plus, 0, &[m], &xp, y)?)?;
    Ok(lhs.distance(&rhs))
}

/// Checks the transposition witness for one `(U, V)` over all simple `(M, U', V')`,
/// and that every `Γ_M` is invertible.
pub fn transposition_nat_iso(engine: &Engine, u: usize, v: usize, tol: &ToleranceConfig) -> Result<VerificationReport> {
    let r = engine.rank();
    let items: Vec<(usize, Pair)> = (0..r)
        .flat_map(|m| (0..r).flat_map(move |a| (0..r).map(move |b| (m, Pair::simple(a, b)))))
        .collect();
    let dev = max_over(&items, |(m, y)| transposition_deviation(engine, u, v, *m, y))?;
    let mut cond: f64 = 1.0;
    for m in 0..r {
        cond = cond.max(transposition_gamma(engine, &[m], &[u], &[v])?.condition_number());
    }
    let spec = engine.spec();
    let tag = format!("({},{})", spec.label_name(u), spec.label_name(v));
    let mut report = VerificationReport::new();
    report.push(Check::measured(
        format!("witness.transposition.{tag}"),
        TAG_TRANSPOSITION,
        dev,
        tol.atol,
    ));
    report.push(Check::measured(
        format!("witness.invertible.{tag}"),
        TAG_TRANSPOSITION,
        if cond.is_finite() { 0.0 } else { f64::INFINITY },
        tol.atol,
    ));
    Ok(report)
}

// ---- bimodule structure -------------------------------------------------

/// `γ_{M,U×V} = D^{-1}_{M,U} ⊗ id_V` on the word `M U V`.
pub fn bimodule_gamma(engine: &Engine, m: &[usize], x: &Pair) -> Result<Morphism> {
    engine.monodromy(&x.act(m), 0, m.len(), x.u.len(), -1)
}

/// `γ̂_{U×V,M} = id_U ⊗ D_{V,M}` on the word `U V M`.
pub fn bimodule_gamma_hat(engine: &Engine, x: &Pair, m: &[usize]) -> Result<Morphism> {
    engine.monodromy(&x.act_left(m), x.u.len(), x.v.len(), m.len(), 1)
}
