//! The algebra `A = ⊕_i (ī, i)` in `C ⊠ C` with product `m^(n)`, unit,
//! coproduct `Δ^(n)` and counit; its Frobenius axioms, the level-changing
//! isomorphism `σ`, the left-center idempotent and the Azumaya test.
//!
//! Objects of `C ⊠ C` that are direct sums are lists of words in the
//! flattened labels of the Deligne square; morphisms between them are
//! matrices of engine morphisms indexed by summand pairs.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category_data::{CategorySpec, C64};
use crate::deligne::deligne_square;
use crate::engine::{Crossing, Engine, Morphism};
use crate::error::{MtcError, Result};
use crate::report::{Check, VerificationReport};
use crate::tolerance::ToleranceConfig;

pub const TAG_FROBENIUS: &str = "symmetric special Frobenius algebra structure";
pub const TAG_SIGMA: &str = "level-changing isomorphism of Frobenius algebras";
pub const TAG_CENTER: &str = "left-center idempotent";
pub const TAG_AZUMAYA: &str = "Azumaya property from the left center";

/// A direct sum of tensor words.
pub type SumObject = Vec<Vec<usize>>;

/// `⊕_{s,t} f_{t,s}` with `f_{t,s}: source[s] -> target[t]`; absent entries are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SumMorphism {
    pub source: SumObject,
    pub target: SumObject,
    pub parts: BTreeMap<(usize, usize), Morphism>,
}

fn tensor_objects(a: &SumObject, b: &SumObject) -> SumObject {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x.iter().chain(y).copied().collect()))
        .collect()
}

impl SumMorphism {
    pub fn zero(source: SumObject, target: SumObject) -> Self {
        Self {
            source,
            target,
            parts: BTreeMap::new(),
        }
    }

    pub fn identity(engine: &Engine, obj: &SumObject) -> Result<Self> {
        let mut out = Self::zero(obj.clone(), obj.clone());
        for (i, w) in obj.iter().enumerate() {
            out.parts.insert((i, i), engine.identity(w)?);
        }
        Ok(out)
    }

    fn accumulate(&mut self, key: (usize, usize), m: Morphism) -> Result<()> {
        let slot = match self.parts.remove(&key) {
            Some(prev) => prev.add(&m)?,
            None => m,
        };
        self.parts.insert(key, slot);
        Ok(())
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &SumMorphism) -> Result<SumMorphism> {
        if self.source != g.target {
            return Err(MtcError::ShapeMismatch("direct-sum composition: objects differ".into()));
        }
        let mut out = Self::zero(g.source.clone(), self.target.clone());
        for (&(t, k), f) in &self.parts {
            for (&(k2, s), h) in g.parts.range((k, 0)..(k + 1, 0)) {
                debug_assert_eq!(k, k2);
                out.accumulate((t, s), f.compose(h)?)?;
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, engine: &Engine, g: &SumMorphism) -> Result<SumMorphism> {
        let (ns, nt) = (g.source.len(), g.target.len());
        let mut out = Self::zero(
            tensor_objects(&self.source, &g.source),
            tensor_objects(&self.target, &g.target),
        );
        for (&(t1, s1), f) in &self.parts {
            for (&(t2, s2), h) in &g.parts {
                out.parts.insert((t1 * nt + t2, s1 * ns + s2), engine.tensor(f, h)?);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, z: C64) -> SumMorphism {
        SumMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            parts: self.parts.iter().map(|(k, m)| (*k, m.scale(z))).collect(),
        }
    }

    /// Largest entry of `self - other`; shapes must agree.
    pub fn distance(&self, other: &SumMorphism) -> f64 {
        if self.source != other.source || self.target != other.target {
            return f64::INFINITY;
        }
        let mut keys: Vec<_> = self.parts.keys().chain(other.parts.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        keys.iter()
            .map(|k| match (self.parts.get(k), other.parts.get(k)) {
                (Some(a), Some(b)) => a.distance(b),
                (Some(a), None) | (None, Some(a)) => a.max_abs(),
                (None, None) => 0.0,
            })
            .fold(0.0, f64::max)
    }

    /// The scalar of the part `(t, s)` on its one-dimensional root block,
    /// for morphisms between single simple strands.
    pub fn scalar_part(&self, t: usize, s: usize) -> C64 {
        let Some(m) = self.parts.get(&(t, s)) else {
            return C64::default();
        };
        m.blocks
            .iter()
            .find(|b| b.nrows() == 1 && b.ncols() == 1)
            .map(|b| b[(0, 0)])
            .unwrap_or_default()
    }
}

/// `A` with its structure maps at one level `n`.
pub struct FrobeniusAlgebraData {
    pub base: Engine,
    pub ambient: Engine,
    pub n: i64,
    /// Flattened label of the component `(ī, i)`, indexed by `i`.
    pub components: Vec<usize>,
    pub product: SumMorphism,
    pub unit: SumMorphism,
    pub coproduct: SumMorphism,
    pub counit: SumMorphism,
}

/// Phases applied to the fusion vertices `f_α` (and inversely to the dual
/// basis), for basis-independence tests.
pub type BasisPhases = BTreeMap<(usize, usize, usize, usize), C64>;

pub fn build_frobenius_algebra(spec: &CategorySpec, n: i64) -> Result<FrobeniusAlgebraData> {
    build_with_phases(spec, n, &BasisPhases::new())
}

pub fn build_with_phases(spec: &CategorySpec, n: i64, phases: &BasisPhases) -> Result<FrobeniusAlgebraData> {
    if spec.ribbon.twists.len() != spec.rank() {
        return Err(MtcError::NotPremodular(spec.name.clone()));
    }
    let base = Engine::new(spec)?;
    let ambient = Engine::new(&deligne_square(spec)?)?;
    let r = spec.rank();
    let components: Vec<usize> = (0..r).map(|i| base.dual(i) * r + i).collect();
    let a: SumObject = components.iter().map(|&c| vec![c]).collect();
    let aa = tensor_objects(&a, &a);
    let dim = spec.global_dim();

    let mut product = SumMorphism::zero(aa.clone(), a.clone());
    let mut coproduct = SumMorphism::zero(a.clone(), aa.clone());
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let nijk = spec.ring.n(i, j, k) as usize;
                if nijk == 0 {
                    continue;
                }
                let coeff = spec.dim(i) * spec.dim(j) / (dim * spec.dim(k));
                let mut m_part: Option<Morphism> = None;
                let mut d_part: Option<Morphism> = None;
                for alpha in 0..nijk {
                    let z = phases.get(&(i, j, k, alpha)).copied().unwrap_or(C64::new(1.0, 0.0));
                    let f = base.fusion(i, j, k, alpha)?.scale(z);
                    let fbar = base.splitting(i, j, k, alpha)?.scale(z.inv());
                    let x = product_first_factor(&base, n, i, j, k, &fbar)?;
                    let y = coproduct_first_factor(&base, n, i, j, k, &f)?;
                    let mp = ambient.deligne_pair(&base, &x, &f)?;
                    let dp = ambient.deligne_pair(&base, &y, &fbar)?.scale(C64::new(coeff, 0.0));
                    m_part = Some(match m_part {
                        Some(prev) => prev.add(&mp)?,
                        None => mp,
                    });
                    d_part = Some(match d_part {
                        Some(prev) => prev.add(&dp)?,
                        None => dp,
                    });
                }
                product.parts.insert((k, i * r + j), m_part.expect("at least one vertex"));
                coproduct.parts.insert((i * r + j, k), d_part.expect("at least one vertex"));
            }
        }
    }

    let mut unit = SumMorphism::zero(vec![vec![]], a.clone());
    let mut eta = ambient.zero(&[], &[components[0]])?;
    eta.blocks[0][(0, 0)] = C64::new(1.0, 0.0);
    unit.parts.insert((0, 0), eta);
    let mut counit = SumMorphism::zero(a, vec![vec![]]);
    let mut eps = ambient.zero(&[components[0]], &[])?;
    eps.blocks[0][(0, 0)] = C64::new(dim, 0.0);
    counit.parts.insert((0, 0), eps);

    Ok(FrobeniusAlgebraData {
        base,
        ambient,
        n,
        components,
        product,
        unit,
        coproduct,
        counit,
    })
}

/// First tensor factor of `m^(n)` at `(i, j; k)`, a map `ī ⊗ j̄ -> k̄`:
/// `(d_i ⊗ d_j ⊗ id) ∘ (id ⊗ c_{j̄,i} ⊗ id) ∘ (D^n_{ī,j̄} ⊗ id) ∘ (id ⊗ f̄ ⊗ id) ∘ (id ⊗ b_k)`.
fn product_first_factor(e: &Engine, n: i64, i: usize, j: usize, k: usize, fbar: &Morphism) -> Result<Morphism> {
    let (ib, jb, kb) = (e.dual(i), e.dual(j), e.dual(k));
    let open = e.embed(&[ib, jb], &e.cup(k)?, &[])?;
    let split = e.embed(&[ib, jb], fbar, &[kb])?;
    let w = split.target.clone();
    let twist = e.monodromy(&w, 0, 1, 1, n)?;
    let cross = e.generator(&w, 1, Crossing::Over)?;
    let close = e.embed(&[], &e.tensor(&e.cap(i)?, &e.cap(j)?)?, &[kb])?;
    open.then(&split)?.then(&twist)?.then(&cross)?.then(&close)
}

/// First tensor factor of `Δ^(n)` at `(i, j; k)`, a map `k̄ -> ī ⊗ j̄`:
/// `(id ⊗ d̃_k) ∘ (id ⊗ f ⊗ id) ∘ (D^{-n}_{ī,j̄} ⊗ id) ∘ (id ⊗ c^{-1}_{j̄,i} ⊗ id) ∘ (b̃_i ⊗ b̃_j ⊗ id)`.
fn coproduct_first_factor(e: &Engine, n: i64, i: usize, j: usize, k: usize, f: &Morphism) -> Result<Morphism> {
    let (ib, jb, kb) = (e.dual(i), e.dual(j), e.dual(k));
    let open = e.embed(&[], &e.tensor(&e.cup_tilde(i)?, &e.cup_tilde(j)?)?, &[kb])?;
    let w = open.target.clone();
    let cross = e.generator(&w, 1, Crossing::Under)?;
    let w2 = cross.target.clone();
    let twist = e.monodromy(&w2, 0, 1, 1, -n)?;
    let fuse = e.embed(&[ib, jb], f, &[kb])?;
    let close = e.embed(&[ib, jb], &e.cap_tilde(k)?, &[])?;
    open.then(&cross)?.then(&twist)?.then(&fuse)?.then(&close)
}

impl FrobeniusAlgebraData {
    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn object(&self) -> SumObject {
        self.components.iter().map(|&c| vec![c]).collect()
    }

    fn id(&self) -> Result<SumMorphism> {
        SumMorphism::identity(&self.ambient, &self.object())
    }

    fn t(&self, f: &SumMorphism, g: &SumMorphism) -> Result<SumMorphism> {
        f.tensor(&self.ambient, g)
    }

    /// `dim(A) = Σ_i d_ī d_i`.
    pub fn dimension(&self) -> f64 {
        self.components.iter().map(|&c| self.ambient.spec().dim(c)).sum()
    }

    /// The dual object `A^∨ = ⊕ (ī, i)^∨`.
    fn dual_object(&self) -> SumObject {
        self.components.iter().map(|&c| vec![self.ambient.dual(c)]).collect()
    }

    fn pairing(&self, kind: Duality) -> Result<SumMorphism> {
        let e = &self.ambient;
        let (a, ad) = (self.object(), self.dual_object());
        let r = self.rank();
        let unit: SumObject = vec![vec![]];
        let mut out = match kind {
            Duality::Cup => SumMorphism::zero(unit, tensor_objects(&a, &ad)),
            Duality::CupTilde => SumMorphism::zero(unit, tensor_objects(&ad, &a)),
        };
        for (i, &c) in self.components.iter().enumerate() {
            let key = i * r + i;
            match kind {
                Duality::Cup => out.parts.insert((key, 0), e.cup(c)?),
                Duality::CupTilde => out.parts.insert((key, 0), e.cup_tilde(c)?),
            };
        }
        Ok(out)
    }

    /// `c_{A,A}` (or its inverse-type crossing) as a direct-sum morphism.
    fn braiding(&self, crossing: Crossing) -> Result<SumMorphism> {
        let r = self.rank();
        let a = self.object();
        let aa = tensor_objects(&a, &a);
        let mut out = SumMorphism::zero(aa.clone(), aa);
        for i in 0..r {
            for j in 0..r {
                let w = [self.components[i], self.components[j]];
                out.parts
                    .insert((j * r + i, i * r + j), self.ambient.block_braid(&w, 0, 1, 1, crossing)?);
            }
        }
        Ok(out)
    }

    /// `Φ = ((ε ∘ m) ⊗ id_{A^∨}) ∘ (id_A ⊗ b_A)`.
    pub fn phi(&self) -> Result<SumMorphism> {
        let em = self.counit.compose(&self.product)?;
        let ad = SumMorphism::identity(&self.ambient, &self.dual_object())?;
        let open = self.t(&self.id()?, &self.pairing(Duality::Cup)?)?;
        self.t(&em, &ad)?.compose(&open)
    }

    /// `(id_{A^∨} ⊗ (ε ∘ m)) ∘ (b̃_A ⊗ id_A)`.
    pub fn phi_tilde(&self) -> Result<SumMorphism> {
        let em = self.counit.compose(&self.product)?;
        let ad = SumMorphism::identity(&self.ambient, &self.dual_object())?;
        let open = self.t(&self.pairing(Duality::CupTilde)?, &self.id()?)?;
        self.t(&ad, &em)?.compose(&open)
    }

    /// `P_A = m ∘ (m ⊗ id) ∘ (id ⊗ c_{A,A}) ∘ (Δ ⊗ id) ∘ (η ⊗ id)`.
    pub fn center_idempotent(&self) -> Result<SumMorphism> {
        self.center_idempotent_with(Crossing::Over)
    }

    pub fn center_idempotent_with(&self, crossing: Crossing) -> Result<SumMorphism> {
        let id = self.id()?;
        let s1 = self.t(&self.unit, &id)?;
        let s2 = self.t(&self.coproduct, &id)?;
        let s3 = self.t(&id, &self.braiding(crossing)?)?;
        let s4 = self.t(&self.product, &id)?;
        self.product.compose(&s4)?.compose(&s3)?.compose(&s2)?.compose(&s1)
    }

    /// Diagonal automorphism `σ^p = ⊕ ϑ_ī^p` of `A`.
    pub fn sigma(&self, p: i64) -> Result<SumMorphism> {
        let mut s = self.id()?;
        for (i, m) in s.parts.iter_mut() {
            let t = self.base.spec().twist(self.base.dual(i.0));
            let z = if p >= 0 { t.powi(p as i32) } else { t.inv().powi((-p) as i32) };
            *m = m.scale(z);
        }
        Ok(s)
    }

    /// `(1/dim A) η ∘ ε`.
    pub fn trivial_center(&self) -> Result<SumMorphism> {
        Ok(self
            .unit
            .compose(&self.counit)?
            .scale(C64::new(1.0 / self.dimension(), 0.0)))
    }
}

#[derive(Clone, Copy)]
enum Duality {
    Cup,
    CupTilde,
}

/// Associativity, unit, coassociativity, counit, Frobenius compatibility,
/// symmetry, specialness, and `Φ` against its closed form.
pub fn verify_frobenius_axioms(alg: &FrobeniusAlgebraData, tol: f64) -> Result<VerificationReport> {
    let n = alg.n;
    let id = alg.id()?;
    let (m, d, eta, eps) = (&alg.product, &alg.coproduct, &alg.unit, &alg.counit);
    let t = |f: &SumMorphism, g: &SumMorphism| alg.t(f, g);

    let assoc = m.compose(&t(m, &id)?)?.distance(&m.compose(&t(&id, m)?)?);
    let unit = m
        .compose(&t(eta, &id)?)?
        .distance(&id)
        .max(m.compose(&t(&id, eta)?)?.distance(&id));
    let coassoc = t(d, &id)?.compose(d)?.distance(&t(&id, d)?.compose(d)?);
    let counit = t(eps, &id)?
        .compose(d)?
        .distance(&id)
        .max(t(&id, eps)?.compose(d)?.distance(&id));
    let dm = d.compose(m)?;
    let frob = t(m, &id)?
        .compose(&t(&id, d)?)?
        .distance(&dm)
        .max(t(&id, m)?.compose(&t(d, &id)?)?.distance(&dm));
    let sym = alg.phi()?.distance(&alg.phi_tilde()?);
    let special_m = m.compose(d)?.distance(&id);
    let dim = alg.base.spec().global_dim();
    let special_e = (eps.compose(eta)?.scalar_part(0, 0) - C64::new(dim, 0.0)).norm();

    // Φ sends component i to summand ī of A^∨ with modulus Dim / d_i.
    let phi = alg.phi()?;
    let spec = alg.base.spec();
    let mut phi_dev: f64 = 0.0;
    for i in 0..alg.rank() {
        let z = phi.scalar_part(alg.base.dual(i), i);
        phi_dev = phi_dev.max((z.norm() - dim / spec.dim(i)).abs());
    }

    let mut report = VerificationReport::new();
    for (name, dev) in [
        ("associativity", assoc),
        ("unit", unit),
        ("coassociativity", coassoc),
        ("counit", counit),
        ("frobenius", frob),
        ("symmetry", sym),
        ("special.m_delta", special_m),
        ("special.eps_eta", special_e),
        ("phi.closed_form", phi_dev),
    ] {
        report.push(Check::measured(format!("frobenius.{name}.n={n}"), TAG_FROBENIUS, dev, tol));
    }
    Ok(report)
}

/// `Φ^(n) = Φ^(0) ∘ σ^{-2n}`.
pub fn phi_level_deviation(alg_n: &FrobeniusAlgebraData, alg_0: &FrobeniusAlgebraData) -> Result<f64> {
    let rhs = alg_0.phi()?.compose(&alg_0.sigma(-2 * alg_n.n)?)?;
    Ok(alg_n.phi()?.distance(&rhs))
}

/// Returns `σ^{to - from}` and checks it intertwines product, unit,
/// coproduct and counit of the two levels.
pub fn sigma_isomorphism(
    from: &FrobeniusAlgebraData,
    to: &FrobeniusAlgebraData,
    tol: &ToleranceConfig,
) -> Result<(SumMorphism, VerificationReport)> {
    let p = to.n - from.n;
    let s = from.sigma(p)?;
    let si = from.sigma(-p)?;
    let m = s.compose(&from.product)?.compose(&from.t(&si, &si)?)?;
    let d = from.t(&s, &s)?.compose(&from.coproduct)?.compose(&si)?;
    let dev_m = m.distance(&to.product);
    let dev_d = d.distance(&to.coproduct);
    let dev_u = s.compose(&from.unit)?.distance(&to.unit);
    let dev_e = from.counit.compose(&si)?.distance(&to.counit);
    let mut report = VerificationReport::new();
    let label = format!("n={}->{}", from.n, to.n);
    for (name, dev) in [("product", dev_m), ("coproduct", dev_d), ("unit", dev_u), ("counit", dev_e)] {
        report.push(Check::measured(format!("sigma.{name}.{label}"), TAG_SIGMA, dev, tol.atol));
    }
    Ok((s, report))
}

/// The left-center idempotent, its idempotency defect and per-component ranks.
#[derive(Clone, Debug)]
pub struct CenterDatum {
    pub p: SumMorphism,
    /// `P_A` on each component `(ī, i)`, a scalar.
    pub diagonal: Vec<C64>,
    pub rank_per_component: Vec<usize>,
    pub is_trivial: bool,
    pub idempotency_defect: f64,
}

pub fn left_center_idempotent(alg: &FrobeniusAlgebraData, tol: &ToleranceConfig) -> Result<CenterDatum> {
    let p = alg.center_idempotent()?;
    let defect = p.compose(&p)?.distance(&p);
    let diagonal: Vec<C64> = (0..alg.rank()).map(|i| p.scalar_part(i, i)).collect();
    let rank_per_component: Vec<usize> = diagonal.iter().map(|z| usize::from(z.norm() > 0.5)).collect();
    let is_trivial = rank_per_component[0] == 1
        && rank_per_component[1..].iter().all(|&r| r == 0)
        && p.distance(&alg.trivial_center()?) < tol.frobenius();
    Ok(CenterDatum {
        p,
        diagonal,
        rank_per_component,
        is_trivial,
        idempotency_defect: defect,
    })
}

/// `ξ_i = Σ_{j,k} d_j d_k / (Dim d_i) · ϑ_i ϑ_k / ϑ_j · N_{kj}^i`.
pub fn xi_values(spec: &CategorySpec) -> Vec<C64> {
    let r = spec.rank();
    let dim = spec.global_dim();
    (0..r)
        .map(|i| {
            let mut s = C64::default();
            for j in 0..r {
                for k in 0..r {
                    let nkj = spec.ring.n(k, j, i) as f64;
                    if nkj == 0.0 {
                        continue;
                    }
                    let w = spec.dim(j) * spec.dim(k) / (dim * spec.dim(i)) * nkj;
                    s += spec.twist(i) * spec.twist(k) / spec.twist(j) * w;
                }
            }
            s
        })
        .collect()
}

/// `ξ` and whether it equals `(1, 0, ..., 0)`; entries far from both 0 and 1
/// are an error.
pub fn xi_azumaya(spec: &CategorySpec, tol: &ToleranceConfig) -> Result<(Vec<C64>, bool)> {
    let xi = xi_values(spec);
    let one = C64::new(1.0, 0.0);
    for (index, z) in xi.iter().enumerate() {
        if z.norm() > tol.atol && (z - one).norm() > tol.atol {
            return Err(MtcError::XiNotZeroOne {
                index,
                value: format!("{:.6}{:+.6}i", z.re, z.im),
            });
        }
    }
    let is_azumaya = xi
        .iter()
        .enumerate()
        .all(|(i, z)| (z - if i == 0 { one } else { C64::default() }).norm() <= tol.atol);
    Ok((xi, is_azumaya))
}

/// Random unit phases on every fusion vertex of the spec.
pub fn random_phases(spec: &CategorySpec, seed: u64) -> BasisPhases {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = spec.rank();
    let mut out = BasisPhases::new();
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                for a in 0..spec.ring.n(i, j, k) as usize {
                    out.insert((i, j, k, a), C64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)));
                }
            }
        }
    }
    out
}
