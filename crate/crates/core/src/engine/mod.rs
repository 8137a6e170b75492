//! Morphisms between tensor words of simples in left-nested fusion-tree
//! bases: composition, juxtaposition, braiding, twists, cups, caps, traces.
//!
//! Every stored morphism is in the canonical basis, so equality is blockwise
//! matrix comparison. Juxtaposition re-nests through cached change-of-basis
//! matrices built from F-moves.

mod basis;
mod morphism;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use nalgebra::DMatrix;

pub use basis::{Basis, FusionTree, ProductBasis};
pub use morphism::Morphism;

use crate::category_data::{CategorySpec, Tables, C64};
use crate::error::{MtcError, Result};
use crate::report::{Check, VerificationReport};
use crate::tolerance::ToleranceConfig;

/// Longest word the engine accepts.
pub const MAX_WORD: usize = 8;

pub const TAG_DUALITY: &str = "duality: zig-zag identities and loop values";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Crossing {
    /// `c_{x,y}: x ⊗ y -> y ⊗ x`
    Over,
    /// `c^{-1}_{y,x}: x ⊗ y -> y ⊗ x`
    Under,
}

impl Crossing {
    pub fn inverse(self) -> Crossing {
        match self {
            Crossing::Over => Crossing::Under,
            Crossing::Under => Crossing::Over,
        }
    }
}

/// Normalizations of the evaluation and coevaluation maps, in units of the
/// single tree on `(x x̄ -> 0)` or `(x̄ x -> 0)`.
#[derive(Clone, Debug)]
pub struct DualityGauge {
    /// `b_i: 1 -> i ⊗ ī`
    pub cup: Vec<C64>,
    /// `d_i: ī ⊗ i -> 1`
    pub cap: Vec<C64>,
    /// `b̃_i: 1 -> ī ⊗ i`
    pub cup_tilde: Vec<C64>,
    /// `d̃_i: i ⊗ ī -> 1`
    pub cap_tilde: Vec<C64>,
}

type BKey = (Vec<usize>, Vec<usize>, usize);
type BraidKey = (Vec<usize>, usize, usize, usize, Crossing);

/// Change of basis for `w1 ++ w2` at one root: `b` maps product-basis
/// coordinates to canonical ones.
#[derive(Debug)]
struct Renest {
    product: ProductBasis,
    b: DMatrix<C64>,
    binv: DMatrix<C64>,
}

type Cache<K, V> = Mutex<HashMap<K, Arc<V>>>;

pub struct Engine {
    spec: CategorySpec,
    tables: Tables,
    gauge: DualityGauge,
    bases: Cache<(Vec<usize>, usize), Basis>,
    renest: Cache<BKey, Renest>,
    generators: Cache<(Vec<usize>, usize, Crossing), Morphism>,
    braids: Cache<BraidKey, Morphism>,
    monodromies: Cache<(Vec<usize>, usize, usize, usize, i64), Morphism>,
}

fn cached<K: std::hash::Hash + Eq + Clone, V>(
    cache: &Cache<K, V>,
    key: &K,
    make: impl FnOnce() -> Result<V>,
) -> Result<Arc<V>> {
    if let Some(v) = cache.lock().expect("cache lock").get(key) {
        return Ok(v.clone());
    }
    let v = Arc::new(make()?);
    cache.lock().expect("cache lock").insert(key.clone(), v.clone());
    Ok(v)
}

fn concat(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    w
}

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

impl Engine {
    pub fn new(spec: &CategorySpec) -> Result<Self> {
        let tables = Tables::new(spec)?;
        let gauge = Self::fix_gauge(spec, &tables)?;
        Ok(Self {
            spec: spec.clone(),
            tables,
            gauge,
            bases: Mutex::default(),
            renest: Mutex::default(),
            generators: Mutex::default(),
            braids: Mutex::default(),
            monodromies: Mutex::default(),
        })
    }

    /// `b_i = t`, `d_i = t*/F`, `d̃_i = d_i t*`, `b̃_i = t/(d_i G)` where `F` and
    /// `G` are the unit-channel entries of `F^{i ī i}_i` and its inverse.
    fn fix_gauge(spec: &CategorySpec, t: &Tables) -> Result<DualityGauge> {
        let r = spec.rank();
        let mut g = DualityGauge {
            cup: vec![ONE; r],
            cap: vec![ONE; r],
            cup_tilde: vec![ONE; r],
            cap_tilde: vec![ONE; r],
        };
        for i in 0..r {
            let ib = spec.ring.dual(i);
            let block = t.fblock(i, ib, i, i).ok_or(MtcError::SingularF { a: i, b: ib, c: i, d: i })?;
            let (Some(l), Some(rp)) = (block.left_pos((0, 0, 0)), block.right_pos((0, 0, 0))) else {
                return Err(MtcError::SingularF { a: i, b: ib, c: i, d: i });
            };
            let f = block.mat[(l, rp)];
            let gi = block.inv[(rp, l)];
            let d = spec.dim(i);
            g.cap[i] = ONE / f;
            g.cap_tilde[i] = C64::new(d, 0.0);
            g.cup_tilde[i] = ONE / (gi * d);
        }
        Ok(g)
    }

    pub fn spec(&self) -> &CategorySpec {
        &self.spec
    }

    pub fn tables(&self) -> &Tables {
        &self.tables
    }

    pub fn gauge(&self) -> &DualityGauge {
        &self.gauge
    }

    pub fn rank(&self) -> usize {
        self.spec.rank()
    }

    pub fn dual(&self, i: usize) -> usize {
        self.spec.ring.dual(i)
    }

    fn check_word(&self, word: &[usize]) -> Result<()> {
        if word.len() > MAX_WORD {
            return Err(MtcError::WordTooLong(word.len()));
        }
        if let Some(&bad) = word.iter().find(|&&x| x >= self.rank()) {
            return Err(MtcError::InvalidLabel {
                label: bad,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    pub fn basis(&self, word: &[usize], root: usize) -> Result<Arc<Basis>> {
        self.check_word(word)?;
        cached(&self.bases, &(word.to_vec(), root), || {
            let trees = match word.len() {
                0 => {
                    if root == 0 {
                        vec![FusionTree {
                            path: vec![],
                            mult: vec![],
                        }]
                    } else {
                        vec![]
                    }
                }
                1 => {
                    if root == word[0] {
                        vec![FusionTree {
                            path: vec![root],
                            mult: vec![],
                        }]
                    } else {
                        vec![]
                    }
                }
                n => {
                    let x = word[n - 1];
                    let mut trees = Vec::new();
                    for e in 0..self.rank() {
                        let m = self.tables.n(e, x, root);
                        if m == 0 {
                            continue;
                        }
                        let sub = self.basis(&word[..n - 1], e)?;
                        for t in &sub.trees {
                            for mu in 0..m {
                                trees.push(t.extend(root, mu));
                            }
                        }
                    }
                    trees
                }
            };
            Ok(Basis::new(word.to_vec(), root, trees))
        })
    }

    /// `dim Hom(root, word)` for every root.
    pub fn hom_dims(&self, word: &[usize]) -> Result<Vec<usize>> {
        (0..self.rank()).map(|c| Ok(self.basis(word, c)?.len())).collect()
    }

    pub fn zero(&self, source: &[usize], target: &[usize]) -> Result<Morphism> {
        let blocks = (0..self.rank())
            .map(|c| {
                let (s, t) = (self.basis(source, c)?, self.basis(target, c)?);
                Ok(DMatrix::zeros(t.len(), s.len()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism {
            source: source.to_vec(),
            target: target.to_vec(),
            blocks,
        })
    }

    pub fn identity(&self, word: &[usize]) -> Result<Morphism> {
        let blocks = (0..self.rank())
            .map(|c| {
                let n = self.basis(word, c)?.len();
                Ok(DMatrix::identity(n, n))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism {
            source: word.to_vec(),
            target: word.to_vec(),
            blocks,
        })
    }

    /// Builds a morphism from per-root matrices given as closures over tree
    /// pairs `(target tree, source tree)`.
    pub fn from_fn(
        &self,
        source: &[usize],
        target: &[usize],
        mut entry: impl FnMut(usize, &FusionTree, &FusionTree) -> C64,
    ) -> Result<Morphism> {
        let mut m = self.zero(source, target)?;
        for c in 0..self.rank() {
            let (s, t) = (self.basis(source, c)?, self.basis(target, c)?);
            for (i, tt) in t.trees.iter().enumerate() {
                for (j, st) in s.trees.iter().enumerate() {
                    m.blocks[c][(i, j)] = entry(c, tt, st);
                }
            }
        }
        Ok(m)
    }

    // ---- juxtaposition -------------------------------------------------

    fn product_basis(&self, w1: &[usize], w2: &[usize], c: usize) -> Result<ProductBasis> {
        let mut entries = Vec::new();
        for a in 0..self.rank() {
            let n1 = self.basis(w1, a)?.len();
            if n1 == 0 {
                continue;
            }
            for b in 0..self.rank() {
                let m = self.tables.n(a, b, c);
                if m == 0 {
                    continue;
                }
                let n2 = self.basis(w2, b)?.len();
                for mu in 0..m {
                    for s1 in 0..n1 {
                        for s2 in 0..n2 {
                            entries.push((a, s1, b, s2, mu));
                        }
                    }
                }
            }
        }
        Ok(ProductBasis::new(entries))
    }

    fn renest(&self, w1: &[usize], w2: &[usize], c: usize) -> Result<Arc<Renest>> {
        cached(&self.renest, &(w1.to_vec(), w2.to_vec(), c), || {
            let product = self.product_basis(w1, w2, c)?;
            let word = concat(w1, w2);
            let canon = self.basis(&word, c)?;
            let n = canon.len();
            if product.entries.len() != n {
                return Err(MtcError::ShapeMismatch(format!(
                    "product basis of {w1:?} ⊗ {w2:?} at root {c} has {} vectors, canonical basis {n}",
                    product.entries.len()
                )));
            }
            let mut b = DMatrix::<C64>::zeros(n, n);
            let place = |tree: &FusionTree| {
                canon
                    .position(tree)
                    .ok_or_else(|| MtcError::ShapeMismatch(format!("tree {tree:?} missing from basis of {word:?}")))
            };
            for (p, &(a, s1, bb, s2, mu)) in product.entries.iter().enumerate() {
                if w1.is_empty() {
                    let t2 = &self.basis(w2, bb)?.trees[s2];
                    b[(place(t2)?, p)] = ONE;
                } else if w2.is_empty() {
                    let t1 = &self.basis(w1, a)?.trees[s1];
                    b[(place(t1)?, p)] = ONE;
                } else if w2.len() == 1 {
                    let t1 = &self.basis(w1, a)?.trees[s1];
                    b[(place(&t1.extend(c, mu))?, p)] = ONE;
                } else {
                    // peel the last strand x off the second tree and move the
                    // right-nested vertex pair (b'' x -> b)(a b -> c) to the left
                    let k = w2.len();
                    let (w2s, x) = (&w2[..k - 1], w2[k - 1]);
                    let t2 = &self.basis(w2, bb)?.trees[s2];
                    let (bpp, nu) = (t2.path[k - 2], t2.mult[k - 2]);
                    let t2s = FusionTree {
                        path: t2.path[..k - 1].to_vec(),
                        mult: t2.mult[..k - 2].to_vec(),
                    };
                    let s2s = self.basis(w2s, bpp)?.position(&t2s).expect("sub-tree is in its basis");
                    let block = self
                        .tables
                        .fblock(a, bpp, x, c)
                        .ok_or(MtcError::SingularF { a, b: bpp, c: x, d: c })?;
                    let r = block.right_pos((bb, nu, mu)).expect("right vertex is admissible");
                    for (l, &(e, ka, la)) in block.left.iter().enumerate() {
                        let coeff = block.inv[(r, l)];
                        if coeff == ZERO {
                            continue;
                        }
                        let sub = self.renest(w1, w2s, e)?;
                        let q = sub
                            .product
                            .position((a, s1, bpp, s2s, ka))
                            .expect("product vector is admissible");
                        let sub_basis = self.basis(&concat(w1, w2s), e)?;
                        for (row, tree) in sub_basis.trees.iter().enumerate() {
                            let v = sub.b[(row, q)];
                            if v != ZERO {
                                b[(place(&tree.extend(c, la))?, p)] += coeff * v;
                            }
                        }
                    }
                }
            }
            let binv = if n == 0 {
                b.clone()
            } else {
                b.clone()
                    .try_inverse()
                    .ok_or_else(|| MtcError::ShapeMismatch(format!("singular re-nesting for {w1:?} ⊗ {w2:?}")))?
            };
            Ok(Renest { product, b, binv })
        })
    }

    /// `f ⊗ g`, re-expressed in the canonical basis of the concatenated words.
    pub fn tensor(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        if g.source.is_empty() && g.target.is_empty() {
            return Ok(f.scale(g.blocks[0][(0, 0)]));
        }
        if f.source.is_empty() && f.target.is_empty() {
            return Ok(g.scale(f.blocks[0][(0, 0)]));
        }
        let source = concat(&f.source, &g.source);
        let target = concat(&f.target, &g.target);
        self.check_word(&source)?;
        self.check_word(&target)?;
        let mut blocks = Vec::with_capacity(self.rank());
        for c in 0..self.rank() {
            let rs = self.renest(&f.source, &g.source, c)?;
            let rt = self.renest(&f.target, &g.target, c)?;
            let (nt, ns) = (rt.product.entries.len(), rs.product.entries.len());
            let mut k = DMatrix::<C64>::zeros(nt, ns);
            for (j, &(a, s1, b, s2, mu)) in rs.product.entries.iter().enumerate() {
                for (i, &(a2, r1, b2, r2, mu2)) in rt.product.entries.iter().enumerate() {
                    if a2 == a && b2 == b && mu2 == mu {
                        k[(i, j)] = f.blocks[a][(r1, s1)] * g.blocks[b][(r2, s2)];
                    }
                }
            }
            blocks.push(&rt.b * k * &rs.binv);
        }
        Ok(Morphism { source, target, blocks })
    }

    /// `id_left ⊗ f ⊗ id_right`.
    pub fn embed(&self, left: &[usize], f: &Morphism, right: &[usize]) -> Result<Morphism> {
        let mut out = f.clone();
        if !right.is_empty() {
            out = self.tensor(&out, &self.identity(right)?)?;
        }
        if !left.is_empty() {
            out = self.tensor(&self.identity(left)?, &out)?;
        }
        Ok(out)
    }

    // ---- braiding ------------------------------------------------------

    /// Crossing of strands `p` and `p + 1` (0-based).
    pub fn generator(&self, word: &[usize], p: usize, crossing: Crossing) -> Result<Morphism> {
        if p + 1 >= word.len() {
            return Err(MtcError::PositionOutOfRange {
                position: p + 1,
                len: word.len(),
            });
        }
        self.check_word(word)?;
        let m = cached(&self.generators, &(word.to_vec(), p, crossing), || {
            self.build_generator(word, p, crossing)
        })?;
        Ok((*m).clone())
    }

    /// Braid generator at a 1-based position: crosses strands `position` and
    /// `position + 1`.
    pub fn braid_generator(&self, word: &[usize], position: usize, crossing: Crossing) -> Result<Morphism> {
        if position == 0 || position >= word.len() {
            return Err(MtcError::PositionOutOfRange {
                position,
                len: word.len(),
            });
        }
        self.generator(word, position - 1, crossing)
    }

    fn rmat(&self, x: usize, y: usize, f: usize, crossing: Crossing) -> &DMatrix<C64> {
        match crossing {
            Crossing::Over => self.tables.r(x, y, f),
            Crossing::Under => self.tables.r_under(x, y, f),
        }
        .expect("braiding exists on admissible channels")
    }

    fn build_generator(&self, word: &[usize], p: usize, crossing: Crossing) -> Result<Morphism> {
        let mut target = word.to_vec();
        target.swap(p, p + 1);
        let (x, y) = (word[p], word[p + 1]);
        let mut out = self.zero(word, &target)?;
        for c in 0..self.rank() {
            let src = self.basis(word, c)?;
            let tgt = self.basis(&target, c)?;
            for (j, s) in src.trees.iter().enumerate() {
                if p == 0 {
                    let e = s.path[1];
                    let r = self.rmat(x, y, e, crossing);
                    for beta in 0..r.ncols() {
                        let mut t = s.clone();
                        t.path[0] = y;
                        t.mult[0] = beta;
                        let i = tgt.position(&t).expect("braided tree is admissible");
                        out.blocks[c][(i, j)] += r[(s.mult[0], beta)];
                    }
                    continue;
                }
                let (pp, e, q) = (s.path[p - 1], s.path[p], s.path[p + 1]);
                let (al, be) = (s.mult[p - 1], s.mult[p]);
                let fin = self.tables.fblock(pp, x, y, q).expect("admissible F block");
                let fout = self.tables.fblock(pp, y, x, q).expect("admissible F block");
                let l = fin.left_pos((e, al, be)).expect("left vertex is admissible");
                for (rpos, &(f, ga, de)) in fin.right.iter().enumerate() {
                    let a = fin.mat[(l, rpos)];
                    if a == ZERO {
                        continue;
                    }
                    let r = self.rmat(x, y, f, crossing);
                    for gp in 0..r.ncols() {
                        let b = a * r[(ga, gp)];
                        if b == ZERO {
                            continue;
                        }
                        let rp = fout.right_pos((f, gp, de)).expect("right vertex is admissible");
                        for (lp, &(e2, al2, be2)) in fout.left.iter().enumerate() {
                            let v = b * fout.inv[(rp, lp)];
                            if v == ZERO {
                                continue;
                            }
                            let mut t = s.clone();
                            t.path[p] = e2;
                            t.mult[p - 1] = al2;
                            t.mult[p] = be2;
                            let i = tgt.position(&t).expect("braided tree is admissible");
                            out.blocks[c][(i, j)] += v;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Braids the block `A = word[start..start+la]` past the block
    /// `B = word[start+la..start+la+lb]`: `c_{A,B}` for `Over`, `c^{-1}_{B,A}`
    /// for `Under`. The target word has the blocks exchanged.
    pub fn block_braid(&self, word: &[usize], start: usize, la: usize, lb: usize, crossing: Crossing) -> Result<Morphism> {
        if start + la + lb > word.len() {
            return Err(MtcError::PositionOutOfRange {
                position: start + la + lb,
                len: word.len(),
            });
        }
        let m = cached(&self.braids, &(word.to_vec(), start, la, lb, crossing), || {
            let mut out = self.identity(word)?;
            if la == 0 || lb == 0 {
                return Ok(out);
            }
            // move the strands of A to the right, rightmost first
            for i in (0..la).rev() {
                for step in 0..lb {
                    let g = self.generator(&out.target, start + i + step, crossing)?;
                    out = g.compose(&out)?;
                }
            }
            Ok(out)
        })?;
        Ok((*m).clone())
    }

    /// `D^n` for `D = c_{B,A} ∘ c_{A,B}` with `A` the `la` strands from
    /// `start` and `B` the following `lb` strands.
    pub fn monodromy(&self, word: &[usize], start: usize, la: usize, lb: usize, n: i64) -> Result<Morphism> {
        if la == 0 || lb == 0 || n == 0 {
            return self.identity(word);
        }
        let m = cached(&self.monodromies, &(word.to_vec(), start, la, lb, n), || {
            if n == 1 {
                let c1 = self.block_braid(word, start, la, lb, Crossing::Over)?;
                let c2 = self.block_braid(&c1.target, start, lb, la, Crossing::Over)?;
                return c2.compose(&c1);
            }
            if n == -1 {
                return self.monodromy(word, start, la, lb, 1)?.inverse();
            }
            let unit = self.monodromy(word, start, la, lb, n.signum())?;
            let rest = self.monodromy(word, start, la, lb, n - n.signum())?;
            unit.compose(&rest)
        })?;
        Ok((*m).clone())
    }

    /// `D^n` of the first `split` strands (as one object) with the rest.
    pub fn double_braiding_power(&self, word: &[usize], split: usize, n: i64) -> Result<Morphism> {
        if split > word.len() {
            return Err(MtcError::PositionOutOfRange {
                position: split,
                len: word.len(),
            });
        }
        self.monodromy(word, 0, split, word.len() - split, n)
    }

    // ---- twists --------------------------------------------------------

    /// Twist of the composite object formed by `len` strands from `start`.
    pub fn twist(&self, word: &[usize], start: usize, len: usize) -> Result<Morphism> {
        self.twist_power(word, start, len, 1)
    }

    pub fn twist_power(&self, word: &[usize], start: usize, len: usize, n: i64) -> Result<Morphism> {
        if start + len > word.len() {
            return Err(MtcError::PositionOutOfRange {
                position: start + len,
                len: word.len(),
            });
        }
        if len == 0 || n == 0 {
            return self.identity(word);
        }
        let pw = |c: usize| {
            let t = self.spec.twist(c);
            if n > 0 {
                t.powi(n as i32)
            } else {
                t.inv().powi((-n) as i32)
            }
        };
        if start == 0 {
            // the prefix of a left-nested tree is itself a tree with root path[len-1]
            let mut m = self.identity(word)?;
            for c in 0..self.rank() {
                let b = self.basis(word, c)?;
                for (i, t) in b.trees.iter().enumerate() {
                    m.blocks[c][(i, i)] = pw(t.path[len - 1]);
                }
            }
            return Ok(m);
        }
        let sub = &word[start..start + len];
        let inner = self.twist_power(sub, 0, len, n)?;
        self.embed(&word[..start], &inner, &word[start + len..])
    }

    // ---- duality -------------------------------------------------------

    fn elementary(&self, source: &[usize], target: &[usize], value: C64) -> Result<Morphism> {
        let mut m = self.zero(source, target)?;
        m.blocks[0][(0, 0)] = value;
        Ok(m)
    }

    /// `b_i: 1 -> i ⊗ ī`
    pub fn cup(&self, i: usize) -> Result<Morphism> {
        self.elementary(&[], &[i, self.dual(i)], self.gauge.cup[i])
    }

    /// `d_i: ī ⊗ i -> 1`
    pub fn cap(&self, i: usize) -> Result<Morphism> {
        self.elementary(&[self.dual(i), i], &[], self.gauge.cap[i])
    }

    /// `b̃_i: 1 -> ī ⊗ i`
    pub fn cup_tilde(&self, i: usize) -> Result<Morphism> {
        self.elementary(&[], &[self.dual(i), i], self.gauge.cup_tilde[i])
    }

    /// `d̃_i: i ⊗ ī -> 1`
    pub fn cap_tilde(&self, i: usize) -> Result<Morphism> {
        self.elementary(&[i, self.dual(i)], &[], self.gauge.cap_tilde[i])
    }

    /// Splitting vertex `k -> i ⊗ j` with multiplicity index `alpha`.
    pub fn splitting(&self, i: usize, j: usize, k: usize, alpha: usize) -> Result<Morphism> {
        let mut m = self.zero(&[k], &[i, j])?;
        if alpha >= self.tables.n(i, j, k) {
            return Err(MtcError::ShapeMismatch(format!("no vertex ({i} {j} -> {k}, {alpha})")));
        }
        let b = self.basis(&[i, j], k)?;
        let t = FusionTree {
            path: vec![i, k],
            mult: vec![alpha],
        };
        m.blocks[k][(b.position(&t).expect("vertex tree"), 0)] = ONE;
        Ok(m)
    }

    /// Fusion vertex `i ⊗ j -> k`, dual to [`Engine::splitting`].
    pub fn fusion(&self, i: usize, j: usize, k: usize, alpha: usize) -> Result<Morphism> {
        Ok(self.splitting(i, j, k, alpha)?.adjoint())
    }

    /// Quantum trace `Σ_c d_c tr(M_c)`.
    pub fn trace(&self, f: &Morphism) -> Result<C64> {
        if !f.is_endomorphism() {
            return Err(MtcError::TraceOnNonEndomorphism);
        }
        Ok((0..self.rank()).map(|c| f.blocks[c].trace() * self.spec.dim(c)).sum())
    }

    /// Trace by explicit closure of the last strand on the right,
    /// `d̃_x ∘ (f ⊗ id_x̄) ∘ b_x`, iterated over all strands.
    pub fn closure_trace(&self, f: &Morphism) -> Result<C64> {
        if !f.is_endomorphism() {
            return Err(MtcError::TraceOnNonEndomorphism);
        }
        let mut g = f.clone();
        while let Some(&x) = g.source.last() {
            let n = g.source.len();
            let w = g.source[..n - 1].to_vec();
            let xb = self.dual(x);
            let open = self.embed(&w, &self.cup(x)?, &[])?;
            let close = self.embed(&w, &self.cap_tilde(x)?, &[])?;
            let mid = self.tensor(&g, &self.identity(&[xb])?)?;
            g = close.compose(&mid)?.compose(&open)?;
        }
        g.scalar().ok_or(MtcError::TraceOnNonEndomorphism)
    }

    /// Zig-zag identities and loop values for every label.
    pub fn duality_report(&self, tol: &ToleranceConfig) -> Result<VerificationReport> {
        let mut zig: f64 = 0.0;
        let mut loops: f64 = 0.0;
        for i in 0..self.rank() {
            let ib = self.dual(i);
            let id_i = self.identity(&[i])?;
            let id_ib = self.identity(&[ib])?;
            // (id_i ⊗ d_i)(b_i ⊗ id_i) and (d̃_i ⊗ id_i)(id_i ⊗ b̃_i)
            let z1 = self.embed(&[i], &self.cap(i)?, &[])?.compose(&self.embed(&[], &self.cup(i)?, &[i])?)?;
            let z2 = self
                .embed(&[], &self.cap_tilde(i)?, &[i])?
                .compose(&self.embed(&[i], &self.cup_tilde(i)?, &[])?)?;
            // (d_i ⊗ id_ī)(id_ī ⊗ b_i) and (id_ī ⊗ d̃_i)(b̃_i ⊗ id_ī)
            let z3 = self.embed(&[], &self.cap(i)?, &[ib])?.compose(&self.embed(&[ib], &self.cup(i)?, &[])?)?;
            let z4 = self
                .embed(&[ib], &self.cap_tilde(i)?, &[])?
                .compose(&self.embed(&[], &self.cup_tilde(i)?, &[ib])?)?;
            zig = zig
                .max(z1.distance(&id_i))
                .max(z2.distance(&id_i))
                .max(z3.distance(&id_ib))
                .max(z4.distance(&id_ib));
            let d = C64::new(self.spec.dim(i), 0.0);
            let l1 = self.cap_tilde(i)?.compose(&self.cup(i)?)?.scalar().unwrap_or_default();
            let l2 = self.cap(i)?.compose(&self.cup_tilde(i)?)?.scalar().unwrap_or_default();
            loops = loops.max((l1 - d).norm()).max((l2 - d).norm());
        }
        let mut report = VerificationReport::new();
        report.push(Check::measured("duality.zigzag", TAG_DUALITY, zig, tol.atol));
        report.push(Check::measured("duality.loop_value", TAG_DUALITY, loops, tol.atol));
        Ok(report)
    }

    // ---- Deligne powers ------------------------------------------------

    /// `g ⊠ h` for an engine over `base ⊠ base`: both factors are morphisms
    /// of `base` on words of equal length, paired strand by strand.
    pub fn deligne_pair(&self, base: &Engine, g: &Morphism, h: &Morphism) -> Result<Morphism> {
        let r = base.rank();
        if self.rank() != r * r || g.source.len() != h.source.len() || g.target.len() != h.target.len() {
            return Err(MtcError::ShapeMismatch("Deligne pairing needs a square and equal-length words".into()));
        }
        let pair = |x: &[usize], y: &[usize]| x.iter().zip(y).map(|(a, b)| a * r + b).collect::<Vec<_>>();
        let source = pair(&g.source, &h.source);
        let target = pair(&g.target, &h.target);
        // component trees of a product tree; multiplicities are flattened row-major
        let split = |word2: &[usize], t: &FusionTree| -> (FusionTree, FusionTree) {
            let path1 = t.path.iter().map(|p| p / r).collect::<Vec<_>>();
            let path2 = t.path.iter().map(|p| p % r).collect::<Vec<_>>();
            let mut m1 = Vec::new();
            let mut m2 = Vec::new();
            for (k, &mu) in t.mult.iter().enumerate() {
                let n2 = base.tables.n(path2[k], word2[k + 1] % r, path2[k + 1]);
                m1.push(mu / n2);
                m2.push(mu % n2);
            }
            (FusionTree { path: path1, mult: m1 }, FusionTree { path: path2, mult: m2 })
        };
        let src_words = source.clone();
        let tgt_words = target.clone();
        self.from_fn(&source, &target, |c, tt, st| {
            let (c1, c2) = (c / r, c % r);
            let (t1, t2) = split(&tgt_words, tt);
            let (s1, s2) = split(&src_words, st);
            let pos = |e: &Engine, w: &[usize], root: usize, t: &FusionTree| {
                e.basis(w, root).ok().and_then(|b| b.position(t))
            };
            match (
                pos(base, &g.target, c1, &t1),
                pos(base, &g.source, c1, &s1),
                pos(base, &h.target, c2, &t2),
                pos(base, &h.source, c2, &s2),
            ) {
                (Some(a), Some(b), Some(cc), Some(d)) => g.blocks[c1][(a, b)] * h.blocks[c2][(cc, d)],
                _ => ZERO,
            }
        })
    }
}
