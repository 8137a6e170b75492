use nalgebra::DMatrix;

use crate::category_data::C64;
use crate::error::{MtcError, Result};

/// Linear map between tensor words of simples, stored per root label `c` as
/// a matrix from `basis(source, c)` to `basis(target, c)`: column `s` holds
/// the coordinates of `f ∘ t_s` in the target trees.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub blocks: Vec<DMatrix<C64>>,
}

impl Morphism {
    pub fn block(&self, c: usize) -> &DMatrix<C64> {
        &self.blocks[c]
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &Morphism) -> Result<Morphism> {
        if self.source != g.target {
            return Err(MtcError::ShapeMismatch(format!(
                "cannot compose {:?} -> {:?} after {:?} -> {:?}",
                self.source, self.target, g.source, g.target
            )));
        }
        Ok(Morphism {
            source: g.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().zip(&g.blocks).map(|(a, b)| a * b).collect(),
        })
    }

    /// Composes a chain written in diagram order: `then(f, g)` is `g ∘ f`.
    pub fn then(&self, g: &Morphism) -> Result<Morphism> {
        g.compose(self)
    }

    pub fn scale(&self, z: C64) -> Morphism {
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|b| b * z).collect(),
        }
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        self.same_shape(other)?;
        Ok(Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Morphism) -> Result<Morphism> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    fn same_shape(&self, other: &Morphism) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(MtcError::ShapeMismatch(format!(
                "{:?} -> {:?} vs {:?} -> {:?}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(())
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks
            .iter()
            .flat_map(|b| b.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Blockwise max-norm distance; infinite when the words differ.
    pub fn distance(&self, other: &Morphism) -> f64 {
        match self.sub(other) {
            Ok(d) => d.max_abs(),
            Err(_) => f64::INFINITY,
        }
    }

    pub fn adjoint(&self) -> Morphism {
        Morphism {
            source: self.target.clone(),
            target: self.source.clone(),
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    pub fn inverse(&self) -> Result<Morphism> {
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(c, b)| {
                if b.nrows() != b.ncols() {
                    return Err(MtcError::ShapeMismatch(format!("block {c} is {}x{}", b.nrows(), b.ncols())));
                }
                if b.is_empty() {
                    return Ok(b.clone());
                }
                b.clone()
                    .try_inverse()
                    .ok_or_else(|| MtcError::ShapeMismatch(format!("block {c} is singular")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism {
            source: self.target.clone(),
            target: self.source.clone(),
            blocks,
        })
    }

    /// Integer power of an endomorphism.
    pub fn powi(&self, n: i64) -> Result<Morphism> {
        if !self.is_endomorphism() {
            return Err(MtcError::ShapeMismatch("power of a non-endomorphism".into()));
        }
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut out = Morphism {
            source: self.source.clone(),
            target: self.source.clone(),
            blocks: base
                .blocks
                .iter()
                .map(|b| DMatrix::identity(b.nrows(), b.ncols()))
                .collect(),
        };
        for _ in 0..n.unsigned_abs() {
            out = out.compose(&base)?;
        }
        Ok(out)
    }

    /// Deviation from unitarity, `max_c ‖M_c† M_c − 1‖`.
    pub fn unitarity_deviation(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| {
                let p = b.adjoint() * b;
                (p.clone() - DMatrix::identity(p.nrows(), p.ncols()))
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    /// Ratio of extreme singular values over all blocks.
    pub fn condition_number(&self) -> f64 {
        let mut hi: f64 = 0.0;
        let mut lo = f64::INFINITY;
        for b in self.blocks.iter().filter(|b| !b.is_empty()) {
            for s in b.clone().svd(false, false).singular_values.iter() {
                hi = hi.max(*s);
                lo = lo.min(*s);
            }
        }
        if lo == f64::INFINITY {
            1.0
        } else {
            hi / lo
        }
    }

    /// Value of a morphism between empty words.
    pub fn scalar(&self) -> Option<C64> {
        (self.source.is_empty() && self.target.is_empty()).then(|| self.blocks[0][(0, 0)])
    }
}
