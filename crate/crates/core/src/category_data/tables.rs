//! Dense per-block views of the sparse F and R data.

use std::collections::HashMap;

use nalgebra::DMatrix;

use super::{CategorySpec, C64};
use crate::error::{MtcError, Result};

/// `(internal label, multiplicity at the first vertex, multiplicity at the second)`.
pub type Vertex3 = (usize, usize, usize);

/// F-move on `Hom(a ⊗ b ⊗ c, d)` from left-nested to right-nested trees.
#[derive(Clone, Debug)]
pub struct FBlock {
    pub left: Vec<Vertex3>,
    pub right: Vec<Vertex3>,
    /// rows: left trees, columns: right trees
    pub mat: DMatrix<C64>,
    /// rows: right trees, columns: left trees
    pub inv: DMatrix<C64>,
}

impl FBlock {
    pub fn left_pos(&self, v: Vertex3) -> Option<usize> {
        self.left.binary_search(&v).ok()
    }

    pub fn right_pos(&self, v: Vertex3) -> Option<usize> {
        self.right.binary_search(&v).ok()
    }
}

#[derive(Clone, Debug)]
pub struct Tables {
    rank: usize,
    n: Vec<u32>,
    channels: Vec<Vec<(usize, u32)>>,
    f: HashMap<[usize; 4], FBlock>,
    r: HashMap<[usize; 3], DMatrix<C64>>,
    rinv: HashMap<[usize; 3], DMatrix<C64>>,
}

impl Tables {
    pub fn new(spec: &CategorySpec) -> Result<Self> {
        let rank = spec.rank();
        let ring = &spec.ring;
        let mut channels = Vec::with_capacity(rank * rank);
        for a in 0..rank {
            for b in 0..rank {
                channels.push(ring.channels(a, b));
            }
        }
        let mut f = HashMap::new();
        for a in 0..rank {
            for b in 0..rank {
                for c in 0..rank {
                    for d in 0..rank {
                        let mut left = Vec::new();
                        for &(e, m1) in &channels[a * rank + b] {
                            for alpha in 0..m1 as usize {
                                for beta in 0..ring.n(e, c, d) as usize {
                                    left.push((e, alpha, beta));
                                }
                            }
                        }
                        let mut right = Vec::new();
                        for &(g, m1) in &channels[b * rank + c] {
                            for gamma in 0..m1 as usize {
                                for delta in 0..ring.n(a, g, d) as usize {
                                    right.push((g, gamma, delta));
                                }
                            }
                        }
                        if left.is_empty() && right.is_empty() {
                            continue;
                        }
                        if left.len() != right.len() {
                            return Err(MtcError::SingularF { a, b, c, d });
                        }
                        let mat = DMatrix::from_fn(left.len(), right.len(), |i, j| {
                            let (e, al, be) = left[i];
                            let (g, ga, de) = right[j];
                            spec.braided.f(&[a, b, c, d, e, al, be, g, ga, de])
                        });
                        let inv = mat
                            .clone()
                            .try_inverse()
                            .ok_or(MtcError::SingularF { a, b, c, d })?;
                        f.insert([a, b, c, d], FBlock { left, right, mat, inv });
                    }
                }
            }
        }
        let mut r = HashMap::new();
        let mut rinv = HashMap::new();
        for a in 0..rank {
            for b in 0..rank {
                for (c, m) in ring.channels(a, b) {
                    let m = m as usize;
                    let mb = ring.n(b, a, c) as usize;
                    if m != mb {
                        return Err(MtcError::Field {
                            field: "fusion".into(),
                            message: format!("N_{a}{b}^{c} != N_{b}{a}^{c}; a braided ring must be commutative"),
                        });
                    }
                    let mat = DMatrix::from_fn(m, m, |al, be| spec.braided.r(&[a, b, c, al, be]));
                    let inv = mat.clone().try_inverse().ok_or_else(|| MtcError::Field {
                        field: "R".into(),
                        message: format!("R^{{{a}{b}}}_{c} is singular"),
                    })?;
                    r.insert([a, b, c], mat);
                    rinv.insert([a, b, c], inv);
                }
            }
        }
        Ok(Self {
            rank,
            n: ring.tensor().to_vec(),
            channels,
            f,
            r,
            rinv,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n(&self, a: usize, b: usize, c: usize) -> usize {
        self.n[(a * self.rank + b) * self.rank + c] as usize
    }

    pub fn channels(&self, a: usize, b: usize) -> &[(usize, u32)] {
        &self.channels[a * self.rank + b]
    }

    pub fn fblock(&self, a: usize, b: usize, c: usize, d: usize) -> Option<&FBlock> {
        self.f.get(&[a, b, c, d])
    }

    /// Single F-symbol; zero when the entry is not admissible.
    pub fn f(&self, abcd: [usize; 4], left: Vertex3, right: Vertex3) -> C64 {
        self.fblock(abcd[0], abcd[1], abcd[2], abcd[3])
            .and_then(|b| Some(b.mat[(b.left_pos(left)?, b.right_pos(right)?)]))
            .unwrap_or_default()
    }

    /// Entry of the inverse F-move (right tree to left tree).
    pub fn finv(&self, abcd: [usize; 4], right: Vertex3, left: Vertex3) -> C64 {
        self.fblock(abcd[0], abcd[1], abcd[2], abcd[3])
            .and_then(|b| Some(b.inv[(b.right_pos(right)?, b.left_pos(left)?)]))
            .unwrap_or_default()
    }

    /// Braiding matrix for `c_{a,b}` on channel `c`: rows index `(a b -> c)`
    /// vertices, columns index `(b a -> c)` vertices.
    pub fn r(&self, a: usize, b: usize, c: usize) -> Option<&DMatrix<C64>> {
        self.r.get(&[a, b, c])
    }

    /// Matrix for the inverse braiding `c^{-1}_{b,a}: a ⊗ b -> b ⊗ a` on channel
    /// `c`: rows index `(a b -> c)` vertices, columns `(b a -> c)` vertices.
    pub fn r_under(&self, a: usize, b: usize, c: usize) -> Option<&DMatrix<C64>> {
        self.rinv.get(&[b, a, c])
    }
}
