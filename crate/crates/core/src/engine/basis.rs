use std::collections::HashMap;

/// Left-nested splitting tree `root -> w_0 ⊗ ... ⊗ w_{n-1}`.
///
/// `path[k]` is the label after fusing the first `k + 1` strands, so
/// `path[0] = w_0` and `path[n-1]` is the root. Vertex `k` (1-based) is
/// `(path[k-1], w_k -> path[k])` with multiplicity index `mult[k-1]`.
/// The empty word has a single tree with root 0 and empty `path`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FusionTree {
    pub path: Vec<usize>,
    pub mult: Vec<usize>,
}

impl FusionTree {
    pub fn root(&self) -> usize {
        self.path.last().copied().unwrap_or(0)
    }

    /// Fuses one more strand into `root` through vertex `mu`.
    pub fn extend(&self, root: usize, mu: usize) -> FusionTree {
        let mut t = self.clone();
        if !t.path.is_empty() {
            t.mult.push(mu);
        }
        t.path.push(root);
        t
    }
}

/// Ordered basis of `Hom(root, word)`: lexicographic on internal labels,
/// then on multiplicity indices.
#[derive(Clone, Debug)]
pub struct Basis {
    pub word: Vec<usize>,
    pub root: usize,
    pub trees: Vec<FusionTree>,
    index: HashMap<FusionTree, usize>,
}

impl Basis {
    pub fn new(word: Vec<usize>, root: usize, mut trees: Vec<FusionTree>) -> Self {
        trees.sort();
        let index = trees.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Self { word, root, trees, index }
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn position(&self, tree: &FusionTree) -> Option<usize> {
        self.index.get(tree).copied()
    }
}

/// Basis of `⊕_{a,b} Hom(a, w1) ⊗ Hom(b, w2) ⊗ Hom(c, a ⊗ b)`, the natural
/// basis for a juxtaposition before re-nesting.
#[derive(Clone, Debug)]
pub struct ProductBasis {
    /// `(a, index in basis(w1, a), b, index in basis(w2, b), mu)`
    pub entries: Vec<(usize, usize, usize, usize, usize)>,
    index: HashMap<(usize, usize, usize, usize, usize), usize>,
}

impl ProductBasis {
    pub fn new(entries: Vec<(usize, usize, usize, usize, usize)>) -> Self {
        let index = entries.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Self { entries, index }
    }

    pub fn position(&self, e: (usize, usize, usize, usize, usize)) -> Option<usize> {
        self.index.get(&e).copied()
    }
}
