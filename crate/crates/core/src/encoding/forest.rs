//! Well-labeled forests: finite sequences of labeled plane trees.

use super::tree::PlaneTree;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// An ordered sequence of `σ ≥ 1` plane trees with integer labels. Every root
/// carries label 0 and labels differ by at most one along each edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WellLabeledForest {
    trees: Vec<PlaneTree>,
    labels: Vec<Vec<i64>>,
    n: usize,
}

impl WellLabeledForest {
    /// `labels[i][v]` is the label of vertex `v` (preorder id) of tree `i`.
    pub fn new(trees: Vec<PlaneTree>, labels: Vec<Vec<i64>>) -> Result<Self> {
        if trees.is_empty() {
            return Err(Error::InvalidForest("a forest needs at least one tree".into()));
        }
        if labels.len() != trees.len() {
            return Err(Error::LengthMismatch { expected: trees.len(), found: labels.len() });
        }
        for (i, (t, l)) in trees.iter().zip(&labels).enumerate() {
            if l.len() != t.num_vertices() {
                return Err(Error::LengthMismatch { expected: t.num_vertices(), found: l.len() });
            }
            if l[0] != 0 {
                return Err(Error::InvalidForest(format!("root of tree {i} has label {}", l[0])));
            }
            for v in 1..t.num_vertices() as u32 {
                let p = t.parent(v).expect("non-root vertex has a parent");
                if (l[v as usize] - l[p as usize]).abs() > 1 {
                    return Err(Error::InvalidForest(format!(
                        "tree {i}: labels {} and {} across edge {p}-{v}",
                        l[p as usize], l[v as usize]
                    )));
                }
            }
        }
        let n = trees.iter().map(PlaneTree::size).sum();
        Ok(Self { trees, labels, n })
    }

    /// The forest of `sigma` single-vertex trees.
    pub fn empty(sigma: usize) -> Result<Self> {
        Self::new(vec![PlaneTree::singleton(); sigma], vec![vec![0]; sigma])
    }

    /// Number of trees.
    pub fn sigma(&self) -> usize {
        self.trees.len()
    }

    /// Total number of edges.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trees(&self) -> &[PlaneTree] {
        &self.trees
    }

    pub fn labels(&self) -> &[Vec<i64>] {
        &self.labels
    }

    pub fn tree(&self, i: usize) -> &PlaneTree {
        &self.trees[i]
    }

    pub fn tree_labels(&self, i: usize) -> &[i64] {
        &self.labels[i]
    }
}

/// Trees indexed by `-radius..=radius` of a two-sided infinite forest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestWindow {
    pub radius: usize,
    /// The `2·radius+1` trees in index order; tree `i` sits at `i + radius`.
    pub forest: WellLabeledForest,
}

impl ForestWindow {
    pub fn new(radius: usize, forest: WellLabeledForest) -> Result<Self> {
        if forest.sigma() != 2 * radius + 1 {
            return Err(Error::LengthMismatch { expected: 2 * radius + 1, found: forest.sigma() });
        }
        Ok(Self { radius, forest })
    }

    /// The trees with index in `-k..=k`, for `k ≤ radius`.
    pub fn restrict(&self, k: usize) -> Self {
        assert!(k <= self.radius, "cannot widen a window");
        let lo = self.radius - k;
        let trees = self.forest.trees()[lo..=lo + 2 * k].to_vec();
        let labels = self.forest.labels()[lo..=lo + 2 * k].to_vec();
        Self { radius: k, forest: WellLabeledForest::new(trees, labels).expect("sub-forest of a valid forest") }
    }

    /// Tree with (signed) index `i`.
    pub fn tree(&self, i: i64) -> &PlaneTree {
        self.forest.tree(self.slot(i))
    }

    pub fn tree_labels(&self, i: i64) -> &[i64] {
        self.forest.tree_labels(self.slot(i))
    }

    fn slot(&self, i: i64) -> usize {
        let s = i + self.radius as i64;
        assert!(s >= 0 && (s as usize) < self.forest.sigma(), "tree index {i} outside window");
        s as usize
    }
}
