//! Contour pairs, label functions and the per-index vertex layout of a forest.

use super::bridge::Bridge;
use super::forest::WellLabeledForest;
use super::tree::{PlaneTree, NIL};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The contour pair `(C, L)` of a forest with `σ` trees and `n` edges: two
/// integer sequences indexed by `0..=2n+σ`.
///
/// `C` is a ±1 walk from 0 that first hits `-σ` at its last index. Visiting
/// a new minimum `-i` marks the root of tree `i` (or, for `i = σ`, the extra
/// floor vertex). `L` records the tree label of the vertex visited.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContourPair {
    c: Vec<i64>,
    l: Vec<i64>,
}

impl ContourPair {
    /// Validates and wraps a contour pair.
    pub fn new(c: Vec<i64>, l: Vec<i64>) -> Result<Self> {
        let bad = |m: String| Err(Error::MalformedContour(m));
        if c.len() != l.len() {
            return Err(Error::LengthMismatch { expected: c.len(), found: l.len() });
        }
        if c.len() < 2 {
            return bad("contour must have at least two entries".into());
        }
        if c[0] != 0 || l[0] != 0 {
            return bad("contour pair must start at (0, 0)".into());
        }
        let last = c.len() - 1;
        let sigma = -c[last];
        if sigma < 1 {
            return bad(format!("contour ends at {} instead of a negative value", c[last]));
        }
        if (last as i64 - sigma) % 2 != 0 {
            return bad("length and endpoint have incompatible parity".into());
        }
        // Labels of the current ancestors, root first.
        let mut stack: Vec<i64> = vec![0];
        let mut floor = 0i64;
        for j in 0..last {
            let step = c[j + 1] - c[j];
            let (lj, lk) = (l[j], l[j + 1]);
            match step {
                1 => {
                    if (lk - lj).abs() > 1 {
                        return bad(format!("label jumps by {} at index {}", lk - lj, j + 1));
                    }
                    stack.push(lk);
                }
                -1 if c[j + 1] < floor => {
                    floor = c[j + 1];
                    if floor == -sigma && j + 1 != last {
                        return bad(format!("contour hits {} before its last index", -sigma));
                    }
                    if lk != 0 {
                        return bad(format!("floor vertex at index {} has label {lk}", j + 1));
                    }
                    stack.clear();
                    stack.push(0);
                }
                -1 => {
                    stack.pop();
                    let parent = *stack.last().expect("above the floor");
                    if lk != parent {
                        return bad(format!("index {} returns to a vertex of label {parent} but records {lk}", j + 1));
                    }
                }
                _ => return bad(format!("step {step} at index {j}")),
            }
        }
        Ok(Self { c, l })
    }

    pub fn c(&self) -> &[i64] {
        &self.c
    }

    pub fn l(&self) -> &[i64] {
        &self.l
    }

    /// Number of trees.
    pub fn sigma(&self) -> usize {
        (-self.c[self.c.len() - 1]) as usize
    }

    /// Number of edges.
    pub fn n(&self) -> usize {
        (self.c.len() - 1 - self.sigma()) / 2
    }

    /// `2n + σ`, the last index.
    pub fn len(&self) -> usize {
        self.c.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Running minimum `min_{[0, j]} C`. Its negative is the index of the tree
    /// containing the vertex visited at `j`.
    pub fn floor(&self) -> Vec<i64> {
        let mut m = 0;
        self.c
            .iter()
            .map(|&x| {
                m = m.min(x);
                m
            })
            .collect()
    }
}

/// Contour pair of a forest, exploring its trees left to right.
pub fn contour_of_forest(f: &WellLabeledForest) -> ContourPair {
    let len = 2 * f.n() + f.sigma() + 1;
    let mut c = Vec::with_capacity(len);
    let mut l = Vec::with_capacity(len);
    for (i, (t, lab)) in f.trees().iter().zip(f.labels()).enumerate() {
        let mut h = -(i as i64);
        let mut prev = NIL;
        for v in t.contour() {
            if prev != NIL {
                h += if t.parent(v) == Some(prev) { 1 } else { -1 };
            }
            c.push(h);
            l.push(lab[v as usize]);
            prev = v;
        }
    }
    c.push(-(f.sigma() as i64));
    l.push(0);
    ContourPair { c, l }
}

/// The forest whose contour pair is `cp`.
pub fn forest_of_contour(cp: &ContourPair) -> WellLabeledForest {
    let c = &cp.c;
    let mut trees = Vec::with_capacity(cp.sigma());
    let mut labels = Vec::with_capacity(cp.sigma());
    let mut start = 0usize;
    for j in 1..c.len() {
        if c[j] < c[start] {
            // indices start..j-1 explore one tree
            let steps = (start..j - 1).map(|k| c[k + 1] > c[k]);
            let t = PlaneTree::from_steps(steps).expect("validated contour");
            let mut lab = vec![0i64; t.num_vertices()];
            for (k, v) in t.contour().into_iter().enumerate() {
                lab[v as usize] = cp.l[start + k];
            }
            trees.push(t);
            labels.push(lab);
            start = j;
        }
    }
    WellLabeledForest::new(trees, labels).expect("validated contour gives a well-labeled forest")
}

/// The label function `𝔏(j) = L(j) + b(-min_{[0,j]} C)`: tree labels shifted
/// by the bridge value of the tree they belong to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelFunction {
    pub values: Vec<i64>,
}

impl LabelFunction {
    pub fn get(&self, j: usize) -> i64 {
        self.values[j]
    }

    pub fn min(&self) -> i64 {
        *self.values.iter().min().unwrap()
    }
}

pub fn label_function(cp: &ContourPair, b: &Bridge) -> Result<LabelFunction> {
    if b.sigma() != cp.sigma() {
        return Err(Error::LengthMismatch { expected: cp.sigma(), found: b.sigma() });
    }
    let values = cp.floor().iter().zip(&cp.l).map(|(&fl, &l)| l + b.get((-fl) as usize)).collect();
    Ok(LabelFunction { values })
}

/// Which forest vertex each contour index visits, plus the parent, tree and
/// depth of every vertex. Vertices are numbered by first visit, which is the
/// concatenation of the trees' preorders.
#[derive(Clone, Debug)]
pub struct ForestLayout {
    /// `vertex[j]` for `j < 2n+σ`. Index `2n+σ` is the floor vertex `(σ)`,
    /// which is not a forest vertex.
    pub vertex: Vec<u32>,
    /// Parent vertex, [`NIL`] for roots.
    pub parent: Vec<u32>,
    pub tree: Vec<u32>,
    pub depth: Vec<u32>,
    /// Tree label of each vertex.
    pub label: Vec<i64>,
    /// First contour index of each vertex.
    pub first_index: Vec<u32>,
    /// Vertex id of the root of each tree.
    pub roots: Vec<u32>,
}

impl ForestLayout {
    pub fn new(cp: &ContourPair) -> Self {
        let c = &cp.c;
        let total = cp.len();
        let nv = cp.n() + cp.sigma();
        let mut lay = ForestLayout {
            vertex: Vec::with_capacity(total),
            parent: Vec::with_capacity(nv),
            tree: Vec::with_capacity(nv),
            depth: Vec::with_capacity(nv),
            label: Vec::with_capacity(nv),
            first_index: Vec::with_capacity(nv),
            roots: Vec::with_capacity(cp.sigma()),
        };
        let mut floor = 1i64;
        let mut cur = NIL;
        for j in 0..total {
            if c[j] < floor {
                floor = c[j];
                cur = lay.push(NIL, (-floor) as u32, 0, cp.l[j], j);
                lay.roots.push(cur);
            } else if c[j] > c[j - 1] {
                let d = lay.depth[cur as usize] + 1;
                cur = lay.push(cur, lay.tree[cur as usize], d, cp.l[j], j);
            } else {
                cur = lay.parent[cur as usize];
            }
            lay.vertex.push(cur);
        }
        lay
    }

    fn push(&mut self, parent: u32, tree: u32, depth: u32, label: i64, j: usize) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(parent);
        self.tree.push(tree);
        self.depth.push(depth);
        self.label.push(label);
        self.first_index.push(j as u32);
        id
    }

    pub fn num_vertices(&self) -> usize {
        self.parent.len()
    }
}
