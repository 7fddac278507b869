//! Rooted plane trees in first-child / next-sibling form.

use serde::{Deserialize, Serialize};

/// Sentinel for "no such vertex".
pub const NIL: u32 = u32::MAX;

/// A rooted plane tree. Vertices are numbered in depth-first (preorder)
/// order with the root at 0, so equal trees have equal arrays.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlaneTree {
    parent: Vec<u32>,
    first_child: Vec<u32>,
    next_sibling: Vec<u32>,
}

impl Default for PlaneTree {
    fn default() -> Self {
        Self::singleton()
    }
}

impl PlaneTree {
    /// The tree with a single vertex and no edge.
    pub fn singleton() -> Self {
        Self { parent: vec![NIL], first_child: vec![NIL], next_sibling: vec![NIL] }
    }

    /// Builds a tree from its depth-first step sequence: `true` goes down to a
    /// new child, `false` returns to the parent. Returns `None` unless the
    /// sequence is a Dyck path.
    pub fn from_steps<I: IntoIterator<Item = bool>>(steps: I) -> Option<Self> {
        let mut t = Self::singleton();
        let mut last_child: Vec<u32> = vec![NIL];
        let mut cur = 0u32;
        for up in steps {
            if up {
                let v = t.parent.len() as u32;
                t.parent.push(cur);
                t.first_child.push(NIL);
                t.next_sibling.push(NIL);
                last_child.push(NIL);
                let lc = last_child[cur as usize];
                if lc == NIL {
                    t.first_child[cur as usize] = v;
                } else {
                    t.next_sibling[lc as usize] = v;
                }
                last_child[cur as usize] = v;
                cur = v;
            } else {
                if cur == 0 {
                    return None;
                }
                cur = t.parent[cur as usize];
            }
        }
        (cur == 0).then_some(t)
    }

    /// Builds a tree from nested child lists, `children[v]` in left-to-right
    /// order, vertex 0 being the root. Vertices are renumbered in preorder.
    pub fn from_children(children: &[Vec<usize>]) -> Self {
        let mut steps = Vec::with_capacity(2 * children.len());
        let mut stack = vec![(0usize, 0usize)];
        while let Some((v, k)) = stack.pop() {
            if k < children[v].len() {
                stack.push((v, k + 1));
                stack.push((children[v][k], 0));
                steps.push(true);
            } else if v != 0 {
                steps.push(false);
            }
        }
        Self::from_steps(steps).expect("child lists describe a tree")
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn num_vertices(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: u32) -> Option<u32> {
        let p = self.parent[v as usize];
        (p != NIL).then_some(p)
    }

    pub fn first_child(&self, v: u32) -> Option<u32> {
        let c = self.first_child[v as usize];
        (c != NIL).then_some(c)
    }

    pub fn next_sibling(&self, v: u32) -> Option<u32> {
        let s = self.next_sibling[v as usize];
        (s != NIL).then_some(s)
    }

    /// Children of `v` from left to right.
    pub fn children(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        std::iter::successors(self.first_child(v), move |&c| self.next_sibling(c))
    }

    pub fn depth(&self, mut v: u32) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent(v) {
            v = p;
            d += 1;
        }
        d
    }

    /// The vertex sequence of the contour exploration, of length `2·size()+1`,
    /// starting and ending at the root.
    pub fn contour(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(2 * self.size() + 1);
        out.push(0);
        let mut v = 0u32;
        let mut next = self.first_child(0);
        loop {
            match next {
                Some(c) => {
                    v = c;
                    out.push(v);
                    next = self.first_child(v);
                }
                None => {
                    if v == 0 {
                        break;
                    }
                    let p = self.parent[v as usize];
                    next = self.next_sibling(v);
                    v = p;
                    out.push(v);
                }
            }
        }
        out
    }

    /// Depth-first step sequence, inverse of [`PlaneTree::from_steps`].
    pub fn steps(&self) -> Vec<bool> {
        let c = self.contour();
        c.windows(2).map(|w| self.parent(w[1]) == Some(w[0])).collect()
    }
}
