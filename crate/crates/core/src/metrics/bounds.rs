//! Label-based lower and upper bounds on graph distances in maps built by
//! the BDG mapping, and checkers that compare them with BFS distances.

use super::bfs::bfs_distances;
use crate::bdg::{Quadrangulation, UihpqWindow};
use crate::encoding::tree::NIL;
use std::collections::BTreeMap;

/// Sparse table answering range-minimum queries in O(1).
#[derive(Clone, Debug)]
pub struct RangeMin {
    levels: Vec<Vec<i64>>,
}

impl RangeMin {
    pub fn new(values: &[i64]) -> Self {
        let mut levels = vec![values.to_vec()];
        let mut w = 1;
        while 2 * w <= values.len() {
            let prev = levels.last().unwrap();
            let next: Vec<i64> = (0..=values.len() - 2 * w).map(|i| prev[i].min(prev[i + w])).collect();
            levels.push(next);
            w *= 2;
        }
        Self { levels }
    }

    /// Minimum over the inclusive range `lo..=hi`.
    pub fn min(&self, lo: usize, hi: usize) -> i64 {
        debug_assert!(lo <= hi);
        let k = (usize::BITS - 1 - (hi - lo + 1).leading_zeros()) as usize;
        self.levels[k][lo].min(self.levels[k][hi + 1 - (1 << k)])
    }

    pub fn len(&self) -> usize {
        self.levels[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels[0].is_empty()
    }
}

/// Tree structure and labels needed to evaluate the bounds.
#[derive(Clone, Debug)]
pub struct LabelBounds {
    label: Vec<i64>,
    parent: Vec<u32>,
    depth: Vec<u32>,
    /// Position of each vertex's tree among the floor vertices.
    tree: Vec<u32>,
    /// Minimum label on the path from each vertex to its tree root.
    path_min: Vec<i64>,
    /// Labels of the tree roots, in floor order.
    floor: RangeMin,
    /// Label function along the contour and a corner of each vertex (finite maps only).
    contour: Option<(RangeMin, Vec<u32>)>,
}

impl LabelBounds {
    pub fn from_quadrangulation(q: &Quadrangulation) -> Self {
        let lay = &q.layout;
        let label = q.vertex_labels[..lay.num_vertices()].to_vec();
        let floor: Vec<i64> = lay.roots.iter().map(|&r| label[r as usize]).collect();
        let total = q.labels.values.len() - 1;
        let contour = RangeMin::new(&q.labels.values[..total]);
        Self::build(
            label,
            lay.parent.clone(),
            lay.depth.clone(),
            lay.tree.clone(),
            &floor,
            Some((contour, lay.first_index.clone())),
        )
    }

    /// Bounds for a half-plane window; trees are indexed from the leftmost one.
    pub fn from_window(w: &UihpqWindow) -> Self {
        let floor: Vec<i64> = w.roots.iter().map(|&r| w.vertex_labels[r as usize]).collect();
        Self::build(w.vertex_labels.clone(), w.parent.clone(), w.depth.clone(), w.tree.clone(), &floor, None)
    }

    fn build(
        label: Vec<i64>,
        parent: Vec<u32>,
        depth: Vec<u32>,
        tree: Vec<u32>,
        floor: &[i64],
        contour: Option<(RangeMin, Vec<u32>)>,
    ) -> Self {
        // parents precede children in both vertex numberings
        let mut path_min = label.clone();
        for v in 0..label.len() {
            let p = parent[v];
            if p != NIL {
                path_min[v] = path_min[v].min(path_min[p as usize]);
            }
        }
        Self { label, parent, depth, tree, path_min, floor: RangeMin::new(floor), contour }
    }

    pub fn label(&self, v: u32) -> i64 {
        self.label[v as usize]
    }

    fn tree_path_min(&self, mut u: u32, mut v: u32) -> i64 {
        let mut m = self.label(u).min(self.label(v));
        while self.depth[u as usize] > self.depth[v as usize] {
            u = self.parent[u as usize];
            m = m.min(self.label(u));
        }
        while self.depth[v as usize] > self.depth[u as usize] {
            v = self.parent[v as usize];
            m = m.min(self.label(v));
        }
        while u != v {
            u = self.parent[u as usize];
            v = self.parent[v as usize];
            m = m.min(self.label(u)).min(self.label(v));
        }
        m
    }

    /// Minimum label over the forest path from `u` to `v`, which runs forward
    /// along the floor (wrapping from the last tree to the first when `u`
    /// lies to the right of `v`).
    pub fn forest_path_min(&self, u: u32, v: u32) -> i64 {
        let (tu, tv) = (self.tree[u as usize] as usize, self.tree[v as usize] as usize);
        if tu == tv {
            return self.tree_path_min(u, v);
        }
        let ends = self.path_min[u as usize].min(self.path_min[v as usize]);
        let along =
            if tu < tv { self.floor.min(tu, tv) } else { self.floor.min(tu, self.floor.len() - 1).min(self.floor.min(0, tv)) };
        ends.min(along)
    }

    /// Cactus lower bound `𝔏(u) + 𝔏(v) - 2 max(min over [[u,v]], min over [[v,u]])`.
    pub fn cactus(&self, u: u32, v: u32) -> i64 {
        let m = self.forest_path_min(u, v).max(self.forest_path_min(v, u));
        self.label(u) + self.label(v) - 2 * m
    }

    /// One-sided cactus bound of an infinite map, `𝔏(u) + 𝔏(v) - 2 min over
    /// [[u,v]]` with `u` in the leftmost tree of the two.
    pub fn cactus_one_sided(&self, u: u32, v: u32) -> i64 {
        let (a, b) = if self.tree[u as usize] <= self.tree[v as usize] { (u, v) } else { (v, u) };
        self.label(u) + self.label(v) - 2 * self.forest_path_min(a, b)
    }

    /// Lower bound on the distance from the first root to `u` through the
    /// floor minima on either side of `u`'s tree.
    pub fn cactus_from_first_root(&self, u: u32) -> i64 {
        let t = self.tree[u as usize] as usize;
        -self.floor.min(0, t).max(self.floor.min(t, self.floor.len() - 1))
    }

    /// Upper bound `𝔏(u) + 𝔏(v) - 2 max(min over →[i,j], min over →[j,i]) + 2`
    /// with `i`, `j` the first corners of `u`, `v`.
    pub fn upper(&self, u: u32, v: u32) -> i64 {
        let (rmq, corner) = self.contour.as_ref().expect("upper bound needs the full contour");
        let (i, j) = (corner[u as usize] as usize, corner[v as usize] as usize);
        let cyc = |a: usize, b: usize| if a <= b { rmq.min(a, b) } else { rmq.min(a, rmq.len() - 1).min(rmq.min(0, b)) };
        self.label(u) + self.label(v) - 2 * cyc(i, j).max(cyc(j, i)) + 2
    }
}

/// Outcome of checking one inequality on a batch of vertex pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ViolationReport {
    pub check: String,
    pub checked: u64,
    pub violations: u64,
    /// Largest amount by which the inequality failed (0 if it never did).
    pub max_violation: i64,
}

impl ViolationReport {
    fn new(check: &str) -> Self {
        Self { check: check.into(), ..Default::default() }
    }

    fn record(&mut self, excess: i64) {
        self.checked += 1;
        if excess > 0 {
            self.violations += 1;
            self.max_violation = self.max_violation.max(excess);
        }
    }

    pub fn merge(&mut self, other: &ViolationReport) {
        self.checked += other.checked;
        self.violations += other.violations;
        self.max_violation = self.max_violation.max(other.max_violation);
    }
}

fn by_source(pairs: &[(u32, u32)]) -> BTreeMap<u32, Vec<u32>> {
    let mut m: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &(u, v) in pairs {
        m.entry(u).or_default().push(v);
    }
    m
}

/// Checks the cactus lower bound (two-sided form) on the given pairs of
/// forest vertices, plus the floor bound for pairs starting at vertex `(0)`.
/// One BFS is run per distinct first vertex.
pub fn check_cactus(q: &Quadrangulation, pairs: &[(u32, u32)]) -> ViolationReport {
    check_sandwich(q, pairs)[0].clone()
}

/// Checks the upper bound on the given pairs of forest vertices.
pub fn check_upper_bound(q: &Quadrangulation, pairs: &[(u32, u32)]) -> ViolationReport {
    check_sandwich(q, pairs)[1].clone()
}

/// Both checks with shared BFS runs: `[cactus, upper]`.
pub fn check_sandwich(q: &Quadrangulation, pairs: &[(u32, u32)]) -> [ViolationReport; 2] {
    let lb = LabelBounds::from_quadrangulation(q);
    let mut lower = ViolationReport::new("cactus");
    let mut upper = ViolationReport::new("upper");
    for (u, targets) in by_source(pairs) {
        let d = bfs_distances(&q.map, u);
        for v in targets {
            let dv = d[v as usize] as i64;
            lower.record(lb.cactus(u, v) - dv);
            if u == q.vertex_zero() {
                lower.record(lb.cactus_from_first_root(v) - dv);
            }
            upper.record(dv - lb.upper(u, v));
        }
    }
    [lower, upper]
}

/// Checks the one-sided cactus bound on a half-plane window for pairs of
/// vertices in the certified ball, where window distances are exact.
pub fn check_window_cactus(w: &UihpqWindow, pairs: &[(u32, u32)]) -> ViolationReport {
    let lb = LabelBounds::from_window(w);
    let mut rep = ViolationReport::new("cactus-window");
    for (u, targets) in by_source(pairs) {
        let d = bfs_distances(&w.map, u);
        for v in targets {
            rep.record(lb.cactus_one_sided(u, v) - d[v as usize] as i64);
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bdg::sample_quadrangulation;
    use crate::rng::RngConfig;
    use rand::Rng;

    #[test]
    fn range_min_matches_scan() {
        let mut rng = RngConfig::new(1).rng();
        let v: Vec<i64> = (0..100).map(|_| rng.random_range(-50..50)).collect();
        let r = RangeMin::new(&v);
        for lo in 0..100 {
            for hi in lo..100 {
                assert_eq!(r.min(lo, hi), *v[lo..=hi].iter().min().unwrap());
            }
        }
    }

    #[test]
    fn same_vertex_bounds() {
        let mut rng = RngConfig::new(2).rng();
        let (q, _, _) = sample_quadrangulation(50, 6, &mut rng).unwrap();
        let lb = LabelBounds::from_quadrangulation(&q);
        for v in 0..q.pointed {
            assert!(lb.cactus(v, v) <= 0);
            assert!(lb.upper(v, v) >= 0);
        }
    }

    #[test]
    fn sandwich_on_small_maps() {
        let mut rng = RngConfig::new(3).rng();
        for _ in 0..100 {
            let (q, _, _) = sample_quadrangulation(rng.random_range(1..100), rng.random_range(1..20), &mut rng).unwrap();
            let nv = q.pointed;
            let pairs: Vec<(u32, u32)> = (0..nv).flat_map(|u| (0..nv).map(move |v| (u, v))).collect();
            let [lo, up] = check_sandwich(&q, &pairs);
            assert_eq!(lo.violations, 0, "{lo:?}");
            assert_eq!(up.violations, 0, "{up:?}");
        }
    }
}
