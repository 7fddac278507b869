//! The Bouttier–Di Francesco–Guitter mapping from a labeled forest and a
//! bridge to a pointed rooted quadrangulation with a boundary, and its
//! windowed version for the half-plane.
//!
//! Every contour index `i` (a corner of the forest) sends one arc to the next
//! corner, in cyclic contour order, whose label is one less; corners of
//! minimal label send theirs to an extra vertex `v•`. The arcs are embedded by
//! recording, at every corner, the arcs arriving there followed by the arc
//! leaving it.

use crate::encoding::contour_of_forest;
use crate::encoding::{
    label_function, Bridge, BridgeWindow, ContourPair, ForestLayout, ForestWindow, LabelFunction, WellLabeledForest,
};
use crate::error::{Error, Result};
use crate::samplers::{sample_bridge_uniform, sample_contour_pair};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Marker for "no successor" in successor arrays.
pub const NO_SUCC: u32 = u32::MAX;

/// Cyclic successor of index `i` by direct scan: the first `k` in
/// `i+1, ..., N-1, 0, ..., i-1` with `labels[k] = labels[i] - 1`.
pub fn successor(labels: &[i64], i: usize) -> Option<usize> {
    let n = labels.len();
    (1..n).map(|d| (i + d) % n).find(|&k| labels[k] == labels[i] - 1)
}

/// Cyclic successors of all indices in `O(N + label range)`, with
/// [`NO_SUCC`] for indices of minimal label.
pub fn successors(labels: &[i64]) -> Vec<u32> {
    let n = labels.len();
    if n == 0 {
        return Vec::new();
    }
    let lo = *labels.iter().min().unwrap();
    let hi = *labels.iter().max().unwrap();
    // slot 0 stands for label lo - 1, which never occurs
    let mut next = vec![usize::MAX; (hi - lo + 2) as usize];
    let mut out = vec![NO_SUCC; n];
    for p in (0..2 * n).rev() {
        let k = p % n;
        let slot = (labels[k] - lo + 1) as usize;
        if p < n {
            let q = next[slot - 1];
            if q != usize::MAX {
                out[p] = (q % n) as u32;
            }
        }
        next[slot] = p;
    }
    out
}

/// A connected planar map given by its edges and a rotation system.
///
/// Edge `e` joins `edges[e][0]` to `edges[e][1]`; its darts are `2e` (leaving
/// `edges[e][0]`) and `2e+1` (leaving `edges[e][1]`). `rot[rot_start[v]..rot_start[v+1]]`
/// lists the darts leaving `v` in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarMap {
    pub num_vertices: usize,
    pub edges: Vec<[u32; 2]>,
    rot_start: Vec<u32>,
    rot: Vec<u32>,
    rot_pos: Vec<u32>,
    /// Root dart, absent for a map reduced to a vertex.
    pub root: Option<u32>,
}

impl PlanarMap {
    /// Builds a map from per-vertex dart rotations.
    pub fn from_rotations(num_vertices: usize, edges: Vec<[u32; 2]>, rotations: &[Vec<u32>], root: Option<u32>) -> Self {
        let mut rot_start = Vec::with_capacity(num_vertices + 1);
        let mut rot = Vec::with_capacity(2 * edges.len());
        rot_start.push(0);
        for r in rotations {
            rot.extend_from_slice(r);
            rot_start.push(rot.len() as u32);
        }
        Self::from_csr(num_vertices, edges, rot_start, rot, root)
    }

    fn from_csr(num_vertices: usize, edges: Vec<[u32; 2]>, rot_start: Vec<u32>, rot: Vec<u32>, root: Option<u32>) -> Self {
        let mut rot_pos = vec![u32::MAX; rot.len()];
        for (p, &d) in rot.iter().enumerate() {
            rot_pos[d as usize] = p as u32;
        }
        Self { num_vertices, edges, rot_start, rot, rot_pos, root }
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Vertex a dart leaves from.
    pub fn tail(&self, d: u32) -> u32 {
        self.edges[(d >> 1) as usize][(d & 1) as usize]
    }

    /// Vertex a dart points to.
    pub fn head(&self, d: u32) -> u32 {
        self.edges[(d >> 1) as usize][1 - (d & 1) as usize]
    }

    /// Darts leaving `v` in cyclic order.
    pub fn darts(&self, v: u32) -> &[u32] {
        &self.rot[self.rot_start[v as usize] as usize..self.rot_start[v as usize + 1] as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.darts(v).len()
    }

    /// Next dart around the tail of `d`.
    pub fn next_around(&self, d: u32) -> u32 {
        let v = self.tail(d) as usize;
        let (s, e) = (self.rot_start[v], self.rot_start[v + 1]);
        let p = self.rot_pos[d as usize] + 1;
        self.rot[if p == e { s } else { p } as usize]
    }

    /// Next dart along the face to the left of `d`.
    pub fn face_next(&self, d: u32) -> u32 {
        self.next_around(d ^ 1)
    }

    /// Faces as dart cycles.
    pub fn faces(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.rot.len()];
        let mut out = Vec::new();
        for d0 in 0..self.rot.len() as u32 {
            if seen[d0 as usize] {
                continue;
            }
            let mut f = Vec::new();
            let mut d = d0;
            while !seen[d as usize] {
                seen[d as usize] = true;
                f.push(d);
                d = self.face_next(d);
            }
            out.push(f);
        }
        out
    }

    /// Face containing dart `d`.
    pub fn face_of(&self, d0: u32) -> Vec<u32> {
        let mut f = vec![d0];
        let mut d = self.face_next(d0);
        while d != d0 {
            f.push(d);
            d = self.face_next(d);
        }
        f
    }

    /// Neighbors of `v` with multiplicity, in rotation order.
    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.darts(v).iter().map(move |&d| self.head(d))
    }

    /// Distinct neighbors of `v`, sorted.
    pub fn sorted_neighbors(&self, v: u32) -> Vec<u32> {
        let mut n: Vec<u32> = self.neighbors(v).collect();
        n.sort_unstable();
        n.dedup();
        n
    }

    /// Root edge as an oriented vertex pair.
    pub fn root_edge(&self) -> Option<(u32, u32)> {
        self.root.map(|d| (self.tail(d), self.head(d)))
    }

    pub fn root_vertex(&self) -> Option<u32> {
        self.root.map(|d| self.tail(d))
    }
}

/// A pointed rooted quadrangulation with a boundary of length `2σ` and `n`
/// inner faces, as produced by the mapping.
#[derive(Clone, Debug)]
pub struct Quadrangulation {
    pub n: usize,
    pub sigma: usize,
    pub map: PlanarMap,
    /// The distinguished vertex `v•`, always the last vertex id.
    pub pointed: u32,
    /// Label of every vertex; `v•` gets `min 𝔏 - 1`, so graph distance to
    /// `v•` is the label minus that value.
    pub vertex_labels: Vec<i64>,
    /// Vertex visited at each contour index.
    pub layout: ForestLayout,
    pub labels: LabelFunction,
    pub succ: Vec<u32>,
}

/// Serialized form of a quadrangulation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrangulationJson {
    pub n: usize,
    pub sigma: usize,
    pub edges: Vec<[u32; 2]>,
    pub root: Option<[u32; 2]>,
    pub pointed: u32,
}

impl Quadrangulation {
    pub fn num_vertices(&self) -> usize {
        self.map.num_vertices
    }

    pub fn root_vertex(&self) -> u32 {
        self.map.root_vertex().expect("quadrangulations are rooted")
    }

    /// Vertex `(0)`, the root of the first tree.
    pub fn vertex_zero(&self) -> u32 {
        0
    }

    /// The face of degree `2σ`, which contains the root dart.
    pub fn boundary_face(&self) -> Vec<u32> {
        self.map.face_of(self.map.root.expect("rooted"))
    }

    pub fn to_json(&self) -> QuadrangulationJson {
        QuadrangulationJson {
            n: self.n,
            sigma: self.sigma,
            edges: self.map.edges.clone(),
            root: self.map.root_edge().map(|(u, v)| [u, v]),
            pointed: self.pointed,
        }
    }

    /// Checks face degrees and Euler's formula.
    pub fn check_structure(&self) -> Result<()> {
        let faces = self.map.faces();
        let v = self.map.num_vertices as i64;
        let e = self.map.num_edges() as i64;
        if v - e + faces.len() as i64 != 2 {
            return Err(Error::InvalidParameter(format!("Euler characteristic {} != 2", v - e + faces.len() as i64)));
        }
        let quads = faces.iter().filter(|f| f.len() == 4).count();
        let big = faces.iter().filter(|f| f.len() == 2 * self.sigma).count();
        let ok = if self.sigma == 2 {
            quads == self.n + 1 && faces.len() == self.n + 1
        } else {
            quads == self.n && big == 1 && faces.len() == self.n + 1
        };
        if !ok {
            return Err(Error::InvalidParameter("face degrees do not match a quadrangulation with a boundary".into()));
        }
        if self.boundary_face().len() != 2 * self.sigma {
            return Err(Error::InvalidParameter("root dart is not on the boundary".into()));
        }
        Ok(())
    }
}

/// Arc rotations around every contour corner: the arcs arriving at corner
/// `c` (from `j` with `succ(j) = c`, nearest backward first) followed by the
/// arc leaving `c`. The incoming lists are filled for decreasing `j`.
fn corner_rotations(succ: &[u32], cyclic: bool) -> Vec<Vec<u32>> {
    let n = succ.len();
    let mut incoming: Vec<Vec<u32>> = vec![Vec::new(); n];
    for j in (0..n).rev() {
        let c = succ[j];
        if c != NO_SUCC {
            incoming[c as usize].push(j as u32);
        }
    }
    if cyclic {
        for (c, list) in incoming.iter_mut().enumerate() {
            // the list holds j > c then j < c, both decreasing
            let split = list.partition_point(|&j| j as usize > c);
            list.rotate_left(split);
        }
    }
    incoming
}

/// `Φ(f, b)`: the pointed rooted quadrangulation encoded by a forest and a bridge.
pub fn build_quadrangulation(f: &WellLabeledForest, b: &Bridge) -> Result<Quadrangulation> {
    build_from_contour(&contour_of_forest(f), b)
}

/// Same as [`build_quadrangulation`], starting from the contour pair.
pub fn build_from_contour(cp: &ContourPair, b: &Bridge) -> Result<Quadrangulation> {
    let lf = label_function(cp, b)?;
    let layout = ForestLayout::new(cp);
    let total = cp.len();
    let nv_forest = layout.num_vertices();
    let pointed = nv_forest as u32;
    let labels = &lf.values[..total];
    let succ = successors(labels);

    let edges: Vec<[u32; 2]> = (0..total)
        .map(|i| {
            let s = succ[i];
            [layout.vertex[i], if s == NO_SUCC { pointed } else { layout.vertex[s as usize] }]
        })
        .collect();

    let incoming = corner_rotations(&succ, true);
    let mut rotations: Vec<Vec<u32>> = vec![Vec::new(); nv_forest + 1];
    for c in 0..total {
        let r = &mut rotations[layout.vertex[c] as usize];
        r.extend(incoming[c].iter().map(|&j| 2 * j + 1));
        r.push(2 * c as u32);
    }
    rotations[nv_forest] = (0..total).rev().filter(|&c| succ[c] == NO_SUCC).map(|c| 2 * c as u32 + 1).collect();

    let sigma = cp.sigma();
    let (bs, bs1) = (b.get(sigma), b.get(sigma - 1));
    let root = if bs >= bs1 {
        // first index with label b(σ), reached by iterating succ from 0
        let idx = labels.iter().position(|&x| x == bs).expect("label b(σ) is attained before the end");
        2 * idx as u32
    } else {
        2 * (total as u32 - 1) + 1
    };

    let min = lf.min();
    let mut vertex_labels: Vec<i64> = layout.first_index.iter().map(|&j| lf.values[j as usize]).collect();
    vertex_labels.push(labels.iter().copied().min().unwrap_or(min) - 1);

    let map = PlanarMap::from_rotations(nv_forest + 1, edges, &rotations, Some(root));
    Ok(Quadrangulation { n: cp.n(), sigma, map, pointed, vertex_labels, layout, labels: lf, succ })
}

/// A uniform pointed quadrangulation with `n ≥ 1` inner faces and boundary
/// `2σ`, together with its encoding.
pub fn sample_quadrangulation<R: Rng + ?Sized>(
    n: usize,
    sigma: usize,
    rng: &mut R,
) -> Result<(Quadrangulation, ContourPair, Bridge)> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if sigma == 0 {
        return Err(Error::InvalidParameter("sigma must be at least 1".into()));
    }
    let cp = sample_contour_pair(n, sigma, rng);
    let b = sample_bridge_uniform(sigma, rng);
    let q = build_from_contour(&cp, &b)?;
    Ok((q, cp, b))
}

/// A finite piece of the half-plane map built from a forest and bridge window.
#[derive(Clone, Debug)]
pub struct UihpqWindow {
    pub map: PlanarMap,
    /// Vertex `(0)`, the root of tree 0.
    pub origin_vertex: u32,
    /// Every vertex within this graph distance of the root vertex, and every
    /// edge between two such vertices, is present in `map` with its true
    /// neighborhood order.
    pub valid_radius: usize,
    /// Label of every vertex.
    pub vertex_labels: Vec<i64>,
    /// Parent in the forest, [`crate::encoding::tree::NIL`] for tree roots.
    pub parent: Vec<u32>,
    pub depth: Vec<u32>,
    /// Tree of each vertex, counted from the leftmost tree of the window.
    pub tree: Vec<u32>,
    /// Root vertex of each tree, left to right.
    pub roots: Vec<u32>,
}

/// The windowed half-plane mapping. Arcs whose successor lies beyond the
/// window are dropped; `valid_radius` certifies how far from the root the
/// window agrees with the infinite map.
pub fn build_uihpq_window(f: &ForestWindow, b: &BridgeWindow) -> Result<UihpqWindow> {
    let k = f.radius;
    if b.radius != k {
        return Err(Error::LengthMismatch { expected: k, found: b.radius });
    }
    let mut labels: Vec<i64> = Vec::new();
    let mut vertex: Vec<u32> = Vec::new();
    let mut vertex_labels: Vec<i64> = Vec::new();
    let (mut parent, mut depth, mut tree, mut roots) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let mut origin = 0usize;
    let mut origin_vertex = 0u32;
    for i in -(k as i64)..=(k as i64) {
        if i == 0 {
            origin = labels.len();
            origin_vertex = vertex_labels.len() as u32;
        }
        let t = f.tree(i);
        let tl = f.tree_labels(i);
        let shift = b.get(i);
        let base = vertex_labels.len() as u32;
        vertex_labels.extend(tl.iter().map(|&l| l + shift));
        roots.push(base);
        for v in 0..t.num_vertices() as u32 {
            let p = t.parent(v);
            parent.push(p.map_or(crate::encoding::tree::NIL, |p| base + p));
            depth.push(p.map_or(0, |p| depth[(base + p) as usize] + 1));
            tree.push((i + k as i64) as u32);
        }
        for v in t.contour() {
            labels.push(tl[v as usize] + shift);
            vertex.push(base + v);
        }
    }
    let total = labels.len();
    let succ = forward_successors(&labels);

    let mut edges = Vec::new();
    let mut edge_of_index = vec![u32::MAX; total];
    for i in 0..total {
        if succ[i] != NO_SUCC {
            edge_of_index[i] = edges.len() as u32;
            edges.push([vertex[i], vertex[succ[i] as usize]]);
        }
    }
    let incoming = corner_rotations(&succ, false);
    let mut rotations: Vec<Vec<u32>> = vec![Vec::new(); vertex_labels.len()];
    for c in 0..total {
        let r = &mut rotations[vertex[c] as usize];
        r.extend(incoming[c].iter().map(|&j| 2 * edge_of_index[j as usize] + 1));
        if edge_of_index[c] != u32::MAX {
            r.push(2 * edge_of_index[c]);
        }
    }

    let partial = b.partial();
    let e = -partial;
    let root = if partial > b.b_minus_one() - 1 {
        let idx = (origin..total)
            .find(|&j| labels[j] == partial)
            .ok_or_else(|| Error::WindowTooSmall("root vertex lies beyond the window".into()))?;
        if edge_of_index[idx] == u32::MAX {
            return Err(Error::WindowTooSmall("root edge leaves the window".into()));
        }
        Some(2 * edge_of_index[idx])
    } else if origin == 0 {
        None
    } else {
        let j = origin - 1;
        if edge_of_index[j] == u32::MAX {
            return Err(Error::WindowTooSmall("root edge leaves the window".into()));
        }
        Some(2 * edge_of_index[j] + 1)
    };

    let left_min = (-(k as i64)..=0).map(|i| b.get(i)).min().unwrap();
    let right_min = (0..=(k as i64)).map(|i| b.get(i)).min().unwrap();
    let m = -left_min.max(right_min);
    let valid_radius = if root.is_some() && 5 * e < m { ((m - 5 * e - 1) / 5) as usize } else { 0 };

    let map = PlanarMap::from_rotations(vertex_labels.len(), edges, &rotations, root);
    Ok(UihpqWindow { map, origin_vertex, valid_radius, vertex_labels, parent, depth, tree, roots })
}

/// Smallest `k > i` with `labels[k] = labels[i] - 1`, or [`NO_SUCC`].
fn forward_successors(labels: &[i64]) -> Vec<u32> {
    let n = labels.len();
    let mut out = vec![NO_SUCC; n];
    if n == 0 {
        return out;
    }
    let lo = *labels.iter().min().unwrap();
    let hi = *labels.iter().max().unwrap();
    let mut next = vec![NO_SUCC; (hi - lo + 2) as usize];
    for p in (0..n).rev() {
        let slot = (labels[p] - lo + 1) as usize;
        out[p] = next[slot - 1];
        next[slot] = p as u32;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::{enumerate_bridges, enumerate_forests, PlaneTree};
    use crate::rng::RngConfig;

    #[test]
    fn successor_examples() {
        assert_eq!(successor(&[0, -1, 0], 0), Some(1));
        assert_eq!(successor(&[0, -1, 0], 1), None);
        assert_eq!(successor(&[0, -1, 0], 2), Some(1));
        assert_eq!(successor(&[-1, 0, 1], 2), Some(1));
    }

    #[test]
    fn fast_successors_match_scan() {
        let mut rng = RngConfig::new(1).rng();
        for _ in 0..300 {
            let (_, cp, b) = sample_quadrangulation(rng.random_range(1..30), rng.random_range(1..8), &mut rng).unwrap();
            let lf = label_function(&cp, &b).unwrap();
            let l = &lf.values[..cp.len()];
            let fast = successors(l);
            for i in 0..l.len() {
                assert_eq!(fast[i], successor(l, i).map_or(NO_SUCC, |k| k as u32));
            }
        }
    }

    #[test]
    fn small_maps_are_quadrangulations() {
        for (n, s) in [(0, 1), (0, 2), (1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (2, 3)] {
            for f in enumerate_forests(n, s) {
                for b in enumerate_bridges(s) {
                    let q = build_quadrangulation(&f, &b).unwrap();
                    assert_eq!(q.map.num_edges(), 2 * n + s);
                    assert_eq!(q.num_vertices(), n + s + 1);
                    if n > 0 {
                        q.check_structure().unwrap_or_else(|e| panic!("{e}: {f:?} {b:?}"));
                    }
                }
            }
        }
    }

    #[test]
    fn sampled_maps_are_quadrangulations() {
        let mut rng = RngConfig::new(2).rng();
        for _ in 0..200 {
            let (q, _, _) = sample_quadrangulation(rng.random_range(1..200), rng.random_range(1..40), &mut rng).unwrap();
            q.check_structure().unwrap();
        }
    }

    #[test]
    fn n_zero_rejected_by_sampler() {
        let mut rng = RngConfig::new(3).rng();
        assert!(sample_quadrangulation(0, 3, &mut rng).is_err());
    }

    #[test]
    fn window_k0_has_radius_zero() {
        let mut rng = RngConfig::new(4).rng();
        for _ in 0..50 {
            let f = crate::samplers::sample_infinite_forest_window(0, &mut rng);
            let b = crate::samplers::sample_infinite_bridge_window(0, &mut rng);
            match build_uihpq_window(&f, &b) {
                Ok(w) => assert_eq!(w.valid_radius, 0),
                Err(e) => assert!(matches!(e, Error::WindowTooSmall(_))),
            }
        }
    }

    #[test]
    fn nested_windows_agree_within_radius() {
        use crate::metrics::{ball_code, combinatorial_ball};
        let mut rng = RngConfig::new(5).rng();
        let mut certified = 0;
        for _ in 0..300 {
            let Ok(f) = crate::samplers::sample_infinite_forest_window_bounded(60, 20_000, &mut rng) else { continue };
            let b = crate::samplers::sample_infinite_bridge_window(60, &mut rng);
            let (Ok(big), Ok(small)) = (build_uihpq_window(&f, &b), build_uihpq_window(&f.restrict(30), &b.restrict(30))) else {
                continue;
            };
            assert!(small.valid_radius <= big.valid_radius);
            for r in 0..=small.valid_radius as u32 {
                let a = ball_code(&combinatorial_ball(&big.map, r).0);
                let c = ball_code(&combinatorial_ball(&small.map, r).0);
                assert_eq!(a, c, "radius {r} of {}", small.valid_radius);
            }
            certified += (small.valid_radius > 0) as usize;
        }
        assert!(certified > 5, "only {certified} windows certified a positive radius");
    }

    #[test]
    fn bijection_one_one() {
        use crate::metrics::{ball_code, pointed_code};
        use std::collections::{HashMap, HashSet};
        let mut pointed = HashSet::new();
        let mut rooted: HashMap<Vec<u32>, usize> = HashMap::new();
        for f in enumerate_forests(1, 1) {
            for b in enumerate_bridges(1) {
                let q = build_quadrangulation(&f, &b).unwrap();
                pointed.insert(pointed_code(&q.map, q.pointed));
                *rooted.entry(ball_code(&q.map)).or_default() += 1;
            }
        }
        assert_eq!(pointed.len(), 6);
        assert_eq!(rooted.len(), 2);
        assert!(rooted.values().all(|&c| c == 3));
    }

    #[test]
    fn distance_identities() {
        use crate::metrics::bfs_distances;
        let mut rng = RngConfig::new(6).rng();
        for _ in 0..200 {
            let (q, _, b) = sample_quadrangulation(rng.random_range(1..200), rng.random_range(1..30), &mut rng).unwrap();
            let d = bfs_distances(&q.map, q.pointed);
            let min = q.labels.values[..q.labels.values.len() - 1].iter().min().unwrap();
            for v in 0..q.pointed {
                assert_eq!(d[v as usize] as i64, q.vertex_labels[v as usize] - min + 1);
            }
            let d0 = bfs_distances(&q.map, q.root_vertex());
            assert_eq!(d0[0] as i64, -b.end());
        }
    }

    #[test]
    fn one_face_example() {
        // single edge tree with label 1, zero bridge
        let f = WellLabeledForest::new(vec![PlaneTree::from_steps([true, false]).unwrap()], vec![vec![0, 1]]).unwrap();
        let q = build_quadrangulation(&f, &Bridge::zero(1)).unwrap();
        assert_eq!(q.num_vertices(), 3);
        assert_eq!(q.pointed, 2);
        q.check_structure().unwrap();
    }
}
