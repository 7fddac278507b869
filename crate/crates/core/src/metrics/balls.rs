//! Combinatorial balls, canonical codes of rooted maps and the local distance.

use super::bfs::{bfs_distances, UNREACHED};
use crate::bdg::PlanarMap;
use std::collections::VecDeque;

/// `Ball_r(m)`: vertices within distance `r` of the root vertex together with
/// the edges between them, keeping the cyclic order of the surviving darts.
/// Returns the submap and the original id of each of its vertices.
pub fn combinatorial_ball(map: &PlanarMap, r: u32) -> (PlanarMap, Vec<u32>) {
    let Some(root) = map.root else {
        return (PlanarMap::from_rotations(1, vec![], &[vec![]], None), vec![0]);
    };
    let dist = bfs_distances(map, map.tail(root));
    ball_from_distances(map, &dist, r)
}

fn ball_from_distances(map: &PlanarMap, dist: &[u32], r: u32) -> (PlanarMap, Vec<u32>) {
    let root = map.root.expect("rooted");
    let inside = |v: u32| dist[v as usize] != UNREACHED && dist[v as usize] <= r;
    let mut new_id = vec![u32::MAX; map.num_vertices];
    let mut old_id = Vec::new();
    for v in 0..map.num_vertices as u32 {
        if inside(v) {
            new_id[v as usize] = old_id.len() as u32;
            old_id.push(v);
        }
    }
    let mut new_edge = vec![u32::MAX; map.num_edges()];
    let mut edges = Vec::new();
    for (e, &[a, b]) in map.edges.iter().enumerate() {
        if inside(a) && inside(b) {
            new_edge[e] = edges.len() as u32;
            edges.push([new_id[a as usize], new_id[b as usize]]);
        }
    }
    let rotations: Vec<Vec<u32>> = old_id
        .iter()
        .map(|&v| {
            map.darts(v)
                .iter()
                .filter(|&&d| new_edge[(d >> 1) as usize] != u32::MAX)
                .map(|&d| 2 * new_edge[(d >> 1) as usize] + (d & 1))
                .collect()
        })
        .collect();
    // With r = 0 the root edge survives only if it is a loop, which never
    // happens in a quadrangulation; the ball is then a bare vertex.
    let new_root = (new_edge[(root >> 1) as usize] != u32::MAX).then(|| 2 * new_edge[(root >> 1) as usize] + (root & 1));
    let ball = PlanarMap::from_rotations(old_id.len(), edges, &rotations, new_root);
    (ball, old_id)
}

/// Canonical code of a rooted map: darts are numbered in the order a
/// breadth-first search from the root dart discovers them through the
/// rotation and reversal permutations, and the code lists, for each dart in
/// that order, the numbers of its rotation successor and its reversal. Two
/// connected rooted maps have equal codes exactly when they are isomorphic.
pub fn ball_code(map: &PlanarMap) -> Vec<u32> {
    canonical_numbering(map).1
}

fn canonical_numbering(map: &PlanarMap) -> (Vec<u32>, Vec<u32>) {
    let nd = 2 * map.num_edges();
    let mut num = vec![u32::MAX; nd];
    let Some(root) = map.root else {
        return (num, vec![]);
    };
    let mut order = Vec::with_capacity(nd);
    let mut queue = VecDeque::with_capacity(nd);
    num[root as usize] = 0;
    order.push(root);
    queue.push_back(root);
    let mut code = Vec::with_capacity(2 * nd);
    while let Some(d) = queue.pop_front() {
        for next in [map.next_around(d), d ^ 1] {
            if num[next as usize] == u32::MAX {
                num[next as usize] = order.len() as u32;
                order.push(next);
                queue.push_back(next);
            }
            code.push(num[next as usize]);
        }
    }
    (num, code)
}

/// Canonical code of a rooted map with a distinguished vertex: the rooted
/// code followed by the smallest dart number at that vertex.
pub fn pointed_code(map: &PlanarMap, pointed: u32) -> Vec<u32> {
    let (num, mut code) = canonical_numbering(map);
    let mark = map.darts(pointed).iter().map(|&d| num[d as usize]).min().unwrap_or(u32::MAX);
    code.push(mark);
    code
}

/// Largest `r` with `Ball_r(a) = Ball_r(b)`, or `None` when the balls agree
/// for every radius.
pub fn ball_agreement_radius(a: &PlanarMap, b: &PlanarMap) -> Option<u32> {
    let (Some(ra), Some(rb)) = (a.root, b.root) else {
        // a bare vertex only matches another bare vertex
        return if a.root.is_none() && b.root.is_none() { None } else { Some(0) };
    };
    let da = bfs_distances(a, a.tail(ra));
    let db = bfs_distances(b, b.tail(rb));
    let ecc = |d: &[u32]| d.iter().filter(|&&x| x != UNREACHED).max().copied().unwrap_or(0);
    let top = ecc(&da).max(ecc(&db));
    for r in 1..=top {
        let ca = ball_code(&ball_from_distances(a, &da, r).0);
        let cb = ball_code(&ball_from_distances(b, &db, r).0);
        if ca != cb {
            return Some(r - 1);
        }
    }
    None
}

/// The local distance `1 / (1 + sup{r : Ball_r(a) = Ball_r(b)})`, equal to 0
/// when all balls agree.
pub fn d_map(a: &PlanarMap, b: &PlanarMap) -> f64 {
    match ball_agreement_radius(a, b) {
        // the sup over real radii below the first disagreement r0 is r0
        Some(r) => 1.0 / (r as f64 + 2.0),
        None => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bdg::sample_quadrangulation;
    use crate::rng::RngConfig;

    fn path(n: u32) -> PlanarMap {
        let edges: Vec<[u32; 2]> = (0..n - 1).map(|i| [i, i + 1]).collect();
        let mut rot = vec![vec![]; n as usize];
        for e in 0..n - 1 {
            rot[e as usize].push(2 * e);
            rot[e as usize + 1].insert(0, 2 * e + 1);
        }
        PlanarMap::from_rotations(n as usize, edges, &rot, Some(0))
    }

    fn star(k: u32) -> PlanarMap {
        let edges: Vec<[u32; 2]> = (1..=k).map(|i| [0, i]).collect();
        let mut rot = vec![(0..k).map(|e| 2 * e).collect::<Vec<_>>()];
        rot.extend((0..k).map(|e| vec![2 * e + 1]));
        PlanarMap::from_rotations(k as usize + 1, edges, &rot, Some(0))
    }

    #[test]
    fn identical_maps_at_distance_zero() {
        let mut rng = RngConfig::new(1).rng();
        let (q, _, _) = sample_quadrangulation(30, 4, &mut rng).unwrap();
        assert_eq!(d_map(&q.map, &q.map.clone()), 0.0);
    }

    #[test]
    fn differ_at_first_neighbors() {
        // both roots have a single incident edge in Ball_0, but Ball_1 differs
        assert_eq!(d_map(&path(3), &star(2)), 0.5);
        assert_eq!(ball_agreement_radius(&path(3), &path(4)), Some(2));
        assert_eq!(d_map(&path(3), &path(4)), 0.25);
    }

    #[test]
    fn balls_nested_and_complete() {
        let mut rng = RngConfig::new(2).rng();
        let (q, _, _) = sample_quadrangulation(200, 10, &mut rng).unwrap();
        let mut prev = 1;
        for r in 0..40 {
            let (b, ids) = combinatorial_ball(&q.map, r);
            assert!(ids.len() >= prev);
            prev = ids.len();
            assert_eq!(b.num_vertices, ids.len());
        }
        let (b, _) = combinatorial_ball(&q.map, 10_000);
        assert_eq!(ball_code(&b), ball_code(&q.map));
        assert_eq!(combinatorial_ball(&q.map, 0).0.num_vertices, 1);
    }

    #[test]
    fn codes_are_relabeling_invariant() {
        let mut rng = RngConfig::new(3).rng();
        let (q, _, _) = sample_quadrangulation(40, 5, &mut rng).unwrap();
        let m = &q.map;
        // reverse vertex ids and edge ids, flip every edge's orientation
        let nv = m.num_vertices as u32;
        let ne = m.num_edges() as u32;
        let vmap = |v: u32| nv - 1 - v;
        let dmap = |d: u32| 2 * (ne - 1 - (d >> 1)) + (1 - (d & 1));
        let mut edges = vec![[0u32; 2]; ne as usize];
        for (e, &[a, b]) in m.edges.iter().enumerate() {
            edges[(ne - 1 - e as u32) as usize] = [vmap(b), vmap(a)];
        }
        let mut rot = vec![vec![]; nv as usize];
        for v in 0..nv {
            rot[vmap(v) as usize] = m.darts(v).iter().map(|&d| dmap(d)).collect();
        }
        let m2 = PlanarMap::from_rotations(nv as usize, edges, &rot, m.root.map(dmap));
        assert_eq!(ball_code(m), ball_code(&m2));
        assert_eq!(pointed_code(m, q.pointed), pointed_code(&m2, vmap(q.pointed)));
        assert_ne!(pointed_code(m, q.pointed), pointed_code(&m2, vmap(0)));
    }
}
