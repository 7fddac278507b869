//! Breadth-first search on planar maps.

use crate::bdg::PlanarMap;
use std::collections::VecDeque;

pub const UNREACHED: u32 = u32::MAX;

/// Graph distances from `src` to every vertex.
pub fn bfs_distances(map: &PlanarMap, src: u32) -> Vec<u32> {
    let mut dist = vec![UNREACHED; map.num_vertices];
    let mut queue = VecDeque::with_capacity(map.num_vertices);
    dist[src as usize] = 0;
    queue.push_back(src);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v as usize] + 1;
        for w in map.neighbors(v) {
            if dist[w as usize] == UNREACHED {
                dist[w as usize] = dv;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Distances from `src`, exploring no further than `radius`.
pub fn bfs_bounded(map: &PlanarMap, src: u32, radius: u32) -> Vec<u32> {
    let mut dist = vec![UNREACHED; map.num_vertices];
    let mut queue = VecDeque::new();
    dist[src as usize] = 0;
    queue.push_back(src);
    while let Some(v) = queue.pop_front() {
        if dist[v as usize] == radius {
            continue;
        }
        let dv = dist[v as usize] + 1;
        for w in map.neighbors(v) {
            if dist[w as usize] == UNREACHED {
                dist[w as usize] = dv;
                queue.push_back(w);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> PlanarMap {
        PlanarMap::from_rotations(3, vec![[0, 1], [1, 2]], &[vec![0], vec![1, 2], vec![3]], Some(0))
    }

    #[test]
    fn path_distances() {
        let m = path3();
        assert_eq!(bfs_distances(&m, 0), vec![0, 1, 2]);
        assert_eq!(bfs_distances(&m, 1), vec![1, 0, 1]);
        assert_eq!(bfs_bounded(&m, 0, 1), vec![0, 1, UNREACHED]);
    }
}
