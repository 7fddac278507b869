//! Exact diameter by the bounding-diameters method: every BFS tightens lower
//! and upper bounds on all eccentricities, and vertices whose upper bound
//! cannot beat the best known eccentricity are dropped. On map-like graphs a
//! handful of BFS runs suffices.

use super::bfs::bfs_distances;
use crate::bdg::PlanarMap;

pub fn diameter(map: &PlanarMap) -> u32 {
    let n = map.num_vertices;
    if n <= 1 {
        return 0;
    }
    let mut lower = vec![0u32; n];
    let mut upper = vec![u32::MAX; n];
    let mut candidates: Vec<u32> = (0..n as u32).collect();
    let mut d_lo = 0u32;
    let mut pick_high = true;
    while !candidates.is_empty() {
        // alternate between the loosest upper bound and the smallest lower bound
        let v = if pick_high {
            *candidates.iter().max_by_key(|&&w| (upper[w as usize], map.degree(w))).unwrap()
        } else {
            *candidates.iter().min_by_key(|&&w| (lower[w as usize], u32::MAX - map.degree(w) as u32)).unwrap()
        };
        pick_high = !pick_high;
        let dist = bfs_distances(map, v);
        let ecc = *dist.iter().max().unwrap();
        d_lo = d_lo.max(ecc);
        lower[v as usize] = ecc;
        upper[v as usize] = ecc;
        for &w in &candidates {
            let (w, d) = (w as usize, dist[w as usize]);
            lower[w] = lower[w].max(d.max(ecc - d));
            upper[w] = upper[w].min(ecc + d);
            d_lo = d_lo.max(lower[w]);
        }
        candidates.retain(|&w| upper[w as usize] > d_lo);
    }
    d_lo
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bdg::sample_quadrangulation;
    use crate::rng::RngConfig;
    use rand::Rng;

    #[test]
    fn matches_all_pairs_bfs() {
        let mut rng = RngConfig::new(1).rng();
        for _ in 0..60 {
            let (q, _, _) = sample_quadrangulation(rng.random_range(1..150), rng.random_range(1..30), &mut rng).unwrap();
            let brute = (0..q.num_vertices() as u32).map(|v| *bfs_distances(&q.map, v).iter().max().unwrap()).max().unwrap();
            assert_eq!(diameter(&q.map), brute);
        }
    }
}
