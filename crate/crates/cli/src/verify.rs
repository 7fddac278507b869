//! Invariant suites run by `verify`. Each check counts the cases it looked
//! at and the ones that failed; any failure makes the command exit with 1.

use boundary_maps::bdg::{build_quadrangulation, sample_quadrangulation};
use boundary_maps::continuum::{cactus_disk_bound, grid_metric_d, lattice_glue_eps, pitman_walk, sample_bd};
use boundary_maps::encoding::count::{count_bridges, count_forests};
use boundary_maps::encoding::{enumerate_bridges, enumerate_forests};
use boundary_maps::metrics::bounds::check_sandwich;
use boundary_maps::metrics::{ball_code, bfs_distances, pointed_code};
use boundary_maps::statlab::{bridge_endpoint_pmf, kemperman_count};
use boundary_maps::RngConfig;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Fast,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub checked: u64,
    pub violations: u64,
}

impl CheckResult {
    fn new(check: &str, checked: u64, violations: u64) -> Self {
        Self { check: check.into(), checked, violations }
    }
}

/// Sizes whose full domain is enumerated.
fn tiny_sizes(level: Level) -> Vec<(usize, usize)> {
    match level {
        Level::Fast => vec![(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)],
        Level::Full => (1..=5).flat_map(|n| (1..=5).map(move |s| (n, s))).filter(|&(n, s)| n + s <= 6).collect(),
    }
}

fn bijection(level: Level) -> CheckResult {
    let mut checked = 0;
    let mut bad = 0;
    for (n, sigma) in tiny_sizes(level) {
        let forests = enumerate_forests(n, sigma);
        let bridges = enumerate_bridges(sigma);
        let domain = forests.len() * bridges.len();
        let mut pointed = HashSet::new();
        let mut rooted = std::collections::HashMap::new();
        for f in &forests {
            for b in &bridges {
                let q = build_quadrangulation(f, b).unwrap();
                bad += q.check_structure().is_err() as u64;
                pointed.insert(pointed_code(&q.map, q.pointed));
                rooted.insert(ball_code(&q.map), q.num_vertices());
            }
        }
        let formula = count_forests(n as u64, sigma as u64) * count_bridges(sigma as u64);
        checked += domain as u64;
        bad += (formula != domain.into()) as u64;
        bad += (pointed.len() != domain) as u64;
        bad += (rooted.values().sum::<usize>() != domain) as u64;
    }
    CheckResult::new("bijection", checked, bad)
}

fn bridge_endpoint(level: Level) -> CheckResult {
    let top = if level == Level::Fast { 6 } else { 8 };
    let mut checked = 0;
    let mut bad = 0;
    for sigma in 1..=top {
        let bridges = enumerate_bridges(sigma);
        for k in 0..=sigma as u64 {
            let count = bridges.iter().filter(|b| -b.end() == k as i64).count() as f64;
            checked += 1;
            bad += ((count / bridges.len() as f64 - bridge_endpoint_pmf(sigma as u64, k)).abs() > 1e-12) as u64;
        }
    }
    CheckResult::new("bridge_endpoint_law", checked, bad)
}

fn kemperman(level: Level) -> CheckResult {
    let k_max: usize = if level == Level::Fast { 14 } else { 20 };
    let mut counts = vec![vec![0u64; k_max + 1]; k_max + 1];
    for path in 0u32..1 << k_max {
        let (mut s, mut low) = (0i64, 0i64);
        for k in 1..=k_max {
            s += if path >> (k - 1) & 1 == 1 { 1 } else { -1 };
            if s < low {
                low = s;
                counts[(-s) as usize][k] += 1;
            }
        }
    }
    let mut checked = 0;
    let mut bad = 0;
    for j in 1..=k_max {
        for k in 1..=k_max {
            checked += 1;
            bad += (kemperman_count(-(j as i64), k as u64) != (counts[j][k] >> (k_max - k)).into()) as u64;
        }
    }
    CheckResult::new("kemperman_enumeration", checked, bad)
}

fn distance_identities(level: Level, seed: u64) -> CheckResult {
    let maps = if level == Level::Fast { 500 } else { 10_000 };
    let base = RngConfig::new(seed).stream(1);
    let (checked, bad) = (0..maps as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = base.stream(r).rng();
            let (q, _, b) = sample_quadrangulation(rng.random_range(1..=200), rng.random_range(1..=40), &mut rng).unwrap();
            let d = bfs_distances(&q.map, q.pointed);
            let min = q.vertex_labels[..q.pointed as usize].iter().min().unwrap();
            let mut bad =
                (0..q.pointed).filter(|&v| d[v as usize] as i64 != q.vertex_labels[v as usize] - min + 1).count() as u64;
            bad += (bfs_distances(&q.map, q.root_vertex())[q.vertex_zero() as usize] as i64 != -b.end()) as u64;
            bad += q.check_structure().is_err() as u64;
            (q.pointed as u64 + 1, bad)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    CheckResult::new("distance_identities", checked, bad)
}

fn bound_sandwich(level: Level, seed: u64) -> CheckResult {
    let (maps, sizes): (u64, &[usize]) =
        if level == Level::Fast { (20, &[10, 100, 1000]) } else { (200, &[10, 100, 1000, 10_000]) };
    let base = RngConfig::new(seed).stream(2);
    let (checked, bad) = (0..maps)
        .into_par_iter()
        .map(|r| {
            let mut rng = base.stream(r).rng();
            let n = sizes[r as usize % sizes.len()];
            let sigma = rng.random_range(1..=2 * (n as f64).sqrt() as usize);
            let (q, _, _) = sample_quadrangulation(n, sigma, &mut rng).unwrap();
            let nv = q.pointed;
            let pairs: Vec<(u32, u32)> = (0..10)
                .flat_map(|k| {
                    let u = if k == 0 { 0 } else { rng.random_range(0..nv) };
                    (0..50).map(|_| (u, rng.random_range(0..nv))).collect::<Vec<_>>()
                })
                .collect();
            let [lo, hi] = check_sandwich(&q, &pairs);
            (lo.checked + hi.checked, lo.violations + hi.violations)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    CheckResult::new("bound_sandwich", checked, bad)
}

fn pitman(level: Level, seed: u64) -> CheckResult {
    let (walks, len) = if level == Level::Fast { (100u64, 10_000) } else { (10_000, 10_000) };
    let base = RngConfig::new(seed).stream(3);
    let (checked, bad) = (0..walks)
        .into_par_iter()
        .map(|r| {
            let mut rng = base.stream(r).rng();
            let mut y = vec![0i64; len + 1];
            for i in 1..=len {
                y[i] = y[i - 1] + if rng.random::<bool>() { 1 } else { -1 };
            }
            let p = pitman_walk(&y);
            let mut pre = y.clone();
            for i in 1..pre.len() {
                pre[i] = pre[i].min(pre[i - 1]);
            }
            // last visit of each level, to know whether y returns to its running minimum
            let lo = *pre.last().unwrap();
            let mut last = vec![0usize; (y.iter().max().unwrap() - lo + 1) as usize];
            for (i, &v) in y.iter().enumerate() {
                last[(v - lo) as usize] = i;
            }
            let mut tail = i64::MAX;
            let mut bad = 0u64;
            for i in (0..y.len()).rev() {
                tail = tail.min(p[i]);
                let ok = if last[(pre[i] - lo) as usize] >= i { tail == -pre[i] } else { tail > -pre[i] };
                bad += !ok as u64;
            }
            (y.len() as u64, bad)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    CheckResult::new("pitman_identity", checked, bad)
}

fn grid_metric(level: Level, seed: u64) -> CheckResult {
    let (samples, m) = if level == Level::Fast { (2u64, 200) } else { (5, 600) };
    let mut checked = 0;
    let mut bad = 0;
    for r in 0..samples {
        let mut rng = RngConfig::new(seed).stream(4 + r).rng();
        let s = sample_bd(1.0, 1.0, m, &mut rng).unwrap();
        let d = grid_metric_d(&s.contour.x, &s.labels, lattice_glue_eps(&s.contour.x)).unwrap();
        checked += 1;
        bad += d.check_pseudometric(1e-9).is_err() as u64;
        for i in 0..m {
            for j in i + 1..m {
                checked += 1;
                bad += (cactus_disk_bound(&s.contour.x, &s.labels, i, j) > d.get(i, j) + 1e-9) as u64;
            }
        }
    }
    CheckResult::new("grid_metric_pseudometric_and_cactus", checked, bad)
}

/// Runs every suite at the given level.
pub fn run(level: Level, seed: u64) -> Vec<CheckResult> {
    vec![
        bijection(level),
        bridge_endpoint(level),
        kemperman(level),
        distance_identities(level, seed),
        bound_sandwich(level, seed),
        pitman(level, seed),
        grid_metric(level, seed),
    ]
}
