//! Grid generators for the driving processes: Brownian motion with drift,
//! Bessel-3 as a Pitman transform, first-passage bridges, and Brownian
//! bridges or two-sided motions evaluated at a set of levels.

use super::path::PathGrid;
use crate::error::{Error, Result};
use crate::samplers::sample_conditioned_walk;
use rand::Rng;
use rand_distr::StandardNormal;

/// A Brownian path on a grid together with the exact minimum over each gap
/// `[t_i, t_{i+1}]`, drawn from its conditional law given the endpoints.
#[derive(Clone, Debug)]
pub struct BmGrid {
    pub path: PathGrid,
    pub gap_min: Vec<f64>,
}

impl BmGrid {
    /// Exact running minimum `min_{[0,t_i]}` at every grid point.
    pub fn running_min(&self) -> Vec<f64> {
        let v = &self.path.values;
        let mut out = Vec::with_capacity(v.len());
        let mut m = v[0];
        out.push(m);
        for (i, g) in self.gap_min.iter().enumerate() {
            m = m.min(*g).min(v[i + 1]);
            out.push(m);
        }
        out
    }

    /// Index of the first grid point at or after the first time the path
    /// goes below `level`, if that happens on the grid.
    pub fn first_passage_index(&self, level: f64) -> Option<usize> {
        if self.path.values[0] <= level {
            return Some(0);
        }
        self.gap_min.iter().position(|&g| g <= level).map(|i| i + 1)
    }
}

/// Minimum of a Brownian bridge from `a` to `b` over a time `h`.
fn bridge_min<R: Rng + ?Sized>(a: f64, b: f64, h: f64, rng: &mut R) -> f64 {
    let u: f64 = 1.0 - rng.random::<f64>();
    0.5 * (a + b - ((b - a).powi(2) - 2.0 * h * u.ln()).sqrt())
}

/// Standard Brownian motion with drift `drift` on `[0, t1]` at `m` grid points.
pub fn sample_bm<R: Rng + ?Sized>(t1: f64, m: usize, drift: f64, rng: &mut R) -> BmGrid {
    assert!(m >= 2 && t1 > 0.0);
    let h = t1 / (m - 1) as f64;
    let sd = h.sqrt();
    let mut values = Vec::with_capacity(m);
    let mut gap_min = Vec::with_capacity(m - 1);
    let mut x = 0.0;
    values.push(x);
    for _ in 1..m {
        let y = x + drift * h + sd * rng.sample::<f64, _>(StandardNormal);
        // the bridge law given both endpoints does not depend on the drift
        gap_min.push(bridge_min(x, y, h, rng));
        values.push(y);
        x = y;
    }
    let mut path = PathGrid::new(0.0, t1, values);
    path.inf_after = f64::NEG_INFINITY;
    BmGrid { path, gap_min }
}

/// `Π(B)_t = B_t - 2 min_{[0,t]} B` computed with the exact running minimum.
/// The tail infimum beyond the grid is `-min_{[0,t1]} B`.
pub fn pitman_exact(bm: &BmGrid) -> PathGrid {
    let mins = bm.running_min();
    let values = bm.path.values.iter().zip(&mins).map(|(v, m)| v - 2.0 * m).collect();
    let mut p = bm.path.with_values(values);
    p.inf_before = f64::INFINITY;
    p.inf_after = -mins.last().unwrap();
    p
}

/// A three-dimensional Bessel process from 0, as the Pitman transform of a
/// Brownian motion (with `drift = -θ` this is the Bessel-3 process with
/// drift `θ`).
pub fn sample_bessel3<R: Rng + ?Sized>(t1: f64, m: usize, drift: f64, rng: &mut R) -> PathGrid {
    pitman_exact(&sample_bm(t1, m, drift, rng))
}

/// Number of walk steps and the lattice spacing used for a first-passage
/// bridge of duration `T` to `-σ` on `m` grid points: `m - 1` steps and a
/// walk target `σ_d` of the right parity, near `σ / sqrt(T/(m-1))`.
pub fn fp_bridge_lattice(t: f64, sigma: f64, m: usize) -> (usize, usize, f64) {
    let steps = m - 1;
    let mut sd = ((sigma / (t / steps as f64).sqrt()).round().max(1.0) as usize).min(steps);
    if (steps - sd) % 2 == 1 {
        sd = if sd > 1 { sd - 1 } else { sd + 1 };
    }
    (steps, sd, sigma / sd as f64)
}

/// A first-passage Brownian bridge from 0 to `-σ` of duration `T`, as a
/// uniform ±1 walk of `m - 1` steps that first hits `-σ_d` at its last step,
/// rescaled so that the endpoint is exactly `-σ`.
pub fn sample_fp_bridge<R: Rng + ?Sized>(t: f64, sigma: f64, m: usize, rng: &mut R) -> Result<PathGrid> {
    if !(t > 0.0 && sigma > 0.0) || m < 3 {
        return Err(Error::InvalidParameter(format!("first-passage bridge needs T, σ > 0 and m ≥ 3 (T={t}, σ={sigma}, m={m})")));
    }
    let (steps, sd, h) = fp_bridge_lattice(t, sigma, m);
    let walk = sample_conditioned_walk((steps - sd) / 2, sd, rng);
    let values = walk.iter().map(|&w| w as f64 * h).collect();
    Ok(PathGrid::new(0.0, t, values))
}

/// Sorted distinct levels with, for each input, the index of its level.
fn distinct_levels(levels: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut sorted: Vec<f64> = levels.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    sorted.dedup();
    let idx = levels.iter().map(|x| sorted.partition_point(|y| y < x)).collect();
    (sorted, idx)
}

/// A standard Brownian bridge of duration `duration` (from 0 to 0) evaluated
/// at each of `levels`, which must lie in `[0, duration]`. Equal levels get
/// equal values.
pub fn sample_brownian_bridge_at<R: Rng + ?Sized>(levels: &[f64], duration: f64, rng: &mut R) -> Result<Vec<f64>> {
    if let Some(x) = levels.iter().find(|&&x| !(-1e-12..=duration + 1e-12).contains(&x)) {
        return Err(Error::InvalidParameter(format!("bridge level {x} outside [0, {duration}]")));
    }
    let (sorted, idx) = distinct_levels(levels);
    let mut vals = Vec::with_capacity(sorted.len());
    let (mut x, mut g) = (0.0f64, 0.0f64);
    for &y in &sorted {
        let y = y.clamp(0.0, duration);
        let rest = duration - x;
        let v = if rest <= 0.0 || y <= x {
            g
        } else {
            let mean = g * (duration - y) / rest;
            let var = (y - x) * (duration - y) / rest;
            mean + var.max(0.0).sqrt() * rng.sample::<f64, _>(StandardNormal)
        };
        vals.push(v);
        x = y;
        g = v;
    }
    Ok(idx.into_iter().map(|i| vals[i]).collect())
}

/// A two-sided standard Brownian motion with value 0 at level 0, evaluated
/// at each of `levels`.
pub fn sample_two_sided_bm_at<R: Rng + ?Sized>(levels: &[f64], rng: &mut R) -> Vec<f64> {
    let (sorted, idx) = distinct_levels(levels);
    let mut vals = vec![0.0; sorted.len()];
    let split = sorted.partition_point(|&y| y < 0.0);
    let (mut x, mut g) = (0.0f64, 0.0f64);
    for i in split..sorted.len() {
        g += (sorted[i] - x).sqrt() * rng.sample::<f64, _>(StandardNormal);
        x = sorted[i];
        vals[i] = g;
    }
    let (mut x, mut g) = (0.0f64, 0.0f64);
    for i in (0..split).rev() {
        g += (x - sorted[i]).sqrt() * rng.sample::<f64, _>(StandardNormal);
        x = sorted[i];
        vals[i] = g;
    }
    idx.into_iter().map(|i| vals[i]).collect()
}
