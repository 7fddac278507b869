//! Importance-sampling check of the change of measure between the first and
//! last trees of a uniform forest and independent Galton–Watson trees.
//!
//! For a forest with `σ` trees and `n` edges, `v` is the total size of the
//! first `s_n` and the last `s_n` trees, `s_n = ⌊(3/2) s a_n²⌋`. Under the
//! forest law `P` and the law `Q` of `2 s_n` independent critical geometric
//! Galton–Watson trees, the weight `λ = exp(2sθ - v θ² / ((9/4) a_n⁴))`
//! should satisfy `E_P[F] ≈ E_Q[λ F]` for functionals `F` of these trees.

use super::exact::{kemperman_pmf, srw_ln_pmf};
use super::experiments::tree_sizes;
use super::stats::mean_se;
use crate::error::{Error, Result};
use crate::rng::RngConfig;
use crate::samplers::sample_conditioned_walk;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// `λ_{n,s}(v) = exp(2sθ - v θ² / ((9/4) a_n⁴))`.
pub fn rn_weight(v: u64, s: f64, a_n: f64, theta: f64) -> f64 {
    if theta == 0.0 {
        return 1.0;
    }
    (2.0 * s * theta - v as f64 * theta * theta / (2.25 * a_n.powi(4))).exp()
}

/// Distance scale `a_n = 2 sqrt(θ n / (3σ))` that produces skewness `θ`.
pub fn scale_for_skewness(n: u64, sigma: u64, theta: f64) -> f64 {
    2.0 * (theta * n as f64 / (3.0 * sigma as f64)).sqrt()
}

/// `s_n = ⌊(3/2) s a_n²⌋`.
pub fn window_trees(s: f64, a_n: f64) -> u64 {
    (1.5 * s * a_n * a_n).floor() as u64
}

/// Exact likelihood ratio `P(v)/Q(v)` of one configuration of the `2 s_n`
/// trees with total size `v`:
/// `(x/y) ((2n+σ)/σ) P(S_y = x) / P(S_{2n+σ} = σ)` with `x = σ - 2 s_n`
/// and `y = 2(n - v) + σ - 2 s_n`.
pub fn exact_ratio(n: u64, sigma: u64, s_n: u64, v: u64) -> f64 {
    if v > n || 2 * s_n > sigma {
        return 0.0;
    }
    let x = sigma - 2 * s_n;
    let y = 2 * (n - v) + sigma - 2 * s_n;
    if x == 0 {
        return if y == 0 { 1.0 } else { 0.0 };
    }
    let ln = (x as f64 / y as f64).ln() + ((2 * n + sigma) as f64 / sigma as f64).ln() + srw_ln_pmf(y, x as i64)
        - srw_ln_pmf(2 * n + sigma, sigma as i64);
    ln.exp()
}

/// `Q(v)`: total size `v` of `j` independent Galton–Watson trees, through
/// the first passage of simple random walk at `-j`.
pub fn gw_total_size_pmf(j: u64, v: u64) -> f64 {
    kemperman_pmf(-(j as i64), 2 * v + j)
}

/// Total size of the first and last `s_n` trees of a uniform forest.
pub fn sample_v_forest<R: Rng + ?Sized>(n: u64, sigma: u64, s_n: u64, rng: &mut R) -> u64 {
    let w = sample_conditioned_walk(n as usize, sigma as usize, rng);
    let sizes = tree_sizes(&w);
    let k = s_n as usize;
    sizes[..k].iter().chain(&sizes[sizes.len() - k..]).map(|&x| x as u64).sum()
}

/// Total size of `j` independent Galton–Watson trees, or `None` once it
/// exceeds `cap`.
pub fn sample_v_gw<R: Rng + ?Sized>(j: u64, cap: u64, rng: &mut R) -> Option<u64> {
    let target = -(j as i64);
    let max_steps = 2 * cap + j;
    let mut s = 0i64;
    let mut steps = 0u64;
    loop {
        let bits: u64 = rng.random();
        for b in 0..64 {
            s += if bits >> b & 1 == 1 { 1 } else { -1 };
            steps += 1;
            if s == target {
                return Some((steps - j) / 2);
            }
            if steps >= max_steps {
                return None;
            }
        }
    }
}

/// Outcome of the check for `F = 1{v ≤ c}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RnReport {
    pub n: u64,
    pub sigma: u64,
    pub theta: f64,
    pub s: f64,
    pub a_n: f64,
    pub s_n: u64,
    pub c: u64,
    pub replicates: usize,
    /// Monte Carlo `E_P[F]` and its standard error.
    pub p_mean: f64,
    pub p_se: f64,
    /// Monte Carlo `E_Q[λ F]` and its standard error.
    pub q_lambda_mean: f64,
    pub q_lambda_se: f64,
    /// `(E_P[F] - E_Q[λF]) / combined SE`.
    pub z: f64,
    /// Monte Carlo `E_Q[ratio F]` with the exact finite-size ratio, and its SE.
    pub q_exact_mean: f64,
    pub q_exact_se: f64,
    pub z_exact: f64,
    /// Exact values of `E_P[F]` and `E_Q[λF]` by summation over `v`.
    pub p_exact: f64,
    pub q_lambda_exact: f64,
}

/// Runs the two-sample check at each threshold in `cs`, sharing the samples.
/// Usually `a_n = scale_for_skewness(n, σ, θ)`; with `θ = 0` the weight is
/// 1 and `a_n` only sets the window.
#[allow(clippy::too_many_arguments)]
pub fn rn_importance_check(
    n: u64,
    sigma: u64,
    theta: f64,
    s: f64,
    a_n: f64,
    cs: &[u64],
    replicates: usize,
    seed: u64,
) -> Result<Vec<RnReport>> {
    let s_n = window_trees(s, a_n);
    if s_n == 0 || 2 * s_n >= sigma || cs.is_empty() {
        return Err(Error::InvalidParameter(format!("window of {s_n} trees does not fit in σ = {sigma}")));
    }
    let cap = *cs.iter().max().unwrap();
    let base = RngConfig::new(seed);
    let p_side: Vec<u64> =
        (0..replicates).into_par_iter().map(|r| sample_v_forest(n, sigma, s_n, &mut base.stream(2 * r as u64).rng())).collect();
    let q_side: Vec<Option<u64>> =
        (0..replicates).into_par_iter().map(|r| sample_v_gw(2 * s_n, cap, &mut base.stream(2 * r as u64 + 1).rng())).collect();
    let mut out = Vec::new();
    for &c in cs {
        let f_p: Vec<f64> = p_side.iter().map(|&v| (v <= c) as u8 as f64).collect();
        let lam: Vec<f64> = q_side.iter().map(|v| v.filter(|&v| v <= c).map_or(0.0, |v| rn_weight(v, s, a_n, theta))).collect();
        let ratio: Vec<f64> =
            q_side.iter().map(|v| v.filter(|&v| v <= c).map_or(0.0, |v| exact_ratio(n, sigma, s_n, v))).collect();
        let (pm, pse) = mean_se(&f_p);
        let (qm, qse) = mean_se(&lam);
        let (em, ese) = mean_se(&ratio);
        let (mut p_exact, mut q_exact) = (0.0, 0.0);
        for v in 0..=c {
            let q = gw_total_size_pmf(2 * s_n, v);
            p_exact += q * exact_ratio(n, sigma, s_n, v);
            q_exact += q * rn_weight(v, s, a_n, theta);
        }
        out.push(RnReport {
            n,
            sigma,
            theta,
            s,
            a_n,
            s_n,
            c,
            replicates,
            p_mean: pm,
            p_se: pse,
            q_lambda_mean: qm,
            q_lambda_se: qse,
            z: (pm - qm) / (pse * pse + qse * qse).sqrt(),
            q_exact_mean: em,
            q_exact_se: ese,
            z_exact: (pm - em) / (pse * pse + ese * ese).sqrt(),
            p_exact,
            q_lambda_exact: q_exact,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_is_one_without_skewness() {
        assert_eq!(rn_weight(12345, 3.0, 2.0, 0.0), 1.0);
        assert!((rn_weight(0, 1e-9, 5.0, 1.0) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn exact_ratio_normalizes_q() {
        // Σ_v Q(v) ratio(v) = 1: the ratio is a likelihood ratio
        let (n, sigma, s_n) = (300u64, 60u64, 4u64);
        let tot: f64 = (0..=n).map(|v| gw_total_size_pmf(2 * s_n, v) * exact_ratio(n, sigma, s_n, v)).sum();
        assert!((tot - 1.0).abs() < 1e-9, "{tot}");
    }

    #[test]
    fn forest_window_matches_exact_law() {
        let (n, sigma, s_n) = (300u64, 60u64, 2u64);
        let mut rng = RngConfig::new(3).rng();
        let reps = 20_000;
        let c = 6;
        let hits = (0..reps).filter(|_| sample_v_forest(n, sigma, s_n, &mut rng) <= c).count() as f64 / reps as f64;
        let exact: f64 = (0..=c).map(|v| gw_total_size_pmf(2 * s_n, v) * exact_ratio(n, sigma, s_n, v)).sum();
        assert!((hits - exact).abs() < 4.0 * (exact * (1.0 - exact) / reps as f64).sqrt(), "{hits} vs {exact}");
    }

    #[test]
    fn no_skewness_gives_unit_weight() {
        let r = rn_importance_check(2000, 40, 0.0, 1.0, 2.0, &[20], 2000, 5).unwrap();
        let s_n = r[0].s_n;
        let mass: f64 = (0..=20).map(|v| gw_total_size_pmf(2 * s_n, v)).sum();
        assert!((r[0].q_lambda_exact - mass).abs() < 1e-12);
        assert!(r[0].z_exact.abs() < 4.0);
    }

    #[test]
    fn forest_windows_approach_gw_for_few_trees() {
        // s_n ≪ σ ≪ sqrt(n): the window law is close to independent GW trees
        let (n, sigma, s_n) = (1_000_000u64, 400u64, 3u64);
        for c in [5u64, 20, 100] {
            let q: f64 = (0..=c).map(|v| gw_total_size_pmf(2 * s_n, v)).sum();
            let p: f64 = (0..=c).map(|v| gw_total_size_pmf(2 * s_n, v) * exact_ratio(n, sigma, s_n, v)).sum();
            assert!((p - q).abs() < 0.02 * q, "c={c}: {p} vs {q}");
        }
    }

    #[test]
    fn gw_side_matches_kemperman() {
        let mut rng = RngConfig::new(4).rng();
        let reps = 50_000;
        let hits = (0..reps).filter(|_| sample_v_gw(4, 10, &mut rng).is_some_and(|v| v <= 3)).count() as f64 / reps as f64;
        let exact: f64 = (0..=3).map(|v| gw_total_size_pmf(4, v)).sum();
        assert!((hits - exact).abs() < 4.0 * (exact * (1.0 - exact) / reps as f64).sqrt());
    }
}
