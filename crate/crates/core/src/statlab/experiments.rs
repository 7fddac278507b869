//! Experiment specifications, the CSV record format, and the Monte Carlo
//! experiments on forests and bridges.

use super::exact::{bridge_window_max_rel_dev, bridge_window_tv, gw_size_tail};
use super::stats::{empirical_tv, ks_one_sample, ks_one_sample_critical, median};
use crate::error::{Error, Result};
use crate::rng::RngConfig;
use crate::samplers::{sample_bridge_uniform, sample_conditioned_walk};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{Binomial, ContinuousCDF, Discrete, Normal};
use std::collections::BTreeMap;
use std::path::PathBuf;

/// How the number of boundary faces grows with `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum SigmaRule {
    /// A fixed perimeter.
    Const { value: u64 },
    /// `⌊n^α⌋`.
    Power { alpha: f64 },
    /// `⌊c √n⌋`.
    SqrtMul { c: f64 },
    /// `⌊c n⌋`, capped at `cap`.
    Linear { c: f64, cap: u64 },
}

impl SigmaRule {
    /// The perimeter at size `n`, at least 1.
    pub fn sigma(&self, n: u64) -> u64 {
        let nf = n as f64;
        let s = match *self {
            SigmaRule::Const { value } => value,
            SigmaRule::Power { alpha } => nf.powf(alpha).floor() as u64,
            SigmaRule::SqrtMul { c } => (c * nf.sqrt()).floor() as u64,
            SigmaRule::Linear { c, cap } => ((c * nf).floor() as u64).min(cap),
        };
        s.max(1)
    }
}

/// Distance scale `a_n = c · n^α · σ_n^β`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleRule {
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl ScaleRule {
    pub fn new(c: f64, alpha: f64, beta: f64) -> Self {
        Self { c, alpha, beta }
    }

    pub fn a(&self, n: u64, sigma: u64) -> f64 {
        self.c * (n as f64).powf(self.alpha) * (sigma as f64).powf(self.beta)
    }
}

/// A named experiment over a grid of sizes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub name: String,
    pub ns: Vec<u64>,
    pub sigma: SigmaRule,
    pub scale: ScaleRule,
    pub replicates: usize,
    pub seed: u64,
    #[serde(default)]
    pub out: Option<PathBuf>,
    /// Experiment-specific knobs (window sizes, thresholds, skewness).
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

impl ExperimentSpec {
    pub fn new(name: &str, ns: Vec<u64>, sigma: SigmaRule, scale: ScaleRule, replicates: usize, seed: u64) -> Self {
        Self { name: name.into(), ns, sigma, scale, replicates, seed, out: None, params: BTreeMap::new() }
    }

    pub fn with_param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.into(), value);
        self
    }

    pub fn param(&self, key: &str, default: f64) -> f64 {
        self.params.get(key).copied().unwrap_or(default)
    }

    pub fn validate(&self) -> Result<()> {
        if self.replicates == 0 {
            return Err(Error::InvalidParameter("replicates must be at least 1".into()));
        }
        if self.ns.is_empty() || self.ns.contains(&0) {
            return Err(Error::InvalidParameter("sizes must be a non-empty list of positive integers".into()));
        }
        Ok(())
    }

    /// Independent random stream for replicate `r` at grid cell `cell`.
    pub fn rng(&self, cell: usize, r: usize) -> crate::rng::StreamRng {
        RngConfig::new(self.seed).stream(((cell as u64) << 32) | r as u64).rng()
    }
}

/// One CSV row: `experiment,name,n,sigma,a_n,replicate,statistic,value`.
/// Aggregates leave `replicate` empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub experiment: String,
    pub name: String,
    pub n: u64,
    pub sigma: u64,
    pub a_n: f64,
    pub replicate: Option<u64>,
    pub statistic: String,
    pub value: f64,
}

impl Record {
    pub fn new(
        experiment: &str,
        spec: &ExperimentSpec,
        n: u64,
        sigma: u64,
        replicate: Option<u64>,
        statistic: &str,
        value: f64,
    ) -> Self {
        Self {
            experiment: experiment.into(),
            name: spec.name.clone(),
            n,
            sigma,
            a_n: spec.scale.a(n, sigma),
            replicate,
            statistic: statistic.into(),
            value,
        }
    }
}

/// Sizes of the trees of the forest coded by a first-passage walk.
pub fn tree_sizes(walk: &[i64]) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut start = 0usize;
    let mut low = 0i64;
    for (t, &v) in walk.iter().enumerate().skip(1) {
        if v < low {
            low = v;
            sizes.push((t - start - 1) / 2);
            start = t;
        }
    }
    sizes
}

/// Fraction `max_i |τ_i| / n` of the largest tree in a uniform forest, per
/// replicate, with the median per size as an aggregate.
pub fn largest_tree_experiment(spec: &ExperimentSpec) -> Result<Vec<Record>> {
    spec.validate()?;
    let mut out = Vec::new();
    for (cell, &n) in spec.ns.iter().enumerate() {
        let sigma = spec.sigma.sigma(n);
        let fr: Vec<f64> = (0..spec.replicates)
            .into_par_iter()
            .map(|r| {
                let w = sample_conditioned_walk(n as usize, sigma as usize, &mut spec.rng(cell, r));
                *tree_sizes(&w).iter().max().unwrap() as f64 / n as f64
            })
            .collect();
        for (r, &f) in fr.iter().enumerate() {
            out.push(Record::new("largest_tree", spec, n, sigma, Some(r as u64), "max_tree_fraction", f));
        }
        out.push(Record::new("largest_tree", spec, n, sigma, None, "median_max_tree_fraction", median(&fr)));
    }
    Ok(out)
}

/// Sizes listed by `{1, 2, 4, 8}`-thresholds used as the coarse statistic of
/// the residual forest.
pub const RESIDUAL_THRESHOLDS: [u64; 4] = [1, 2, 4, 8];

/// Estimated total variation between the law of the trees other than the
/// largest one and `σ - 1` independent Galton–Watson trees, through the
/// counts of trees of size at least `s`. Each count is compared with its
/// exact Binomial law and the largest of the four distances is reported.
/// This is a lower bound for the distance between the full laws, inflated
/// by Monte Carlo noise of order `sqrt(σ / N)`.
pub fn residual_forest_tv(spec: &ExperimentSpec) -> Result<Vec<Record>> {
    spec.validate()?;
    let mut out = Vec::new();
    for (cell, &n) in spec.ns.iter().enumerate() {
        let sigma = spec.sigma.sigma(n);
        if sigma == 1 {
            out.push(Record::new("residual_tv", spec, n, sigma, None, "tv", 0.0));
            continue;
        }
        let counts: Vec<[u64; 4]> = (0..spec.replicates)
            .into_par_iter()
            .map(|r| {
                let w = sample_conditioned_walk(n as usize, sigma as usize, &mut spec.rng(cell, r));
                let mut sizes = tree_sizes(&w);
                let i = sizes.iter().enumerate().max_by_key(|&(i, s)| (*s, usize::MAX - i)).unwrap().0;
                sizes.remove(i);
                let mut c = [0u64; 4];
                for (k, &s) in RESIDUAL_THRESHOLDS.iter().enumerate() {
                    c[k] = sizes.iter().filter(|&&x| x as u64 >= s).count() as u64;
                }
                c
            })
            .collect();
        let mut worst = 0.0f64;
        for (k, &s) in RESIDUAL_THRESHOLDS.iter().enumerate() {
            let p = gw_size_tail(s);
            let bin = Binomial::new(p, sigma - 1).unwrap();
            let pmf: Vec<f64> = (0..sigma).map(|j| bin.pmf(j)).collect();
            let mut hist = vec![0u64; sigma as usize];
            for c in &counts {
                hist[c[k] as usize] += 1;
            }
            let tv = empirical_tv(&hist, &pmf);
            out.push(Record::new("residual_tv", spec, n, sigma, None, &format!("tv_size_ge_{s}"), tv));
            worst = worst.max(tv);
        }
        out.push(Record::new("residual_tv", spec, n, sigma, None, "tv", worst));
    }
    Ok(out)
}

/// KS distance between `b(⌊σ/2⌋)/sqrt(2σ)` of uniform bridges and the
/// `N(0, 1/4)` marginal of the standard Brownian bridge, plus the 1%
/// critical value.
pub fn bridge_rescaled_ks(spec: &ExperimentSpec) -> Result<Vec<Record>> {
    spec.validate()?;
    let s_frac = spec.param("s", 0.5);
    let mut out = Vec::new();
    for (cell, &n) in spec.ns.iter().enumerate() {
        let sigma = spec.sigma.sigma(n);
        let idx = ((sigma as f64) * s_frac).floor() as usize;
        let xs: Vec<f64> = (0..spec.replicates)
            .into_par_iter()
            .map(|r| {
                let b = sample_bridge_uniform(sigma as usize, &mut spec.rng(cell, r));
                b.get(idx) as f64 / (2.0 * sigma as f64).sqrt()
            })
            .collect();
        let t = idx as f64 / sigma as f64;
        let sd = (t * (1.0 - t)).sqrt();
        let ks = if sd > 0.0 {
            let normal = Normal::new(0.0, sd).unwrap();
            ks_one_sample(&xs, |x| normal.cdf(x))
        } else {
            0.0
        };
        out.push(Record::new("bridge_ks", spec, n, sigma, None, "ks", ks));
        out.push(Record::new("bridge_ks", spec, n, sigma, None, "ks_critical_1pct", ks_one_sample_critical(xs.len(), 0.01)));
    }
    Ok(out)
}

/// Exact total variation between bridge windows of half-width `k` and the
/// infinite bridge, with the largest relative deviation of the
/// configuration probabilities over the bulk of spreads.
pub fn bridge_window_experiment(spec: &ExperimentSpec) -> Result<Vec<Record>> {
    spec.validate()?;
    let k = spec.param("k", 10.0) as u64;
    let mut out = Vec::new();
    for &n in &spec.ns {
        let sigma = spec.sigma.sigma(n);
        out.push(Record::new("bridge_window", spec, n, sigma, None, "tv", bridge_window_tv(sigma, k)));
        out.push(Record::new("bridge_window", spec, n, sigma, None, "max_rel_dev", bridge_window_max_rel_dev(sigma, k, 4.0)));
    }
    Ok(out)
}
