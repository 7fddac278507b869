//! Goodness-of-fit statistics and small summaries used by the experiments.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Result of a χ² goodness-of-fit test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
}

/// χ² test of observed counts against cell probabilities. Neighboring cells
/// are pooled left to right until each expected count is at least 5; the
/// probabilities need not sum to one, the remainder forms a last cell.
pub fn chi_square(observed: &[u64], probs: &[f64]) -> ChiSquare {
    assert_eq!(observed.len(), probs.len());
    let n: u64 = observed.iter().sum();
    let nf = n as f64;
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let (mut o, mut e) = (0.0, 0.0);
    for (&ob, &p) in observed.iter().zip(probs) {
        o += ob as f64;
        e += p * nf;
        if e >= 5.0 {
            cells.push((o, e));
            o = 0.0;
            e = 0.0;
        }
    }
    let rest = (nf - probs.iter().sum::<f64>() * nf).max(0.0);
    e += rest;
    if e > 0.0 || o > 0.0 {
        if e >= 5.0 || cells.is_empty() {
            cells.push((o, e));
        } else {
            let last = cells.last_mut().unwrap();
            last.0 += o;
            last.1 += e;
        }
    }
    let statistic: f64 = cells.iter().map(|&(o, e)| if e > 0.0 { (o - e).powi(2) / e } else { 0.0 }).sum();
    let df = cells.len().saturating_sub(1).max(1);
    let p_value = 1.0 - ChiSquared::new(df as f64).unwrap().cdf(statistic);
    ChiSquare { statistic, df, p_value }
}

/// Two-sample Kolmogorov–Smirnov statistic.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    b.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Asymptotic critical value of the two-sample statistic at level `alpha`:
/// `sqrt(-ln(α/2)/2) · sqrt((n+m)/(nm))`.
pub fn ks_two_sample_critical(n: usize, m: usize, alpha: f64) -> f64 {
    let c = (-(alpha / 2.0).ln() / 2.0).sqrt();
    c * ((n + m) as f64 / (n as f64 * m as f64)).sqrt()
}

/// One-sample Kolmogorov–Smirnov statistic against a continuous CDF.
pub fn ks_one_sample<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> f64 {
    let mut s = sample.to_vec();
    s.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let n = s.len() as f64;
    s.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Asymptotic one-sample critical value `sqrt(-ln(α/2)/2) / sqrt(n)`.
pub fn ks_one_sample_critical(n: usize, alpha: f64) -> f64 {
    (-(alpha / 2.0).ln() / 2.0).sqrt() / (n as f64).sqrt()
}

/// Sample mean and its standard error.
pub fn mean_se(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    if x.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Empirical quantile with linear interpolation between order statistics.
pub fn quantile(x: &[f64], q: f64) -> f64 {
    let mut s = x.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let pos = q.clamp(0.0, 1.0) * (s.len() - 1) as f64;
    let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
    s[lo] + (pos - lo as f64) * (s[hi] - s[lo])
}

pub fn median(x: &[f64]) -> f64 {
    quantile(x, 0.5)
}

/// Total variation between an empirical law of small integers and a pmf.
pub fn empirical_tv(counts: &[u64], pmf: &[f64]) -> f64 {
    let n: u64 = counts.iter().sum();
    let len = counts.len().max(pmf.len());
    let mut tv = 0.0;
    for i in 0..len {
        let a = counts.get(i).copied().unwrap_or(0) as f64 / n as f64;
        let b = pmf.get(i).copied().unwrap_or(0.0);
        tv += (a - b).abs();
    }
    let covered: f64 = pmf.iter().sum();
    0.5 * (tv + (1.0 - covered).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngConfig;
    use rand::Rng;

    #[test]
    fn ks_statistics() {
        assert_eq!(ks_two_sample(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]), 0.0);
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[3.0, 4.0]), 1.0);
        assert!((ks_two_sample_critical(1000, 1000, 1e-3) - 1.949 * (2.0f64 / 1000.0).sqrt()).abs() < 1e-3);
        let mut rng = RngConfig::new(1).rng();
        let u: Vec<f64> = (0..10_000).map(|_| rng.random()).collect();
        assert!(ks_one_sample(&u, |x| x.clamp(0.0, 1.0)) < ks_one_sample_critical(10_000, 1e-3));
    }

    #[test]
    fn chi_square_accepts_fair_die_and_rejects_loaded() {
        let mut rng = RngConfig::new(2).rng();
        let mut c = [0u64; 6];
        for _ in 0..60_000 {
            c[rng.random_range(0..6)] += 1;
        }
        let r = chi_square(&c, &[1.0 / 6.0; 6]);
        assert_eq!(r.df, 5);
        assert!(r.p_value > 1e-3);
        let r = chi_square(&[10_000, 10_000, 10_000, 10_000, 10_000, 12_000], &[1.0 / 6.0; 6]);
        assert!(r.p_value < 1e-6);
    }

    #[test]
    fn summaries() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(quantile(&[0.0, 1.0], 0.25), 0.25);
        let (m, se) = mean_se(&[1.0, 3.0]);
        assert_eq!(m, 2.0);
        assert!((se - 1.0).abs() < 1e-12);
        assert!((empirical_tv(&[5, 5], &[0.5, 0.5])).abs() < 1e-12);
    }
}
