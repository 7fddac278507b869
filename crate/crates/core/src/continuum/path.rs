//! Paths sampled on uniform time grids, and the path transforms used by the
//! continuum constructions.

use serde::{Deserialize, Serialize};

/// A real path sampled at `m` equally spaced times in `[t0, t1]`.
///
/// Two-sided paths keep the index of time 0 in `origin`. `inf_before` and
/// `inf_after` hold the infimum of the path beyond either end of the grid:
/// `+∞` when the path does not extend further, `-∞` when it is unbounded
/// below there.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathGrid {
    pub t0: f64,
    pub t1: f64,
    pub values: Vec<f64>,
    pub origin: usize,
    pub inf_before: f64,
    pub inf_after: f64,
}

impl PathGrid {
    /// A path on `[t0, t1]` with nothing beyond its ends.
    pub fn new(t0: f64, t1: f64, values: Vec<f64>) -> Self {
        let origin =
            if t0 >= 0.0 || values.len() < 2 { 0 } else { ((-t0) / ((t1 - t0) / (values.len() - 1) as f64)).round() as usize };
        Self { t0, t1, values, origin, inf_before: f64::INFINITY, inf_after: f64::INFINITY }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dt(&self) -> f64 {
        (self.t1 - self.t0) / (self.values.len() - 1) as f64
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.dt()
    }

    pub fn with_values(&self, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), self.values.len());
        Self { values, ..self.clone() }
    }

    /// The path restricted to every `k`-th grid point (the end point is kept
    /// when it falls on the coarse grid).
    pub fn every(&self, k: usize) -> Self {
        let values: Vec<f64> = self.values.iter().step_by(k).copied().collect();
        let t1 = self.t0 + (values.len() - 1) as f64 * k as f64 * self.dt();
        Self { t0: self.t0, t1, values, origin: self.origin / k, ..*self }
    }

    /// Largest absolute increment between neighboring grid points.
    pub fn max_step(&self) -> f64 {
        self.values.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max)
    }
}

/// `Π(Y)_t = Y_t - 2 min_{[0,t]} Y` on a discrete path.
pub fn pitman_walk(y: &[i64]) -> Vec<i64> {
    let mut m = i64::MAX;
    y.iter()
        .map(|&v| {
            m = m.min(v);
            v - 2 * m
        })
        .collect()
}

/// Grid Pitman transform using grid minima only.
pub fn pitman(path: &PathGrid) -> PathGrid {
    let mins = prefix_min(&path.values);
    path.with_values(path.values.iter().zip(&mins).map(|(v, m)| v - 2.0 * m).collect())
}

/// Running minimum `min_{[0,i]}` from the left end.
pub fn prefix_min(v: &[f64]) -> Vec<f64> {
    let mut m = f64::INFINITY;
    v.iter()
        .map(|&x| {
            m = m.min(x);
            m
        })
        .collect()
}

/// Running minimum `min_{[i, end]}` from the right end.
pub fn suffix_min(v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; v.len()];
    let mut m = f64::INFINITY;
    for i in (0..v.len()).rev() {
        m = m.min(v[i]);
        out[i] = m;
    }
    out
}

/// The running-infimum processes attached to a contour path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Underline {
    /// `inf_{[0,t]}`, for paths indexed from 0.
    FromZero,
    /// `inf_{(-∞,t]}`, using `inf_before` for the part left of the grid.
    FromLeft,
}

pub fn underline(path: &PathGrid, variant: Underline) -> PathGrid {
    let v = &path.values;
    let out = match variant {
        Underline::FromZero => {
            let o = path.origin;
            let mut out = prefix_min(&v[o..]);
            let mut left = suffix_min(&v[..=o]);
            left.pop();
            left.append(&mut out);
            left
        }
        Underline::FromLeft => {
            let mut m = path.inf_before;
            v.iter()
                .map(|&x| {
                    m = m.min(x);
                    m
                })
                .collect()
        }
    };
    path.with_values(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pitman_examples() {
        assert_eq!(pitman_walk(&[0, -1, -2, -1]), vec![0, 1, 2, 3]);
        assert_eq!(pitman_walk(&[0, 1, 2, 1]), vec![0, 1, 2, 1]);
    }

    #[test]
    fn coarse_grid() {
        let p = PathGrid::new(0.0, 1.0, (0..9).map(|i| i as f64).collect());
        let c = p.every(4);
        assert_eq!(c.values, vec![0.0, 4.0, 8.0]);
        assert_eq!(c.t1, 1.0);
    }

    proptest! {
        #[test]
        fn pitman_identity_on_walks(steps in prop::collection::vec(prop::bool::ANY, 1..300)) {
            let mut y = vec![0i64];
            for s in steps {
                y.push(y.last().unwrap() + if s { 1 } else { -1 });
            }
            let p = pitman_walk(&y);
            let mut pre = i64::MAX;
            let mut tail = vec![i64::MAX; p.len() + 1];
            for i in (0..p.len()).rev() {
                tail[i] = tail[i + 1].min(p[i]);
            }
            for t in 0..y.len() {
                pre = pre.min(y[t]);
                prop_assert!(tail[t] >= -pre);
                prop_assert!(p[t] >= 0);
            }
        }

        #[test]
        fn underline_is_monotone_and_below(v in prop::collection::vec(-10.0f64..10.0, 2..50)) {
            let p = PathGrid::new(0.0, 1.0, v.clone());
            let u = underline(&p, Underline::FromZero);
            for i in 0..v.len() {
                prop_assert!(u.values[i] <= v[i]);
                prop_assert_eq!(u.values[i], v[..=i].iter().copied().fold(f64::INFINITY, f64::min));
                if i > 0 { prop_assert!(u.values[i] <= u.values[i - 1]); }
            }
        }
    }
}
