//! Random snakes: centered Gaussian processes indexed by a grid with
//! `E[Z_s Z_t] = min_{[s,t]} f` for a nonnegative drive `f`.

use super::path::PathGrid;
use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::StandardNormal;

/// Grids up to this size are sampled through a Cholesky factor; larger ones
/// through the branching recursion.
pub const CHOLESKY_MAX: usize = 2048;

const JITTER: f64 = 1e-12;

/// Lower-triangular factor of the snake covariance of a drive, reusable
/// across many draws. Grid points at drive distance 0 from an earlier point
/// (same value, nothing lower in between) share that point's coordinate, so
/// only distinct tree points enter the factorization.
#[derive(Clone, Debug)]
pub struct SnakeCholesky {
    class_of: Vec<usize>,
    k: usize,
    factor: Vec<f64>,
}

impl SnakeCholesky {
    pub fn new(drive: &[f64]) -> Result<Self> {
        let mut class_of = Vec::with_capacity(drive.len());
        let mut reps: Vec<f64> = Vec::new();
        let mut stack: Vec<(f64, usize)> = Vec::new();
        for &f in drive {
            while stack.last().is_some_and(|&(v, _)| v > f) {
                stack.pop();
            }
            match stack.last() {
                Some(&(v, c)) if v == f => class_of.push(c),
                _ => {
                    stack.push((f, reps.len()));
                    class_of.push(reps.len());
                    reps.push(f);
                }
            }
        }
        // covariance between classes through their first grid occurrences
        let mut first = vec![usize::MAX; reps.len()];
        for (i, &c) in class_of.iter().enumerate() {
            if first[c] == usize::MAX {
                first[c] = i;
            }
        }
        let k = reps.len();
        let scale = drive.iter().fold(0.0f64, |a, &b| a.max(b.abs())).max(1.0);
        let mut a = vec![0.0; k * k];
        for ci in 0..k {
            let mut lo = f64::INFINITY;
            let mut cj = ci;
            for (i, &f) in drive.iter().enumerate().skip(first[ci]) {
                lo = lo.min(f);
                if cj < k && i == first[cj] {
                    a[ci * k + cj] = lo;
                    a[cj * k + ci] = lo;
                    cj += 1;
                }
            }
        }
        let tol = JITTER * scale;
        for j in 0..k {
            let mut d = a[j * k + j];
            for q in 0..j {
                d -= a[j * k + q] * a[j * k + q];
            }
            if d < -1e3 * tol {
                return Err(Error::CholeskyFailure(first[j]));
            }
            // a vanishing pivot means Z_j is a function of the earlier coordinates
            let piv = if d <= tol { 0.0 } else { (d + tol).sqrt() };
            a[j * k + j] = piv;
            for i in j + 1..k {
                let mut s = a[i * k + j];
                for q in 0..j {
                    s -= a[i * k + q] * a[j * k + q];
                }
                a[i * k + j] = if piv == 0.0 { 0.0 } else { s / piv };
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                a[i * k + j] = 0.0;
            }
        }
        Ok(Self { class_of, k, factor: a })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let g: Vec<f64> = (0..self.k).map(|_| rng.sample(StandardNormal)).collect();
        let z: Vec<f64> = (0..self.k)
            .map(|i| {
                let row = &self.factor[i * self.k..i * self.k + i + 1];
                row.iter().zip(&g).map(|(a, b)| a * b).sum()
            })
            .collect();
        self.class_of.iter().map(|&c| z[c]).collect()
    }
}

/// Exact sampling by walking the grid left to right. The values of `Z` along
/// the ancestral line of the current index form a Brownian motion in the
/// drive level; a stack keeps its known values. Moving to the next index
/// cuts the line at the level `min(f_i, f_{i+1})`, filling in that level by
/// Brownian-bridge interpolation when it is new, and then grows a fresh
/// Gaussian segment up to `f_{i+1}`.
pub fn sample_snake_recursive<R: Rng + ?Sized>(drive: &[f64], rng: &mut R) -> Vec<f64> {
    let mut out = Vec::with_capacity(drive.len());
    // (level, value), strictly increasing levels, rooted at (0, 0)
    let mut stack: Vec<(f64, f64)> = vec![(0.0, 0.0)];
    let mut prev = 0.0f64;
    for (i, &f) in drive.iter().enumerate() {
        let cut = if i == 0 { 0.0 } else { prev.min(f) };
        let mut above: Option<(f64, f64)> = None;
        while stack.last().unwrap().0 > cut {
            above = stack.pop();
        }
        let (la, za) = *stack.last().unwrap();
        if la < cut {
            let z = match above {
                Some((lc, zc)) => {
                    let w = (cut - la) / (lc - la);
                    let var = (cut - la) * (lc - cut) / (lc - la);
                    za + w * (zc - za) + var.max(0.0).sqrt() * rng.sample::<f64, _>(StandardNormal)
                }
                None => za + (cut - la).sqrt() * rng.sample::<f64, _>(StandardNormal),
            };
            stack.push((cut, z));
        }
        let (lb, zb) = *stack.last().unwrap();
        let z = if f > lb {
            let z = zb + (f - lb).sqrt() * rng.sample::<f64, _>(StandardNormal);
            stack.push((f, z));
            z
        } else {
            zb
        };
        out.push(z);
        prev = f;
    }
    out
}

/// The snake driven by `drive`: Cholesky for grids of at most
/// [`CHOLESKY_MAX`] points, the exact recursion beyond.
pub fn sample_snake<R: Rng + ?Sized>(drive: &PathGrid, rng: &mut R) -> Result<PathGrid> {
    if let Some(i) = drive.values.iter().position(|&x| !(x >= 0.0) || !x.is_finite()) {
        return Err(Error::InvalidParameter(format!("snake drive must be finite and nonnegative (index {i})")));
    }
    let z = if drive.len() <= CHOLESKY_MAX {
        SnakeCholesky::new(&drive.values)?.sample(rng)
    } else {
        sample_snake_recursive(&drive.values, rng)
    };
    Ok(drive.with_values(z))
}
