//! Contour and label processes of the Brownian disk, half-planes, plane and
//! infinite-volume disk on a grid.

use super::generators::{pitman_exact, sample_bm, sample_brownian_bridge_at, sample_fp_bridge, sample_two_sided_bm_at};
use super::path::{prefix_min, PathGrid};
use super::snake::sample_snake;
use crate::error::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// A contour process with its reference floor (`X̲` or the double
/// underline) and the level at which the boundary process is read.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Contour {
    pub x: PathGrid,
    pub floor: PathGrid,
    /// Argument of the boundary process `γ` at each grid point.
    pub levels: Vec<f64>,
    /// Grid indices of the junction times of the piecewise construction, if any.
    pub junctions: Vec<usize>,
}

impl Contour {
    /// The snake drive `X - floor`, clamped at 0 against rounding.
    pub fn drive(&self) -> PathGrid {
        self.x.with_values(self.x.values.iter().zip(&self.floor.values).map(|(a, b)| (a - b).max(0.0)).collect())
    }
}

/// A sampled pair `(X, W)` coding a continuum space on a grid.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContinuumSample {
    pub contour: Contour,
    pub snake: PathGrid,
    pub labels: PathGrid,
}

/// Which boundary process feeds the labels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Boundary {
    /// No boundary term (`W = Z`).
    None,
    /// Brownian bridge of the given duration.
    Bridge(f64),
    /// Two-sided Brownian motion.
    TwoSided,
}

/// `W_t = √3 · γ(level_t) + Z_t`, given the values of `γ` at the levels.
pub fn label_process(snake: &PathGrid, gamma_at_levels: &[f64]) -> PathGrid {
    assert_eq!(snake.len(), gamma_at_levels.len());
    let s3 = 3f64.sqrt();
    snake.with_values(snake.values.iter().zip(gamma_at_levels).map(|(z, g)| s3 * g + z).collect())
}

/// Samples the snake and the boundary process for a contour and assembles
/// the labels. `compact` keeps the label tails at `+∞` (nothing beyond the
/// grid); otherwise they are `-∞`.
pub fn sample_labels<R: Rng + ?Sized>(
    contour: Contour,
    boundary: Boundary,
    compact: bool,
    rng: &mut R,
) -> Result<ContinuumSample> {
    let mut snake = sample_snake(&contour.drive(), rng)?;
    let tail = if compact { f64::INFINITY } else { f64::NEG_INFINITY };
    snake.inf_before = tail;
    snake.inf_after = tail;
    let gamma = match boundary {
        Boundary::None => vec![0.0; snake.len()],
        Boundary::Bridge(d) => sample_brownian_bridge_at(&contour.levels, d, rng)?,
        Boundary::TwoSided => sample_two_sided_bm_at(&contour.levels, rng),
    };
    let labels = label_process(&snake, &gamma);
    Ok(ContinuumSample { contour, snake, labels })
}

/// Contour of the Brownian disk of volume `T` and perimeter `σ`.
pub fn sample_bd_contour<R: Rng + ?Sized>(t: f64, sigma: f64, m: usize, rng: &mut R) -> Result<Contour> {
    let x = sample_fp_bridge(t, sigma, m, rng)?;
    let floor = x.with_values(prefix_min(&x.values));
    let levels = floor.values.iter().map(|f| (-f).clamp(0.0, sigma)).collect();
    Ok(Contour { x, floor, levels, junctions: vec![] })
}

/// The Brownian disk `BD_{T,σ}`.
pub fn sample_bd<R: Rng + ?Sized>(t: f64, sigma: f64, m: usize, rng: &mut R) -> Result<ContinuumSample> {
    let c = sample_bd_contour(t, sigma, m, rng)?;
    sample_labels(c, Boundary::Bridge(sigma), true, rng)
}

/// Joins a left half (indexed by `|t|`, starting at time 0) and a right half
/// into one two-sided grid on `[-H, H]`.
fn join_sides(left: &[f64], right: &[f64], horizon: f64) -> PathGrid {
    let m = right.len();
    let mut v: Vec<f64> = left.iter().rev().copied().collect();
    v.extend_from_slice(&right[1..]);
    let mut p = PathGrid::new(-horizon, horizon, v);
    p.origin = m - 1;
    p
}

fn check_two_sided(horizon: f64, m: usize) -> Result<()> {
    if !(horizon > 0.0) || m < 2 {
        return Err(Error::InvalidParameter(format!("two-sided grid needs horizon > 0 and m ≥ 2 (got {horizon}, {m})")));
    }
    Ok(())
}

/// Contour of the Brownian half-plane with skewness `θ` on `[-H, H]`, with
/// `m` grid points on each side of 0. The right half is a Brownian motion
/// with drift `-θ`, the left half the Pitman transform of an independent
/// copy.
pub fn sample_bhp_contour<R: Rng + ?Sized>(theta: f64, horizon: f64, m: usize, rng: &mut R) -> Result<Contour> {
    check_two_sided(horizon, m)?;
    if !(theta >= 0.0) {
        return Err(Error::InvalidParameter(format!("skewness must be nonnegative (got {theta})")));
    }
    let right = sample_bm(horizon, m, -theta, rng);
    let left_bm = sample_bm(horizon, m, -theta, rng);
    let left = pitman_exact(&left_bm);
    let left_floor: Vec<f64> = left_bm.running_min().iter().map(|v| -v).collect();
    let right_floor = right.running_min();
    let mut x = join_sides(&left.values, &right.path.values, horizon);
    x.inf_before = left.inf_after;
    x.inf_after = f64::NEG_INFINITY;
    let floor = join_sides(&left_floor, &right_floor, horizon);
    let levels = floor.values.iter().map(|f| -f).collect();
    Ok(Contour { x, floor, levels, junctions: vec![] })
}

/// The Brownian half-plane `BHP_θ`.
pub fn sample_bhp<R: Rng + ?Sized>(theta: f64, horizon: f64, m: usize, rng: &mut R) -> Result<ContinuumSample> {
    let c = sample_bhp_contour(theta, horizon, m, rng)?;
    sample_labels(c, Boundary::TwoSided, false, rng)
}

/// Contour of the Brownian plane: two independent Bessel-3 halves.
pub fn sample_bp_contour<R: Rng + ?Sized>(horizon: f64, m: usize, rng: &mut R) -> Result<Contour> {
    check_two_sided(horizon, m)?;
    let right = pitman_exact(&sample_bm(horizon, m, 0.0, rng));
    let left = pitman_exact(&sample_bm(horizon, m, 0.0, rng));
    let mut x = join_sides(&left.values, &right.values, horizon);
    x.inf_before = left.inf_after;
    x.inf_after = right.inf_after;
    let floor = x.with_values(vec![0.0; x.len()]);
    let levels = vec![0.0; x.len()];
    Ok(Contour { x, floor, levels, junctions: vec![] })
}

/// The Brownian plane `BP`: the snake driven by the contour itself.
pub fn sample_bp<R: Rng + ?Sized>(horizon: f64, m: usize, rng: &mut R) -> Result<ContinuumSample> {
    let c = sample_bp_contour(horizon, m, rng)?;
    sample_labels(c, Boundary::None, false, rng)
}

/// Contour of the infinite-volume Brownian disk of perimeter `σ` on
/// `[-H, H]` with `m` points per side.
///
/// The piece left of 0 (a Brownian motion run from `-U₀` until it first
/// hits `-σ`, shifted by `σ` and read backwards, followed by `σ - U₀` plus a
/// Bessel-3 process) is generated as a single Bessel-3 process `Π(B')`: by
/// time reversal the first piece is a Bessel-3 process up to its last
/// passage at `σ - U₀`, which is the first time `B'` reaches `-(σ - U₀)`.
/// Right of 0 the path is a Brownian motion until it first goes below
/// `-U₀` (detected on the grid, where the value is set to `-U₀`), followed
/// by `-U₀` plus an independent Bessel-3 process.
pub fn sample_ibd_contour<R: Rng + ?Sized>(sigma: f64, horizon: f64, m: usize, rng: &mut R) -> Result<Contour> {
    check_two_sided(horizon, m)?;
    if !(sigma > 0.0) {
        return Err(Error::InvalidParameter(format!("perimeter must be positive (got {sigma})")));
    }
    let u0 = rng.random::<f64>() * sigma;

    let left_bm = sample_bm(horizon, m, 0.0, rng);
    let left = pitman_exact(&left_bm);
    let left_min = left_bm.running_min();
    let left_floor: Vec<f64> = left_min.iter().map(|v| (-v).min(sigma - u0)).collect();
    let left_junction = left_bm.first_passage_index(-(sigma - u0));

    let b = sample_bm(horizon, m, 0.0, rng);
    let hit = b.first_passage_index(-u0);
    let mut right = b.path.values.clone();
    let mut right_floor = b.running_min();
    let mut inf_after = -u0;
    if let Some(k) = hit {
        right[k] = -u0;
        if k + 1 < m {
            let rest = sample_bm(horizon - b.path.time(k), m - k, 0.0, rng);
            let r = pitman_exact(&rest);
            for (j, v) in r.values.iter().enumerate() {
                right[k + j] = -u0 + v;
            }
            inf_after = -u0 + r.inf_after;
        }
        for f in right_floor[k..].iter_mut() {
            *f = -u0;
        }
    }
    let mut x = join_sides(&left.values, &right, horizon);
    x.inf_before = left.inf_after;
    x.inf_after = inf_after;
    let floor = join_sides(&left_floor, &right_floor, horizon);
    let o = m - 1;
    let levels = floor
        .values
        .iter()
        .enumerate()
        .map(|(i, f)| if i < o { (sigma - f).clamp(0.0, sigma) } else { (-f).clamp(0.0, sigma) })
        .collect();
    let mut junctions = vec![];
    if let Some(j) = left_junction {
        junctions.push(o - j);
    }
    if let Some(k) = hit {
        junctions.push(o + k);
    }
    Ok(Contour { x, floor, levels, junctions })
}

/// The infinite-volume Brownian disk `IBD_σ`.
pub fn sample_ibd<R: Rng + ?Sized>(sigma: f64, horizon: f64, m: usize, rng: &mut R) -> Result<ContinuumSample> {
    let c = sample_ibd_contour(sigma, horizon, m, rng)?;
    sample_labels(c, Boundary::Bridge(sigma), false, rng)
}
