//! Exact uniform samplers for forests, bridges, Galton–Watson trees and
//! windows of their two-sided infinite versions.

use crate::encoding::{
    contour::ContourPair, forest_of_contour, signs_to_bridge, Bridge, BridgeWindow, ForestWindow, PlaneTree, WellLabeledForest,
};
use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::Rng;

/// A uniform ±1 walk of length `2n+σ` from 0 that first hits `-σ` at its
/// last step. Returned as the `2n+σ+1` visited values.
///
/// A uniform arrangement of `n` up steps and `n+σ` down steps is rotated to
/// start at the first visit of `min + ν`, with `ν` uniform in `0..σ`. Exactly
/// `σ` rotations of any such arrangement are first-passage paths, and these
/// are they.
pub fn sample_conditioned_walk<R: Rng + ?Sized>(n: usize, sigma: usize, rng: &mut R) -> Vec<i64> {
    assert!(sigma >= 1, "sigma must be positive");
    let len = 2 * n + sigma;
    let mut steps: Vec<i8> = Vec::with_capacity(len);
    steps.resize(n, 1);
    steps.resize(len, -1);
    steps.shuffle(rng);
    let mut min = 0i64;
    let mut s = 0i64;
    for &x in &steps {
        s += x as i64;
        min = min.min(s);
    }
    let target = min + rng.random_range(0..sigma) as i64;
    let mut s = 0i64;
    let mut shift = 0;
    for (t, &x) in steps.iter().enumerate() {
        if s == target {
            shift = t;
            break;
        }
        s += x as i64;
    }
    steps.rotate_left(shift);
    let mut out = Vec::with_capacity(len + 1);
    let mut s = 0i64;
    out.push(0);
    for &x in &steps {
        s += x as i64;
        out.push(s);
    }
    debug_assert!(out[..len].iter().all(|&v| v > -(sigma as i64)) && out[len] == -(sigma as i64));
    out
}

/// Tree labels along a contour: each newly visited vertex takes its parent's
/// label plus an independent uniform increment in {-1, 0, 1}.
fn sample_contour_labels<R: Rng + ?Sized>(c: &[i64], rng: &mut R) -> Vec<i64> {
    let mut l = Vec::with_capacity(c.len());
    let mut stack: Vec<i64> = vec![0];
    let mut floor = 0i64;
    l.push(0);
    for j in 1..c.len() {
        if c[j] > c[j - 1] {
            let v = stack.last().unwrap() + rng.random_range(-1..=1);
            stack.push(v);
        } else if c[j] < floor {
            floor = c[j];
            stack.clear();
            stack.push(0);
        } else {
            stack.pop();
        }
        l.push(*stack.last().unwrap());
    }
    l
}

/// Contour pair of a uniform well-labeled forest with `sigma` trees and `n` edges.
pub fn sample_contour_pair<R: Rng + ?Sized>(n: usize, sigma: usize, rng: &mut R) -> ContourPair {
    let c = sample_conditioned_walk(n, sigma, rng);
    let l = sample_contour_labels(&c, rng);
    ContourPair::new(c, l).expect("sampled contour pairs are valid")
}

/// A uniform well-labeled forest with `sigma` trees and `n` edges.
pub fn sample_forest_uniform<R: Rng + ?Sized>(n: usize, sigma: usize, rng: &mut R) -> WellLabeledForest {
    forest_of_contour(&sample_contour_pair(n, sigma, rng))
}

/// A uniform bridge of length `sigma`. Marking `σ` of `2σ` circle points and
/// reading the circle from a uniform origin gives a uniform sign sequence
/// with `σ` minus signs, which a shuffle produces directly.
pub fn sample_bridge_uniform<R: Rng + ?Sized>(sigma: usize, rng: &mut R) -> Bridge {
    assert!(sigma >= 1, "sigma must be positive");
    let mut signs = vec![1i8; 2 * sigma];
    signs[..sigma].fill(-1);
    signs.shuffle(rng);
    signs_to_bridge(&signs).expect("balanced sign sequences encode bridges")
}

/// Geometric variable on {0, 1, 2, ...} with `P(k) = 2^{-k-1}`.
pub fn geometric_half<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    let mut acc = 0;
    loop {
        let z = rng.random::<u64>().trailing_zeros() as u64;
        acc += z;
        if z < 64 {
            return acc;
        }
    }
}

/// A critical geometric Galton–Watson tree with uniform labels, or `None`
/// once it exceeds `max_edges` edges. The contour of such a tree is a simple
/// random walk stopped on first hitting -1.
pub fn sample_gw_tree_bounded<R: Rng + ?Sized>(rng: &mut R, max_edges: usize) -> Option<(PlaneTree, Vec<i64>)> {
    let mut steps = Vec::new();
    let mut h = 0i64;
    let mut ups = 0usize;
    loop {
        // 64 fair steps per random word
        let mut bits: u64 = rng.random();
        for _ in 0..64 {
            let up = bits & 1 == 1;
            bits >>= 1;
            if up {
                ups += 1;
                if ups > max_edges {
                    return None;
                }
                h += 1;
            } else {
                if h == 0 {
                    let t = PlaneTree::from_steps(steps).expect("excursion steps form a tree");
                    let labels = sample_tree_labels(&t, rng);
                    return Some((t, labels));
                }
                h -= 1;
            }
            steps.push(up);
        }
    }
}

/// A critical geometric Galton–Watson tree with uniform labels. Its size is
/// almost surely finite but has infinite mean.
pub fn sample_gw_tree<R: Rng + ?Sized>(rng: &mut R) -> (PlaneTree, Vec<i64>) {
    sample_gw_tree_bounded(rng, usize::MAX).expect("unbounded sampler always returns")
}

fn sample_tree_labels<R: Rng + ?Sized>(t: &PlaneTree, rng: &mut R) -> Vec<i64> {
    let mut lab = vec![0i64; t.num_vertices()];
    // preorder numbering puts parents first
    for v in 1..t.num_vertices() {
        let p = t.parent(v as u32).unwrap() as usize;
        lab[v] = lab[p] + rng.random_range(-1..=1);
    }
    lab
}

/// The window `b(-K..=K)` of the uniform infinite bridge, with `b(-1)` and the
/// boundary value `b(∂)`. Increments away from `-1` are `G - 1`, the
/// increment from `-1` to `0` is `G + G' - 1` (size biased), and `b(∂)` is
/// uniform on `{b(-1)-1, ..., 0}`; `G, G'` are independent geometric(1/2).
pub fn sample_infinite_bridge_window<R: Rng + ?Sized>(k: usize, rng: &mut R) -> BridgeWindow {
    let b_minus_one = -((geometric_half(rng) + geometric_half(rng)) as i64 - 1);
    let partial = rng.random_range(b_minus_one - 1..=0);
    let mut values = vec![0i64; 2 * k + 1];
    for i in 1..=k {
        values[k + i] = values[k + i - 1] + geometric_half(rng) as i64 - 1;
    }
    if k >= 1 {
        values[k - 1] = b_minus_one;
        for i in 2..=k {
            // b(-i) = b(-i+1) - (increment from -i to -i+1)
            values[k - i] = values[k - i + 1] - (geometric_half(rng) as i64 - 1);
        }
    }
    BridgeWindow::new(k, values, b_minus_one, partial).expect("sampled windows are valid")
}

/// Trees `-K..=K` of the infinite forest: i.i.d. uniformly labeled critical
/// geometric Galton–Watson trees.
pub fn sample_infinite_forest_window<R: Rng + ?Sized>(k: usize, rng: &mut R) -> ForestWindow {
    sample_infinite_forest_window_bounded(k, usize::MAX, rng).expect("unbounded sampler always returns")
}

/// As [`sample_infinite_forest_window`], failing with
/// [`Error::WindowTooSmall`] if some tree exceeds `max_edges`.
pub fn sample_infinite_forest_window_bounded<R: Rng + ?Sized>(k: usize, max_edges: usize, rng: &mut R) -> Result<ForestWindow> {
    let mut trees = Vec::with_capacity(2 * k + 1);
    let mut labels = Vec::with_capacity(2 * k + 1);
    for _ in 0..2 * k + 1 {
        let (t, l) = sample_gw_tree_bounded(rng, max_edges)
            .ok_or_else(|| Error::WindowTooSmall(format!("a tree exceeded {max_edges} edges")))?;
        trees.push(t);
        labels.push(l);
    }
    ForestWindow::new(k, WellLabeledForest::new(trees, labels)?)
}
