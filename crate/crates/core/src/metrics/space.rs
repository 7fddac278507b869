//! Finite pointed metric spaces, correspondences and Gromov–Hausdorff
//! distances.

use crate::error::{Error, Result};

/// A finite metric space with a distinguished base point.
#[derive(Clone, Debug, PartialEq)]
pub struct PointedMetricSpace {
    size: usize,
    dist: Vec<f64>,
    pub base: usize,
}

const TOL: f64 = 1e-9;

impl PointedMetricSpace {
    /// Validates a row-major distance matrix.
    pub fn new(size: usize, dist: Vec<f64>, base: usize) -> Result<Self> {
        if dist.len() != size * size {
            return Err(Error::LengthMismatch { expected: size * size, found: dist.len() });
        }
        if base >= size {
            return Err(Error::InvalidMetric(format!("base {base} outside {size} points")));
        }
        let d = |i: usize, j: usize| dist[i * size + j];
        for i in 0..size {
            if d(i, i) != 0.0 {
                return Err(Error::InvalidMetric(format!("d({i},{i}) = {}", d(i, i))));
            }
            for j in 0..size {
                let x = d(i, j);
                if !x.is_finite() || x < 0.0 || (x - d(j, i)).abs() > TOL {
                    return Err(Error::InvalidMetric(format!("bad entry d({i},{j}) = {x}")));
                }
                for k in 0..size {
                    if x > d(i, k) + d(k, j) + TOL {
                        return Err(Error::InvalidMetric(format!("triangle inequality fails at ({i},{k},{j})")));
                    }
                }
            }
        }
        Ok(Self { size, dist, base })
    }

    /// Builds a space from integer graph distances.
    pub fn from_u32(size: usize, dist: &[u32], base: usize) -> Result<Self> {
        Self::new(size, dist.iter().map(|&x| x as f64).collect(), base)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.size + j]
    }

    /// The space with all distances multiplied by `lambda`.
    pub fn rescale(&self, lambda: f64) -> Self {
        Self { size: self.size, dist: self.dist.iter().map(|x| x * lambda).collect(), base: self.base }
    }

    /// Indices of the points within distance `r` of the base, in increasing order.
    pub fn ball_indices(&self, r: f64) -> Vec<usize> {
        (0..self.size).filter(|&i| self.d(self.base, i) <= r + TOL).collect()
    }

    /// The closed ball of radius `r` around the base, as a pointed subspace.
    pub fn ball(&self, r: f64) -> Self {
        self.subspace(&self.ball_indices(r))
    }

    /// The subspace on `points`, which must contain the base.
    pub fn subspace(&self, points: &[usize]) -> Self {
        let k = points.len();
        let mut dist = Vec::with_capacity(k * k);
        for &i in points {
            for &j in points {
                dist.push(self.d(i, j));
            }
        }
        let base = points.iter().position(|&p| p == self.base).expect("subspace contains the base");
        Self { size: k, dist, base }
    }
}

/// A set of index pairs relating two spaces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Correspondence {
    pub pairs: Vec<(usize, usize)>,
}

impl Correspondence {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        Self { pairs }
    }

    /// `{(i, i)}` on a space of the given size.
    pub fn identity(size: usize) -> Self {
        Self::new((0..size).map(|i| (i, i)).collect())
    }

    /// Whether every point on both sides appears in some pair.
    pub fn is_full(&self, a: usize, b: usize) -> bool {
        let mut ca = vec![false; a];
        let mut cb = vec![false; b];
        for &(x, y) in &self.pairs {
            ca[x] = true;
            cb[y] = true;
        }
        ca.into_iter().all(|c| c) && cb.into_iter().all(|c| c)
    }
}

/// `sup |d_A(x, y) - d_B(x', y')|` over pairs `(x, x'), (y, y')` of `r`.
pub fn distortion(r: &Correspondence, a: &PointedMetricSpace, b: &PointedMetricSpace) -> f64 {
    let mut m: f64 = 0.0;
    for (k, &(x, xp)) in r.pairs.iter().enumerate() {
        for &(y, yp) in &r.pairs[k + 1..] {
            m = m.max((a.d(x, y) - b.d(xp, yp)).abs());
        }
    }
    m
}

/// Largest space size accepted by [`gh_exact`].
pub const GH_EXACT_MAX: usize = 7;

/// Exact pointed Gromov–Hausdorff distance between two small spaces: half
/// the least distortion of a correspondence containing the base pair.
///
/// Any correspondence contains one made of a partner for each point of `A`
/// and a partner for each point of `B`, with no larger distortion, so the
/// search ranges over such choices. The least distortion is one of the
/// values `|d_A(x,y) - d_B(x',y')|`, located by bisection.
pub fn gh_exact(a: &PointedMetricSpace, b: &PointedMetricSpace) -> Result<f64> {
    if a.size() > GH_EXACT_MAX || b.size() > GH_EXACT_MAX {
        return Err(Error::TooLarge(a.size(), b.size()));
    }
    let mut cands = vec![0.0];
    for x in 0..a.size() {
        for y in 0..a.size() {
            for xp in 0..b.size() {
                for yp in 0..b.size() {
                    cands.push((a.d(x, y) - b.d(xp, yp)).abs());
                }
            }
        }
    }
    cands.sort_by(f64::total_cmp);
    cands.dedup_by(|p, q| (*p - *q).abs() <= TOL);
    let (mut lo, mut hi) = (0usize, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if CorrespondenceSearch::new(a, b, cands[mid] + TOL).feasible() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(cands[lo] / 2.0)
}

struct CorrespondenceSearch<'s> {
    a: &'s PointedMetricSpace,
    b: &'s PointedMetricSpace,
    eps: f64,
    chosen: Vec<(usize, usize)>,
    covered_b: Vec<u32>,
}

impl<'s> CorrespondenceSearch<'s> {
    fn new(a: &'s PointedMetricSpace, b: &'s PointedMetricSpace, eps: f64) -> Self {
        Self { a, b, eps, chosen: Vec::new(), covered_b: vec![0; b.size()] }
    }

    fn compatible(&self, x: usize, xp: usize) -> bool {
        self.chosen.iter().all(|&(y, yp)| (self.a.d(x, y) - self.b.d(xp, yp)).abs() <= self.eps)
    }

    fn feasible(&mut self) -> bool {
        self.chosen.push((self.a.base, self.b.base));
        self.covered_b[self.b.base] += 1;
        self.assign_a(0)
    }

    fn push(&mut self, p: (usize, usize)) {
        self.chosen.push(p);
        self.covered_b[p.1] += 1;
    }

    fn pop(&mut self) {
        let p = self.chosen.pop().unwrap();
        self.covered_b[p.1] -= 1;
    }

    /// Chooses a partner for every point of `A` from index `x` on.
    fn assign_a(&mut self, x: usize) -> bool {
        if x == self.a.size() {
            return self.assign_b(0);
        }
        if x == self.a.base {
            return self.assign_a(x + 1);
        }
        for xp in 0..self.b.size() {
            if self.compatible(x, xp) {
                self.push((x, xp));
                if self.assign_a(x + 1) {
                    return true;
                }
                self.pop();
            }
        }
        false
    }

    /// Chooses a partner for every point of `B` left uncovered.
    fn assign_b(&mut self, yp: usize) -> bool {
        if yp == self.b.size() {
            return true;
        }
        if self.covered_b[yp] > 0 {
            return self.assign_b(yp + 1);
        }
        for y in 0..self.a.size() {
            if self.compatible(y, yp) {
                self.push((y, yp));
                if self.assign_b(yp + 1) {
                    return true;
                }
                self.pop();
            }
        }
        false
    }
}

/// Upper bound `(3/2)·dis(R)` on the Gromov–Hausdorff distance between the
/// balls of radius `r` around the base points, for a relation `R` that
/// contains the base pair and relates every point of both balls.
///
/// The bound needs geodesics to be approximable within the spaces; it holds
/// for graph metrics when `r` is an integer.
pub fn gh_ball_bound(a: &PointedMetricSpace, b: &PointedMetricSpace, r: f64, rel: &Correspondence) -> Result<f64> {
    if !rel.pairs.contains(&(a.base, b.base)) {
        return Err(Error::CoverageViolation("base pair missing".into()));
    }
    let mut ca = vec![false; a.size()];
    let mut cb = vec![false; b.size()];
    for &(x, y) in &rel.pairs {
        ca[x] = true;
        cb[y] = true;
    }
    if let Some(x) = a.ball_indices(r).into_iter().find(|&x| !ca[x]) {
        return Err(Error::CoverageViolation(format!("point {x} of the first ball is unrelated")));
    }
    if let Some(y) = b.ball_indices(r).into_iter().find(|&y| !cb[y]) {
        return Err(Error::CoverageViolation(format!("point {y} of the second ball is unrelated")));
    }
    Ok(1.5 * distortion(rel, a, b))
}
