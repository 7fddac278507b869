//! Tree pseudo-distances coded by grid paths, the glued pseudo-metric `D`,
//! and cactus lower bounds.

use super::path::PathGrid;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Sparse-table range minimum over a fixed array.
#[derive(Clone, Debug)]
struct RangeMin {
    table: Vec<Vec<f64>>,
}

impl RangeMin {
    fn new(v: &[f64]) -> Self {
        let mut table = vec![v.to_vec()];
        let mut w = 1;
        while 2 * w <= v.len() {
            let prev = table.last().unwrap();
            let next = (0..=v.len() - 2 * w).map(|i| prev[i].min(prev[i + w])).collect();
            table.push(next);
            w *= 2;
        }
        Self { table }
    }

    /// Minimum over the inclusive range `i..=j` (`i <= j`).
    fn min(&self, i: usize, j: usize) -> f64 {
        let k = (usize::BITS - 1 - (j - i + 1).leading_zeros()) as usize;
        self.table[k][i].min(self.table[k][j + 1 - (1 << k)])
    }
}

/// `d_f(s,t) = f_s + f_t - 2 max(min_{[s,t]} f, min_{[start,s] ∪ [t,end]} f)`
/// on a grid, where the outside minimum also includes the tail infima of
/// the path. On a compact grid this makes the two ends of the grid
/// equivalent whenever `f` takes the same value there.
#[derive(Clone, Debug)]
pub struct TreeDistance {
    values: Vec<f64>,
    rmq: RangeMin,
    prefix: Vec<f64>,
    suffix: Vec<f64>,
    inf_before: f64,
    inf_after: f64,
}

impl TreeDistance {
    pub fn new(path: &PathGrid) -> Self {
        let values = path.values.clone();
        Self {
            rmq: RangeMin::new(&values),
            prefix: super::path::prefix_min(&values),
            suffix: super::path::suffix_min(&values),
            values,
            inf_before: path.inf_before,
            inf_after: path.inf_after,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// Minimum over `[s, t]`.
    pub fn inside_min(&self, s: usize, t: usize) -> f64 {
        let (s, t) = (s.min(t), s.max(t));
        self.rmq.min(s, t)
    }

    /// Minimum over `[start, s] ∪ [t, end]` and the tails beyond the grid.
    pub fn outside_min(&self, s: usize, t: usize) -> f64 {
        let (s, t) = (s.min(t), s.max(t));
        self.inf_before.min(self.inf_after).min(self.prefix[s]).min(self.suffix[t])
    }

    pub fn d(&self, s: usize, t: usize) -> f64 {
        if s == t {
            return 0.0;
        }
        let m = self.inside_min(s, t).max(self.outside_min(s, t));
        (self.values[s] + self.values[t] - 2.0 * m).max(0.0)
    }
}

/// A symmetric pseudo-distance matrix on grid indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPseudoMetric {
    pub m: usize,
    pub d: Vec<f64>,
}

impl GridPseudoMetric {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.m + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.d[i * self.m..(i + 1) * self.m]
    }

    /// Checks nonnegativity, symmetry, zero diagonal and the triangle
    /// inequality up to `tol`.
    pub fn check_pseudometric(&self, tol: f64) -> Result<()> {
        let m = self.m;
        for i in 0..m {
            if self.get(i, i).abs() > tol {
                return Err(Error::InvalidMetric(format!("D({i},{i}) = {}", self.get(i, i))));
            }
            for j in 0..m {
                let a = self.get(i, j);
                if a < -tol || (a - self.get(j, i)).abs() > tol {
                    return Err(Error::InvalidMetric(format!("D({i},{j}) = {a}, D({j},{i}) = {}", self.get(j, i))));
                }
            }
        }
        for k in 0..m {
            let rk = self.row(k);
            for i in 0..m {
                let dik = self.get(i, k);
                let ri = self.row(i);
                for j in 0..m {
                    if ri[j] > dik + rk[j] + tol {
                        return Err(Error::InvalidMetric(format!("triangle fails at ({i},{k},{j})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Binary row-major little-endian `f64` payload.
    pub fn to_le_bytes(&self) -> Vec<u8> {
        self.d.iter().flat_map(|x| x.to_le_bytes()).collect()
    }
}

/// Default gluing tolerance, equal to [`lattice_glue_eps`]. Any tolerance
/// at least as large as a neighbor increment glues the whole grid into one
/// class through the transitive closure.
pub fn default_glue_eps(contour: &PathGrid) -> f64 {
    lattice_glue_eps(contour)
}

/// Gluing tolerance that identifies exactly the points at contour distance
/// 0 when the contour lives on a lattice: half its smallest nonzero increment.
pub fn lattice_glue_eps(contour: &PathGrid) -> f64 {
    let s = contour.values.windows(2).map(|w| (w[1] - w[0]).abs()).filter(|&x| x > 0.0).fold(f64::INFINITY, f64::min);
    if s.is_finite() {
        0.5 * s
    } else {
        0.0
    }
}

/// Equivalence classes of grid points under `d_contour ≤ eps`.
#[derive(Clone, Debug)]
pub struct GlueClasses {
    pub class_of: Vec<usize>,
    pub count: usize,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn glue_classes(contour: &TreeDistance, eps: f64) -> GlueClasses {
    let m = contour.len();
    let mut parent: Vec<usize> = (0..m).collect();
    for i in 0..m {
        for j in i + 1..m {
            if contour.d(i, j) <= eps {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut id = vec![usize::MAX; m];
    let mut class_of = vec![0; m];
    let mut count = 0;
    for i in 0..m {
        let r = find(&mut parent, i);
        if id[r] == usize::MAX {
            id[r] = count;
            count += 1;
        }
        class_of[i] = id[r];
    }
    GlueClasses { class_of, count }
}

/// Dense weights between glue classes: the smallest label distance between
/// any two of their members.
fn class_weights(labels: &TreeDistance, classes: &GlueClasses) -> Vec<f64> {
    let c = classes.count;
    let mut w = vec![f64::INFINITY; c * c];
    let m = labels.len();
    for i in 0..m {
        let a = classes.class_of[i];
        w[a * c + a] = 0.0;
        for j in i + 1..m {
            let b = classes.class_of[j];
            let d = labels.d(i, j);
            if d < w[a * c + b] {
                w[a * c + b] = d;
                w[b * c + a] = d;
            }
        }
    }
    w
}

fn check_grids(contour: &PathGrid, labels: &PathGrid) -> Result<()> {
    if contour.len() != labels.len() {
        return Err(Error::LengthMismatch { expected: contour.len(), found: labels.len() });
    }
    Ok(())
}

/// The glued pseudo-metric on grid indices: shortest paths in the graph
/// with label-distance edges and free moves between points at contour
/// distance at most `eps`.
pub fn grid_metric_d(contour: &PathGrid, labels: &PathGrid, eps: f64) -> Result<GridPseudoMetric> {
    check_grids(contour, labels)?;
    let (dx, dw) = (TreeDistance::new(contour), TreeDistance::new(labels));
    let classes = glue_classes(&dx, eps);
    let c = classes.count;
    let mut w = class_weights(&dw, &classes);
    for k in 0..c {
        let rk: Vec<f64> = w[k * c..(k + 1) * c].to_vec();
        for i in 0..c {
            let dik = w[i * c + k];
            if !dik.is_finite() {
                continue;
            }
            let ri = &mut w[i * c..(i + 1) * c];
            for j in 0..c {
                let v = dik + rk[j];
                if v < ri[j] {
                    ri[j] = v;
                }
            }
        }
    }
    let m = contour.len();
    let mut d = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            d[i * m + j] = w[classes.class_of[i] * c + classes.class_of[j]];
        }
    }
    Ok(GridPseudoMetric { m, d })
}

/// `D(source, ·)` by dense Dijkstra on the glue classes, for grids too
/// large for the full matrix.
pub fn grid_metric_d_from(contour: &PathGrid, labels: &PathGrid, eps: f64, source: usize) -> Result<Vec<f64>> {
    check_grids(contour, labels)?;
    let (dx, dw) = (TreeDistance::new(contour), TreeDistance::new(labels));
    let classes = glue_classes(&dx, eps);
    let c = classes.count;
    let w = class_weights(&dw, &classes);
    let mut dist = vec![f64::INFINITY; c];
    let mut done = vec![false; c];
    dist[classes.class_of[source]] = 0.0;
    for _ in 0..c {
        let mut u = usize::MAX;
        let mut best = f64::INFINITY;
        for v in 0..c {
            if !done[v] && dist[v] < best {
                best = dist[v];
                u = v;
            }
        }
        if u == usize::MAX {
            break;
        }
        done[u] = true;
        let row = &w[u * c..(u + 1) * c];
        for v in 0..c {
            let nd = best + row[v];
            if nd < dist[v] {
                dist[v] = nd;
            }
        }
    }
    Ok(classes.class_of.iter().map(|&k| dist[k]).collect())
}

/// The cactus expression `W_s + W_t - 2 max(min_{[s,t]} W, min_{outside} W)`
/// taken literally with both minima over label values. This is the label
/// distance `d_W(s,t)` itself, so it bounds `D` from above.
pub fn cactus_interval_bound(labels: &TreeDistance, s: usize, t: usize) -> f64 {
    labels.d(s, t)
}

/// Cactus lower bound for a disk contour (a first-passage bridge whose
/// floor is the boundary cycle): `W_s + W_t - 2 max(m_in, m_out)`, where
/// `m_in` is the least label on the route from `s` to `t` through `[s,t]`
/// (ancestors of `s` and of `t` down to the floor, and the floor between
/// them) and `m_out` the least label on the route around the other side of
/// the boundary cycle.
pub fn cactus_disk_bound(contour: &PathGrid, labels: &PathGrid, s: usize, t: usize) -> f64 {
    if s == t {
        return 0.0;
    }
    let (s, t) = (s.min(t), s.max(t));
    let x = &contour.values;
    let w = &labels.values;
    let n = x.len();
    let mut m_in = f64::INFINITY;
    let mut run = f64::INFINITY;
    for r in s..=t {
        run = run.min(x[r]);
        if x[r] == run {
            m_in = m_in.min(w[r]);
        }
    }
    run = f64::INFINITY;
    for r in (s..=t).rev() {
        run = run.min(x[r]);
        if x[r] == run {
            m_in = m_in.min(w[r]);
        }
    }
    let mut m_out = f64::INFINITY;
    run = f64::INFINITY;
    for r in (0..=s).rev() {
        run = run.min(x[r]);
        if x[r] == run {
            m_out = m_out.min(w[r]);
        }
    }
    run = f64::INFINITY;
    for r in 0..=s {
        run = run.min(x[r]);
        if x[r] == run {
            m_out = m_out.min(w[r]);
        }
    }
    run = f64::INFINITY;
    for r in t..n {
        run = run.min(x[r]);
        if x[r] == run {
            m_out = m_out.min(w[r]);
        }
    }
    w[s] + w[t] - 2.0 * m_in.max(m_out)
}
