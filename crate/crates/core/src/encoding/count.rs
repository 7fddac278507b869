//! Exact counts of forests and bridges, plus brute-force enumerators used as
//! independent oracles for them.

use super::bridge::Bridge;
use super::forest::WellLabeledForest;
use super::tree::PlaneTree;
use num_bigint::BigUint;
use num_traits::One;

/// Binomial coefficient `C(a, b)` as an exact integer.
pub fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::from(0u32);
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// Number of well-labeled forests with `sigma` trees and `n` edges:
/// `3^n · σ/(2n+σ) · C(2n+σ, n)`.
pub fn count_forests(n: u64, sigma: u64) -> BigUint {
    assert!(sigma >= 1, "a forest has at least one tree");
    let total = 2 * n + sigma;
    BigUint::from(3u32).pow(n as u32) * binomial(total, n) * sigma / total
}

/// Number of bridges of length `sigma`: `C(2σ, σ)`.
pub fn count_bridges(sigma: u64) -> BigUint {
    assert!(sigma >= 1, "a bridge has length at least one");
    binomial(2 * sigma, sigma)
}

/// All plane trees with `k` edges, built recursively as a root followed by an
/// ordered sequence of subtrees.
pub fn enumerate_plane_trees(k: usize) -> Vec<PlaneTree> {
    tree_step_sequences(k).into_iter().map(|s| PlaneTree::from_steps(s).expect("generated sequences are Dyck paths")).collect()
}

fn tree_step_sequences(k: usize) -> Vec<Vec<bool>> {
    if k == 0 {
        return vec![vec![]];
    }
    // First subtree has `a` edges, the rest of the root's subtrees `k-1-a`.
    let mut out = Vec::new();
    for a in 0..k {
        let firsts = tree_step_sequences(a);
        let rests = tree_step_sequences(k - 1 - a);
        for f in &firsts {
            for r in &rests {
                let mut s = Vec::with_capacity(2 * k);
                s.push(true);
                s.extend_from_slice(f);
                s.push(false);
                s.extend_from_slice(r);
                out.push(s);
            }
        }
    }
    out
}

/// Every labeling of `t` with root label 0 and edge increments in {-1,0,1}.
pub fn enumerate_labelings(t: &PlaneTree) -> Vec<Vec<i64>> {
    let k = t.size();
    let mut out = Vec::with_capacity(3usize.pow(k as u32));
    let mut inc = vec![-1i64; k];
    loop {
        let mut lab = vec![0i64; k + 1];
        for v in 1..=k {
            let p = t.parent(v as u32).unwrap() as usize;
            lab[v] = lab[p] + inc[v - 1];
        }
        out.push(lab);
        let mut i = 0;
        while i < k && inc[i] == 1 {
            inc[i] = -1;
            i += 1;
        }
        if i == k {
            return out;
        }
        inc[i] += 1;
    }
}

/// All well-labeled forests with `sigma` trees and `n` edges.
pub fn enumerate_forests(n: usize, sigma: usize) -> Vec<WellLabeledForest> {
    let labeled: Vec<Vec<(PlaneTree, Vec<i64>)>> = (0..=n)
        .map(|k| {
            enumerate_plane_trees(k)
                .into_iter()
                .flat_map(|t| enumerate_labelings(&t).into_iter().map(move |l| (t.clone(), l)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut prefix: Vec<(PlaneTree, Vec<i64>)> = Vec::new();
    extend_forests(&labeled, n, sigma, &mut prefix, &mut out);
    out
}

fn extend_forests(
    labeled: &[Vec<(PlaneTree, Vec<i64>)>],
    remaining: usize,
    trees_left: usize,
    prefix: &mut Vec<(PlaneTree, Vec<i64>)>,
    out: &mut Vec<WellLabeledForest>,
) {
    if trees_left == 0 {
        if remaining == 0 {
            let (t, l) = prefix.iter().cloned().unzip();
            out.push(WellLabeledForest::new(t, l).expect("enumerated forests are well labeled"));
        }
        return;
    }
    let sizes = if trees_left == 1 { remaining..=remaining } else { 0..=remaining };
    for k in sizes {
        for tl in &labeled[k] {
            prefix.push(tl.clone());
            extend_forests(labeled, remaining - k, trees_left - 1, prefix, out);
            prefix.pop();
        }
    }
}

/// All bridges of length `sigma`, by direct search over step sequences.
pub fn enumerate_bridges(sigma: usize) -> Vec<Bridge> {
    let mut out = Vec::new();
    let mut path = vec![0i64];
    extend_bridges(sigma, &mut path, &mut out);
    out
}

fn extend_bridges(sigma: usize, path: &mut Vec<i64>, out: &mut Vec<Bridge>) {
    let i = path.len() - 1;
    let cur = path[i];
    if i == sigma {
        if cur <= 0 {
            out.push(Bridge::new(path.clone()).expect("enumerated bridges are valid"));
        }
        return;
    }
    // Each later step is at least -1, so the path must stay at or below the
    // number of steps left once this one is taken.
    let left = (sigma - i - 1) as i64;
    for next in (cur - 1)..=left {
        path.push(next);
        extend_bridges(sigma, path, out);
        path.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn spec_values() {
        assert_eq!(count_forests(1, 1), BigUint::from(3u32));
        assert_eq!(count_forests(2, 2), BigUint::from(45u32));
        for s in 1..6 {
            assert_eq!(count_forests(0, s), BigUint::one());
        }
        assert_eq!(count_bridges(1), BigUint::from(2u32));
        assert_eq!(count_bridges(2), BigUint::from(6u32));
        assert_eq!(count_bridges(5), BigUint::from(252u32));
    }

    #[test]
    fn catalan_trees() {
        let cat = [1usize, 1, 2, 5, 14, 42];
        for (k, &c) in cat.iter().enumerate() {
            let ts = enumerate_plane_trees(k);
            assert_eq!(ts.len(), c);
            assert_eq!(ts.iter().collect::<HashSet<_>>().len(), c);
        }
    }

    #[test]
    fn forest_formula_matches_enumeration() {
        for total in 1..=7usize {
            for sigma in 1..=total {
                let n = total - sigma;
                let all = enumerate_forests(n, sigma);
                let distinct: HashSet<_> = all.iter().collect();
                assert_eq!(distinct.len(), all.len());
                assert_eq!(BigUint::from(all.len()), count_forests(n as u64, sigma as u64), "n={n} σ={sigma}");
            }
        }
    }

    #[test]
    fn bridge_formula_matches_enumeration() {
        for sigma in 1..=6usize {
            let all = enumerate_bridges(sigma);
            assert_eq!(all.iter().collect::<HashSet<_>>().len(), all.len());
            assert_eq!(BigUint::from(all.len()), count_bridges(sigma as u64));
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), BigUint::from(120u32));
        assert_eq!(binomial(3, 5), BigUint::from(0u32));
        assert_eq!(binomial(0, 0), BigUint::one());
    }
}
