//! Scaling experiments on sampled quadrangulations: rescaled diameters,
//! distance profiles from the root and ball volumes, across sizes.

use super::experiments::{ExperimentSpec, Record};
use super::stats::{ks_two_sample, ks_two_sample_critical, median, quantile};
use crate::bdg::sample_quadrangulation;
use crate::error::Result;
use crate::metrics::{bfs_distances, diameter};
use rayon::prelude::*;

/// Metric summaries of one sampled map, unscaled.
#[derive(Clone, Debug, PartialEq)]
pub struct MapProfile {
    pub diameter: u32,
    /// Quantiles 0.1, 0.5, 0.9 of the distance from the root vertex.
    pub root_profile: [f64; 3],
    pub eccentricity: u32,
    /// Fraction of inner faces with four distinct vertices.
    pub nondegenerate_faces: f64,
}

/// Samples a uniform quadrangulation with `n` inner faces and perimeter
/// `2σ` and summarizes its metric.
pub fn profile_map<R: rand::Rng + ?Sized>(n: usize, sigma: usize, rng: &mut R) -> Result<MapProfile> {
    let (q, _, _) = sample_quadrangulation(n, sigma, rng)?;
    let d = bfs_distances(&q.map, q.root_vertex());
    let dist: Vec<f64> = d.iter().map(|&x| x as f64).collect();
    let faces = q.map.faces();
    let root = q.map.root.unwrap();
    let mut inner = 0usize;
    let mut good = 0usize;
    for f in &faces {
        if f.len() != 4 || f.contains(&root) {
            continue;
        }
        inner += 1;
        let mut vs: Vec<u32> = f.iter().map(|&e| q.map.tail(e)).collect();
        vs.sort_unstable();
        vs.dedup();
        if vs.len() == 4 {
            good += 1;
        }
    }
    Ok(MapProfile {
        diameter: diameter(&q.map),
        root_profile: [quantile(&dist, 0.1), quantile(&dist, 0.5), quantile(&dist, 0.9)],
        eccentricity: *d.iter().max().unwrap(),
        nondegenerate_faces: if inner > 0 { good as f64 / inner as f64 } else { 1.0 },
    })
}

/// Diameters of `replicates` independent maps at `(n, σ)`.
pub fn sample_diameters(spec: &ExperimentSpec, cell: usize, n: u64, sigma: u64) -> Result<Vec<u32>> {
    (0..spec.replicates)
        .into_par_iter()
        .map(|r| {
            let (q, _, _) = sample_quadrangulation(n as usize, sigma as usize, &mut spec.rng(cell, r))?;
            Ok(diameter(&q.map))
        })
        .collect()
}

/// Per-replicate profiles for every size of the spec, rescaled by `a_n`,
/// and KS distances of the rescaled diameter between consecutive sizes
/// with the critical value at level `alpha` (param, default `1e-3`).
pub fn regime_profile(spec: &ExperimentSpec) -> Result<Vec<Record>> {
    spec.validate()?;
    let alpha = spec.param("alpha", 1e-3);
    let mut out = Vec::new();
    let mut prev: Option<Vec<f64>> = None;
    for (cell, &n) in spec.ns.iter().enumerate() {
        let sigma = spec.sigma.sigma(n);
        let a = spec.scale.a(n, sigma);
        let profiles: Vec<MapProfile> = (0..spec.replicates)
            .into_par_iter()
            .map(|r| profile_map(n as usize, sigma as usize, &mut spec.rng(cell, r)))
            .collect::<Result<_>>()?;
        let diam: Vec<f64> = profiles.iter().map(|p| p.diameter as f64 / a).collect();
        for (r, p) in profiles.iter().enumerate() {
            let rep = Some(r as u64);
            out.push(Record::new("regime", spec, n, sigma, rep, "diameter_rescaled", p.diameter as f64 / a));
            out.push(Record::new("regime", spec, n, sigma, rep, "root_eccentricity_rescaled", p.eccentricity as f64 / a));
            for (q, v) in ["q10", "q50", "q90"].iter().zip(p.root_profile) {
                out.push(Record::new("regime", spec, n, sigma, rep, &format!("root_distance_{q}_rescaled"), v / a));
            }
            out.push(Record::new("regime", spec, n, sigma, rep, "nondegenerate_face_fraction", p.nondegenerate_faces));
        }
        out.push(Record::new("regime", spec, n, sigma, None, "median_diameter_rescaled", median(&diam)));
        if let Some(p) = prev.as_ref() {
            out.push(Record::new("regime", spec, n, sigma, None, "ks_vs_previous_n", ks_two_sample(p, &diam)));
            out.push(Record::new(
                "regime",
                spec,
                n,
                sigma,
                None,
                "ks_critical",
                ks_two_sample_critical(p.len(), diam.len(), alpha),
            ));
        }
        prev = Some(diam);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngConfig;
    use crate::statlab::experiments::{ScaleRule, SigmaRule};

    #[test]
    fn profile_of_small_map() {
        let mut rng = RngConfig::new(1).rng();
        let p = profile_map(200, 5, &mut rng).unwrap();
        assert!(p.eccentricity <= p.diameter);
        assert!(p.root_profile[0] <= p.root_profile[2]);
        assert!((0.0..=1.0).contains(&p.nondegenerate_faces));
    }

    #[test]
    fn huge_scale_shrinks_diameter() {
        let spec =
            ExperimentSpec::new("t", vec![200, 3200], SigmaRule::Power { alpha: 0.25 }, ScaleRule::new(1.0, 0.5, 0.0), 20, 2);
        let r = regime_profile(&spec).unwrap();
        let med: Vec<f64> = r.iter().filter(|x| x.statistic == "median_diameter_rescaled").map(|x| x.value).collect();
        assert!(med[1] < med[0]);
        assert!(r.iter().any(|x| x.statistic == "ks_vs_previous_n"));
    }
}
