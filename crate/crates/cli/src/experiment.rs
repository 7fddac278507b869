//! Experiment spec files: an [`ExperimentSpec`] plus the experiment kind.
//!
//! ```json
//! { "kind": "regime", "name": "bm", "ns": [20000, 80000],
//!   "sigma": { "rule": "power", "alpha": 0.25 },
//!   "scale": { "c": 0.9710, "alpha": 0.25, "beta": 0.0 },
//!   "replicates": 1000, "seed": 1 }
//! ```

use anyhow::{bail, Context, Result};
use boundary_maps::statlab::experiments::{
    bridge_rescaled_ks, bridge_window_experiment, largest_tree_experiment, residual_forest_tv, ExperimentSpec, Record,
};
use boundary_maps::statlab::regimes::regime_profile;
use boundary_maps::statlab::rn::{rn_importance_check, scale_for_skewness};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    LargestTree,
    ResidualTv,
    BridgeKs,
    BridgeWindow,
    Regime,
    RnCheck,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecFile {
    pub kind: Kind,
    #[serde(flatten)]
    pub spec: ExperimentSpec,
}

impl SpecFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read spec file {}", path.display()))?;
        let s: SpecFile = serde_json::from_str(&text).with_context(|| format!("invalid spec file {}", path.display()))?;
        s.spec.validate()?;
        Ok(s)
    }
}

/// Change-of-measure check on the first size of the spec. Params: `theta`
/// (default 1), `s` (default 1), `a_n` (default from `theta`, required
/// when `theta = 0`), and thresholds `c1`, `c2` as multiples of `a_n⁴`
/// (defaults 2 and 4).
fn rn_records(spec: &ExperimentSpec) -> Result<Vec<Record>> {
    let n = spec.ns[0];
    let sigma = spec.sigma.sigma(n);
    let theta = spec.param("theta", 1.0);
    if theta < 0.0 {
        bail!("theta must be nonnegative");
    }
    let s = spec.param("s", 1.0);
    let a = match spec.params.get("a_n") {
        Some(&a) => a,
        None if theta > 0.0 => scale_for_skewness(n, sigma, theta),
        None => bail!("theta = 0 needs an explicit a_n parameter"),
    };
    let cs: Vec<u64> = [spec.param("c1", 2.0), spec.param("c2", 4.0)].iter().map(|k| (k * a.powi(4)).round() as u64).collect();
    let reports = rn_importance_check(n, sigma, theta, s, a, &cs, spec.replicates, spec.seed)?;
    let mut out = Vec::new();
    for r in reports {
        let rec = |stat: &str, v: f64| Record {
            experiment: "rn_check".into(),
            name: spec.name.clone(),
            n,
            sigma,
            a_n: r.a_n,
            replicate: None,
            statistic: format!("c{}_{stat}", r.c),
            value: v,
        };
        out.extend([
            rec("p_mean", r.p_mean),
            rec("p_se", r.p_se),
            rec("q_lambda_mean", r.q_lambda_mean),
            rec("q_lambda_se", r.q_lambda_se),
            rec("z", r.z),
            rec("q_exact_ratio_mean", r.q_exact_mean),
            rec("z_exact_ratio", r.z_exact),
            rec("p_exact", r.p_exact),
            rec("q_lambda_exact", r.q_lambda_exact),
        ]);
    }
    Ok(out)
}

pub fn run(file: &SpecFile) -> Result<Vec<Record>> {
    let spec = &file.spec;
    Ok(match file.kind {
        Kind::LargestTree => largest_tree_experiment(spec)?,
        Kind::ResidualTv => residual_forest_tv(spec)?,
        Kind::BridgeKs => bridge_rescaled_ks(spec)?,
        Kind::BridgeWindow => bridge_window_experiment(spec)?,
        Kind::Regime => regime_profile(spec)?,
        Kind::RnCheck => rn_records(spec)?,
    })
}
