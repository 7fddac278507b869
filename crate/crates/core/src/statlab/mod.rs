//! Exact laws and Monte Carlo experiments: bridge and forest combinatorics,
//! goodness-of-fit statistics, scaling regimes and the change-of-measure
//! check for forest windows.

pub mod exact;
pub mod experiments;
pub mod regimes;
pub mod rn;
pub mod stats;

pub use exact::{
    benes_pmf, bridge_endpoint_pmf, bridge_window_max_rel_dev, bridge_window_ratio, bridge_window_tv, kemperman_count,
    kemperman_pmf, local_clt, srw_pmf,
};
pub use experiments::{
    bridge_rescaled_ks, bridge_window_experiment, largest_tree_experiment, residual_forest_tv, ExperimentSpec, Record, ScaleRule,
    SigmaRule,
};
pub use regimes::{profile_map, regime_profile, MapProfile};
pub use rn::{rn_importance_check, rn_weight, RnReport};
pub use stats::{chi_square, ks_one_sample, ks_two_sample, ChiSquare};
