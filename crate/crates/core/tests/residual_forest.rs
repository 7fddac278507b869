//! The residual forest at fixed boundary length approaches independent
//! Galton–Watson trees as the size grows.

use boundary_maps::statlab::{residual_forest_tv, ExperimentSpec, ScaleRule, SigmaRule};

#[test]
fn residual_tv_is_small_and_decreases_with_n() {
    let spec = ExperimentSpec::new(
        "residual_tv",
        vec![1000, 100_000],
        SigmaRule::Const { value: 20 },
        ScaleRule::new(1.0, 0.0, 0.0),
        10_000,
        1,
    );
    let tv: Vec<f64> = residual_forest_tv(&spec).unwrap().iter().filter(|r| r.statistic == "tv").map(|r| r.value).collect();
    assert!(tv[1] < 0.05, "TV at n = 1e5 is {}", tv[1]);
    assert!(tv[1] < tv[0], "TV did not decrease: {tv:?}");
}
