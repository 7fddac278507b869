//! Grid discretizations of the continuum objects: driving paths, snakes,
//! contour and label processes, and the glued pseudo-metric they code.

pub mod generators;
pub mod kernels;
pub mod metric;
pub mod objects;
pub mod path;
pub mod snake;

pub use generators::{
    pitman_exact, sample_bessel3, sample_bm, sample_brownian_bridge_at, sample_fp_bridge, sample_two_sided_bm_at, BmGrid,
};
pub use kernels::{bessel_r, h, heat_p, hit_g, killed_p, pitman_q, simpson};
pub use metric::{
    cactus_disk_bound, cactus_interval_bound, default_glue_eps, grid_metric_d, grid_metric_d_from, lattice_glue_eps,
    GridPseudoMetric, TreeDistance,
};
pub use objects::{
    label_process, sample_bd, sample_bd_contour, sample_bhp, sample_bhp_contour, sample_bp, sample_bp_contour, sample_ibd,
    sample_ibd_contour, sample_labels, Boundary, ContinuumSample, Contour,
};
pub use path::{pitman, pitman_walk, prefix_min, suffix_min, underline, PathGrid, Underline};
pub use snake::{sample_snake, sample_snake_recursive, SnakeCholesky};
