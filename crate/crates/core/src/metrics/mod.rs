//! Graph metrics on planar maps: BFS distances, combinatorial balls and the
//! local distance between rooted maps, label-based distance bounds, exact
//! diameters, and Gromov–Hausdorff tools for small metric spaces.

pub mod balls;
pub mod bfs;
pub mod bounds;
pub mod diameter;
pub mod space;

pub use balls::{ball_agreement_radius, ball_code, combinatorial_ball, d_map, pointed_code};
pub use bfs::{bfs_distances, UNREACHED};
pub use bounds::{check_cactus, check_upper_bound, LabelBounds, ViolationReport};
pub use diameter::diameter;
pub use space::{distortion, gh_ball_bound, gh_exact, Correspondence, PointedMetricSpace};
