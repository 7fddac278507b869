//! Uniform random quadrangulations with a boundary, built from labeled
//! forests and bridges through the Bouttier–Di Francesco–Guitter mapping,
//! together with the metric tools and continuum generators used to study
//! their scaling limits.
//!
//! Layout:
//! - [`encoding`]: forests, bridges, contour pairs, label functions, exact counts.
//! - [`samplers`]: exact uniform samplers, finite and windowed-infinite.
//! - [`bdg`]: the mapping itself, with successor computation and rooting.
//! - [`metrics`]: BFS, balls, local distance, distance bounds, Gromov–Hausdorff.
//! - [`continuum`]: grid generators for the limiting processes and the glued metric.
//! - [`statlab`]: exact laws and the Monte Carlo experiments built on them.

pub mod bdg;
pub mod continuum;
pub mod encoding;
pub mod error;
pub mod metrics;
pub mod rng;
pub mod samplers;
pub mod statlab;

pub use bdg::{build_quadrangulation, build_uihpq_window, PlanarMap, Quadrangulation, UihpqWindow};
pub use continuum::{GridPseudoMetric, PathGrid};
pub use encoding::{Bridge, BridgeWindow, ContourPair, ForestLayout, ForestWindow, LabelFunction, PlaneTree, WellLabeledForest};
pub use error::{Error, Result};
pub use metrics::{Correspondence, PointedMetricSpace};
pub use rng::RngConfig;
