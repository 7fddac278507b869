//! Domain types for forests, bridges and their contour encodings, the
//! bridge/sign-sequence correspondence and exact counting.

pub mod bridge;
pub mod contour;
pub mod count;
pub mod forest;
pub mod tree;

pub use bridge::{bridge_to_signs, signs_to_bridge, Bridge, BridgeWindow};
pub use contour::{contour_of_forest, forest_of_contour, label_function, ContourPair, ForestLayout, LabelFunction};
pub use count::{count_bridges, count_forests, enumerate_bridges, enumerate_forests};
pub use forest::{ForestWindow, WellLabeledForest};
pub use tree::PlaneTree;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Serialized form of a forest/bridge pair, based on the contour encoding.
/// `bridge_partial` is only present for infinite-bridge windows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodedTriplet {
    pub sigma: usize,
    pub contour: Vec<i64>,
    pub labels: Vec<i64>,
    pub bridge: Vec<i64>,
    pub bridge_partial: Option<i64>,
}

impl EncodedTriplet {
    pub fn new(f: &WellLabeledForest, b: &Bridge) -> Result<Self> {
        if f.sigma() != b.sigma() {
            return Err(Error::LengthMismatch { expected: f.sigma(), found: b.sigma() });
        }
        let cp = contour_of_forest(f);
        Ok(Self {
            sigma: f.sigma(),
            contour: cp.c().to_vec(),
            labels: cp.l().to_vec(),
            bridge: b.values().to_vec(),
            bridge_partial: None,
        })
    }

    pub fn decode(&self) -> Result<(WellLabeledForest, Bridge)> {
        let cp = ContourPair::new(self.contour.clone(), self.labels.clone())?;
        if cp.sigma() != self.sigma {
            return Err(Error::LengthMismatch { expected: self.sigma, found: cp.sigma() });
        }
        let b = Bridge::new(self.bridge.clone())?;
        if b.sigma() != self.sigma {
            return Err(Error::LengthMismatch { expected: self.sigma, found: b.sigma() });
        }
        Ok((forest_of_contour(&cp), b))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}
