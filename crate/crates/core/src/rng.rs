//! Reproducible random streams.
//!
//! Every sample is drawn from a ChaCha8 generator keyed by a 64-bit seed and
//! a stream id. ChaCha is counter based, so distinct stream ids give
//! independent substreams without any coordination between workers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub type StreamRng = ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngConfig {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngConfig {
    pub fn new(seed: u64) -> Self {
        Self { seed, stream_id: 0 }
    }

    /// The same seed on a different substream, typically one per replicate.
    pub fn stream(self, stream_id: u64) -> Self {
        Self { stream_id, ..self }
    }

    pub fn rng(&self) -> StreamRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}
