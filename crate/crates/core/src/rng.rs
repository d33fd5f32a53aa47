//! Splittable deterministic random streams.
//!
//! Every random decision in a dataset is drawn from a stream identified by a
//! path of indices below the master seed (master → image → artifact →
//! purpose/channel). Keys are derived by hashing, never by advancing a shared
//! generator, so output does not depend on thread count or scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StreamKey(u64);

impl StreamKey {
    pub const fn new(seed: u64) -> Self {
        StreamKey(seed)
    }

    pub const fn value(self) -> u64 {
        self.0
    }

    /// Key of the `index`-th sub-stream.
    pub fn child(self, index: u64) -> Self {
        let salt = mix(index.wrapping_add(1).wrapping_mul(GOLDEN));
        StreamKey(mix(self.0.rotate_left(23) ^ salt))
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}
