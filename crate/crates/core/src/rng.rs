//! Replayable random streams.
//!
//! Every random draw in the crate goes through a [`RngStream`], a
//! `(seed, stream_id)` label over ChaCha8. The ChaCha keystream and
//! `seed_from_u64` expansion are specified bit-for-bit, so equal labels
//! give equal draws on every platform.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    /// A fresh generator positioned at the start of this stream.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }

    /// Derive an independent child stream for a named sub-task.
    ///
    /// The child keeps `stream_id` and re-keys the seed, so children of
    /// distinct labels never share a keystream with each other or with
    /// the parent.
    pub fn substream(&self, label: u64) -> Self {
        let key = splitmix64(self.seed ^ splitmix64(label.wrapping_add(0xA076_1D64_78BD_642F)));
        Self {
            seed: key,
            stream_id: self.stream_id,
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn equal_labels_replay() {
        let a: Vec<u64> = (0..16).map({
            let mut r = RngStream::new(7, 3).rng();
            move |_| r.gen()
        }).collect();
        let b: Vec<u64> = (0..16).map({
            let mut r = RngStream::new(7, 3).rng();
            move |_| r.gen()
        }).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn streams_and_substreams_differ() {
        let first = |s: RngStream| s.rng().gen::<u64>();
        let base = RngStream::new(7, 3);
        assert_ne!(first(base), first(RngStream::new(7, 4)));
        assert_ne!(first(base), first(base.substream(1)));
        assert_ne!(first(base.substream(1)), first(base.substream(2)));
    }

    #[test]
    fn keystream_is_pinned() {
        // Regression pins: a change here means every seeded result changes.
        assert_eq!(RngStream::new(0, 0).rng().gen::<u64>(), 13_080_132_717_333_068_652);
        assert_eq!(RngStream::new(7, 3).rng().gen::<u64>(), 3_348_856_302_973_006_449);
        assert_eq!(RngStream::new(7, 3).substream(1).seed, 14_915_628_732_213_108_480);
    }
}
