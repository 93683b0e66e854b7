//! Seeded, splittable random streams.
//!
//! Reproducibility contract: a run is identified by a 64-bit seed, and trial
//! `i` always draws from stream `i` of a ChaCha8 generator keyed by that
//! seed. Streams are independent of how trials are scheduled across worker
//! threads, so parallel runs are bit-identical to serial ones.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed used when neither `--seed` nor the `QPC_SEED` environment variable
/// is given. Fixed so that default runs are reproducible.
pub const DEFAULT_SEED: u64 = 0xC05A11C;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Root generator for one run; per-trial streams derive from it by index.
#[derive(Debug, Clone)]
pub struct RunRng {
    key: [u8; 32],
}

impl RunRng {
    /// Expand a 64-bit seed into a full 256-bit ChaCha key.
    pub fn from_seed(seed: u64) -> Self {
        let mut state = seed;
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        RunRng { key }
    }

    /// The generator for one trial. Same `(seed, trial)` always yields the
    /// same draw sequence.
    pub fn trial_stream(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::from_seed(self.key);
        rng.set_stream(trial);
        rng
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_reproducible() {
        let root = RunRng::from_seed(7);
        let mut s1 = root.trial_stream(3);
        let mut s2 = RunRng::from_seed(7).trial_stream(3);
        for _ in 0..64 {
            assert_eq!(s1.gen::<u64>(), s2.gen::<u64>());
        }
    }

    #[test]
    fn streams_differ_by_trial_and_seed() {
        let root = RunRng::from_seed(7);
        let x: u64 = root.trial_stream(0).gen();
        let y: u64 = root.trial_stream(1).gen();
        let z: u64 = RunRng::from_seed(8).trial_stream(0).gen();
        assert_ne!(x, y);
        assert_ne!(x, z);
    }

    #[test]
    fn key_expansion_spreads_bits() {
        // adjacent seeds must not share key bytes wholesale
        let a = RunRng::from_seed(0).key;
        let b = RunRng::from_seed(1).key;
        let same = a.iter().zip(b.iter()).filter(|(x, y)| x == y).count();
        assert!(same < 8);
    }
}
