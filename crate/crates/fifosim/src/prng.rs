//! Deterministic pseudo-random number generation for stimulus.
//!
//! The generator is SplitMix64 (Sebastiano Vigna): a single 64-bit state
//! advanced by a fixed odd constant, with a finalizing mix. It is fast,
//! statistically solid for simulation workloads, and trivially reproducible
//! across languages, which makes seeds portable between implementations.
//! Any replacement must match the published test vectors (see tests).

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 generator. The seed fully determines the output stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `lo..=hi`.
    ///
    /// Uses a simple modulo reduction; for the span sizes used here
    /// (at most 2^64) the bias is negligible and the fixed consumption
    /// of exactly one `next_u64` per draw keeps replay trivial.
    #[inline]
    pub fn next_in_range(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        if hi - lo == u64::MAX {
            return self.next_u64();
        }
        lo + self.next_u64() % (hi - lo + 1)
    }
}
