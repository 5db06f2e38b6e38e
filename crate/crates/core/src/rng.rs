//! Deterministic, portable random number generation.
//!
//! Sampling must produce bit-identical streams for a given seed on every
//! platform, so the generator is pinned to SplitMix64 (Steele, Lea &
//! Flood's `splitmix64` update with the murmur-style finalizer). Reports
//! that involve sampling identify the generator by [`GENERATOR_ID`].

/// Name recorded in reports produced from sampled data.
pub const GENERATOR_ID: &str = "splitmix64";

/// SplitMix64 generator. The stream for seed 0 starts
/// `e220a8397b1dcdaf, 6e789e6aa1b965f4, 06c45d188009454f, ...`.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform on [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
