//! Seeded randomness. Every random choice in the crate flows from a 64-bit
//! seed through SplitMix64, so runs are reproducible across platforms and
//! thread counts.
//!
//! Test vector: seed 0 yields `0xE220A8397B1DCDAF` as its first output.

use rand::SeedableRng;
pub use rand_xoshiro::SplitMix64;

pub fn seeded(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Independent stream for work item `index`, stable regardless of scheduling.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    use rand::RngCore;
    let mut base = seeded(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    base.next_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    #[test]
    fn reference_outputs() {
        let mut r = seeded(0);
        assert_eq!(r.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(r.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(r.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn derived_streams_differ() {
        assert_ne!(derive_seed(1, 0), derive_seed(1, 1));
        assert_eq!(derive_seed(1, 7), derive_seed(1, 7));
    }
}
