//! Deterministic seed derivation.
//!
//! Everything randomized in this crate draws from a ChaCha stream seeded
//! through [`split_seed`], which maps a master seed plus a stream index to an
//! independent child seed via the SplitMix64 finalizer. Work items (images,
//! augmentation entries, epochs) own disjoint indices, so processing them in
//! any order — or in parallel — produces bit-identical results to a serial
//! run.

/// Derives the `index`-th child seed of `master`. Pure function; distinct
/// indices give statistically independent streams.
pub fn split_seed(master: u64, index: u64) -> u64 {
    // SplitMix64: advance by the golden-ratio increment, then finalize.
    let mut z = master
        .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stream-index offsets so different pipeline phases never share a child
/// stream even under the same master seed.
pub mod domains {
    /// Synthetic image generation: image `i` uses `SYNTH + i`.
    pub const SYNTH: u64 = 0x0100_0000;
    /// Augmentation plan application: entry `i` uses `AUGMENT + i`.
    pub const AUGMENT: u64 = 0x0200_0000;
    /// Training: epoch shuffles and batch-level draws.
    pub const TRAIN: u64 = 0x0300_0000;
    /// Model parameter initialization, further split per component.
    pub const MODEL_INIT: u64 = 0x0400_0000;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_index_sensitive() {
        assert_eq!(split_seed(42, 0), split_seed(42, 0));
        assert_ne!(split_seed(42, 0), split_seed(42, 1));
        assert_ne!(split_seed(42, 0), split_seed(43, 0));
    }

    #[test]
    fn no_collisions_over_a_small_window() {
        let mut seen = std::collections::HashSet::new();
        for master in [0u64, 1, 42, u64::MAX] {
            for i in 0..1000 {
                assert!(seen.insert(split_seed(master, i)));
            }
        }
    }
}
