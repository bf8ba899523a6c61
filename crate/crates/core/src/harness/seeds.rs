//! Counter-based seed derivation: master → cell → instance → stream.

/// SplitMix64 finalizer.
pub fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Child seed `index` of `parent`.
pub fn derive(parent: u64, index: u64) -> u64 {
    mix(parent ^ mix(index ^ 0xD1B5_4A32_D192_ED03))
}

/// Per-instance sub-streams, disjoint from instance indices.
pub const PILOT_STREAM: u64 = 1 << 62;
pub const NOISE_STREAM: u64 = (1 << 62) + 1;
pub const AGENT_STREAM: u64 = (1 << 62) + 2;
pub const BOOTSTRAP_STREAM: u64 = (1 << 62) + 3;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_children() {
        let mut seen = std::collections::HashSet::new();
        for p in 0..50u64 {
            for i in 0..200u64 {
                assert!(seen.insert(derive(p, i)));
            }
        }
    }

    #[test]
    fn stable() {
        assert_eq!(derive(1, 2), derive(1, 2));
        assert_ne!(derive(1, 2), derive(2, 1));
    }
}
