const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index`: the base seed XOR a scrambled trial index.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    base ^ mix64(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA))
}
