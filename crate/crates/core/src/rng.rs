//! Stateless per-item randomness so parallel loops stay deterministic.

#[inline]
pub(crate) fn mix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Uniform value in `[0, bound)` for item `i` of stream `seed`.
#[inline]
pub(crate) fn hash_below(seed: u64, i: u64, bound: usize) -> usize {
    debug_assert!(bound > 0);
    ((mix64(seed ^ mix64(i)) as u128 * bound as u128) >> 64) as usize
}
