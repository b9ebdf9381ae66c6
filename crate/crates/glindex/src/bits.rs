//! Bitmask helpers for subsets of a vertex set of at most 64 elements.

/// All subsets of `{0..n-1}` with exactly `k` elements, as masks in
/// increasing numeric order (Gosper's hack).
pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<u64> {
    assert!(n <= 64);
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let limit: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut out = Vec::new();
    let mut v: u64 = (1 << k) - 1;
    while v <= limit {
        out.push(v);
        // Next higher number with the same popcount.
        let t = v | (v - 1);
        if t == u64::MAX {
            break;
        }
        v = (t + 1) | (((!t & (t + 1)) - 1) >> (v.trailing_zeros() + 1));
    }
    out
}

/// The 0-based indices of the set bits, ascending.
pub(crate) fn mask_to_vec(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Renumbers the bits of `mask` (a subset of `within`) to the positions
/// 0..popcount(within), keeping relative order.
pub(crate) fn compress(mask: u64, within: u64) -> u64 {
    debug_assert_eq!(mask & !within, 0);
    let mut out = 0u64;
    let mut w = within;
    let mut pos = 0;
    while w != 0 {
        let bit = w & w.wrapping_neg();
        if mask & bit != 0 {
            out |= 1 << pos;
        }
        pos += 1;
        w &= w - 1;
    }
    out
}
