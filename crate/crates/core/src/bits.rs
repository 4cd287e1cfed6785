//! Small helpers for vertex subsets encoded as `u64` masks.

use alloc::vec::Vec;

pub(crate) fn mask_of(vertices: impl IntoIterator<Item = usize>) -> u64 {
    vertices.into_iter().fold(0u64, |m, v| m | (1u64 << v))
}

pub(crate) fn members(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    core::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        }
    })
}

pub(crate) fn popcount(mask: u64) -> usize {
    mask.count_ones() as usize
}

/// All masks over `n` bits with exactly `k` members, increasing.
pub(crate) fn masks_of_size(n: usize, k: usize) -> Vec<u64> {
    (0..1u64 << n).filter(|m| popcount(*m) == k).collect()
}

/// Image of a mask under a partial map; `None` if some member is unmapped.
pub(crate) fn map_mask(mask: u64, image: &[Option<usize>]) -> Option<u64> {
    let mut out = 0u64;
    for v in members(mask) {
        out |= 1u64 << image.get(v).copied().flatten()?;
    }
    Some(out)
}
