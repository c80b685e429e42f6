//! Pairwise summation over index-generated terms.

use std::ops::Add;

const BLOCK: usize = 32;
const PAR_THRESHOLD: usize = 1 << 15;

/// Sums `term(lo..hi)` by recursive halving with naive blocks at the leaves.
/// The grouping depends only on the range, so results are reproducible.
pub fn pairwise<T, F>(lo: usize, hi: usize, term: &F) -> T
where
    T: Copy + Default + Add<Output = T>,
    F: Fn(usize) -> T,
{
    if hi - lo <= BLOCK {
        let mut acc = T::default();
        for i in lo..hi {
            acc = acc + term(i);
        }
        return acc;
    }
    let mid = lo + (hi - lo) / 2;
    pairwise(lo, mid, term) + pairwise(mid, hi, term)
}

/// Same tree as [`pairwise`], with large subtrees summed on the rayon pool.
/// The grouping is unchanged, so the result is bit-identical to the serial sum.
pub fn par_pairwise<T, F>(lo: usize, hi: usize, term: &F) -> T
where
    T: Copy + Default + Add<Output = T> + Send,
    F: Fn(usize) -> T + Sync,
{
    if hi - lo <= PAR_THRESHOLD {
        return pairwise(lo, hi, term);
    }
    let mid = lo + (hi - lo) / 2;
    let (a, b) = rayon::join(|| par_pairwise(lo, mid, term), || par_pairwise(mid, hi, term));
    a + b
}

pub fn par_pairwise_sum<T, F>(n: usize, term: F) -> T
where
    T: Copy + Default + Add<Output = T> + Send,
    F: Fn(usize) -> T + Sync,
{
    par_pairwise(0, n, &term)
}

pub fn pairwise_sum<T, F>(n: usize, term: F) -> T
where
    T: Copy + Default + Add<Output = T>,
    F: Fn(usize) -> T,
{
    pairwise(0, n, &term)
}
