//! Fixed inputs shared by the benchmarks.

use hypercordial::{random_hypertree, theorem_applies, Hypertree};

/// Random hypertrees with `m` edges of size `p`, one per seed in `0..count`.
pub fn random_trees(p: usize, m: usize, count: u64) -> Vec<Hypertree> {
    (0..count)
        .map(|seed| random_hypertree(p, m, seed))
        .collect()
}

/// `(p, k)` pairs the construction covers, for `p` and `k` up to the limits.
pub fn covered_pairs(max_p: usize, max_k: usize) -> Vec<(usize, usize)> {
    (2..=max_p)
        .flat_map(|p| (2..=max_k).map(move |k| (p, k)))
        .filter(|&(p, k)| theorem_applies(p, k))
        .collect()
}
