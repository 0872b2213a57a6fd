use std::collections::BTreeMap;

use super::canon::{canonical_code, canonical_form};
use super::Hypertree;

/// Every `p`-uniform hypertree with `m` edges, one per isomorphism class.
///
/// Trees are grown edge by edge, each new edge sharing exactly one vertex
/// with the current tree. Every hypertree has a pendant edge, so peeling it
/// off gives a smaller hypertree from which the larger one is reached again;
/// keeping one representative per class at each size therefore loses nothing.
/// Classes are told apart with the exact canonical code from
/// [`canonical_code`], and each tree is emitted in its canonical form, in
/// increasing order of code.
///
/// # Panics
///
/// Panics if `p < 2` or `m < 1`.
pub fn enumerate_hypertrees(p: usize, m: usize) -> impl Iterator<Item = Hypertree> {
    assert!(
        p >= 2 && m >= 1,
        "enumerate_hypertrees needs p >= 2 and m >= 1"
    );
    let single = Hypertree::single_edge(p).expect("p >= 2");
    let mut level = vec![single];
    for _ in 1..m {
        let mut next = BTreeMap::new();
        for t in &level {
            for anchor in 0..t.n() {
                let grown = t.attach_leaf_edge(anchor);
                next.entry(canonical_code(&grown))
                    .or_insert_with(|| canonical_form(&grown));
            }
        }
        level = next.into_values().collect();
    }
    level.into_iter()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts_match_known_values() {
        // Unlabelled trees on 2..=7 vertices.
        let expected = [1, 1, 2, 3, 6, 11];
        for (m, &count) in (1..=6).zip(expected.iter()) {
            assert_eq!(enumerate_hypertrees(2, m).count(), count, "m = {m}");
        }
    }

    #[test]
    fn small_triple_systems() {
        assert_eq!(enumerate_hypertrees(3, 1).count(), 1);
        assert_eq!(enumerate_hypertrees(3, 2).count(), 1);
    }

    #[test]
    fn output_is_canonical_and_valid() {
        for t in enumerate_hypertrees(3, 4) {
            assert_eq!(canonical_form(&t), t);
            assert_eq!(Hypertree::new(3, t.n(), t.edges().to_vec()).unwrap(), t);
        }
    }
}
