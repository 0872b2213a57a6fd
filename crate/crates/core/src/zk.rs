//! Distinct elements of `Z_k` with a prescribed sum.
//!
//! For every `k >= 2`, every size `1 <= l < k` and every target `a` there are
//! `l` pairwise distinct elements of `Z_k` summing to `a`. The constructive
//! solver [`distinct_subset_sum`] builds them from fixed-sum "skeleton" sets:
//!
//! - odd `k`: `Z_k` is `{0}` plus the inverse pairs `{x, k - x}`, and any union
//!   of whole pairs (with or without `0`) sums to `0`. Dropping the element
//!   `k - a` from such a zero-sum set of size `l + 1` that keeps the pair
//!   `{a, k - a}` leaves a set of size `l` summing to `a`.
//! - even `k`: `Z_k` is `{0, k/2}` plus the pairs `{x, k - x}` with
//!   `0 < x < k/2`, and any union of whole pairs together with `k/2` (with or
//!   without `0`) sums to `k/2`. Dropping `k/2 - a` from such a set of size
//!   `l + 1` gives sum `a`. Sizes one and two are enumerated directly.
//!
//! Pairs are always discarded in increasing order of their smaller element,
//! skipping the pair that has to survive.

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::labeling::Label;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZkError {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(usize),
    #[error("cannot choose {l} distinct elements from {available}")]
    InvalidSize { l: usize, available: usize },
    #[error("{value} is not an element of Z_{k}")]
    OutOfRange { value: usize, k: usize },
    #[error("no {l} distinct elements of Z_{k} sum to {a}")]
    Infeasible { k: usize, l: usize, a: Label },
}

/// `l` distinct elements of `Z_k`, ascending, whose sum is `target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetSumWitness {
    pub k: usize,
    pub target: Label,
    pub elements: Vec<Label>,
}

impl SubsetSumWitness {
    /// Re-checks distinctness, range and sum from scratch.
    pub fn verify(&self) -> bool {
        self.elements.iter().all(|&x| x < self.k)
            && self.elements.iter().all_unique()
            && self.elements.iter().sum::<usize>() % self.k == self.target
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn check_args(k: usize, l: usize, a: Label, available: usize) -> Result<(), ZkError> {
    if k < 2 {
        return Err(ZkError::InvalidModulus(k));
    }
    if a >= k {
        return Err(ZkError::OutOfRange { value: a, k });
    }
    if l < 1 || l > available {
        return Err(ZkError::InvalidSize { l, available });
    }
    Ok(())
}

/// Builds a set of `pairs_kept` inverse pairs `{x, k - x}` with
/// `1 <= x <= pairs_total`, plus the `fixed` elements. The pair containing
/// `keep` (if any) is never discarded.
fn skeleton(
    k: usize,
    pairs_total: usize,
    pairs_kept: usize,
    fixed: &[Label],
    keep: Option<Label>,
) -> Vec<Label> {
    let keep = keep.map(|x| x.min(k - x));
    debug_assert!(keep.is_none() || pairs_kept >= 1);
    let mut to_discard = pairs_total - pairs_kept;
    let mut set = fixed.to_vec();
    for x in 1..=pairs_total {
        if to_discard > 0 && Some(x) != keep {
            to_discard -= 1;
            continue;
        }
        set.push(x);
        set.push(k - x);
    }
    set.sort_unstable();
    set
}

/// Odd `k`: `l` distinct elements summing to `0`.
fn zero_sum_set(k: usize, l: usize, keep: Option<Label>) -> Vec<Label> {
    debug_assert!(k % 2 == 1 && (1..=k).contains(&l));
    let fixed: &[Label] = if l % 2 == 1 { &[0] } else { &[] };
    skeleton(k, (k - 1) / 2, l / 2, fixed, keep)
}

/// Even `k`: `l` distinct elements containing `k/2` and summing to `k/2`.
fn half_sum_set(k: usize, l: usize, keep: Option<Label>) -> Vec<Label> {
    debug_assert!(k.is_multiple_of(2) && (1..=k).contains(&l));
    let half = k / 2;
    if l.is_multiple_of(2) {
        skeleton(k, half - 1, (l - 2) / 2, &[0, half], keep)
    } else {
        skeleton(k, half - 1, (l - 1) / 2, &[half], keep)
    }
}

fn without(mut set: Vec<Label>, x: Label) -> Vec<Label> {
    let pos = set
        .iter()
        .position(|&y| y == x)
        .expect("element to drop is present");
    set.remove(pos);
    set
}

/// `l` distinct elements of `Z_k` summing to `a`, built constructively.
///
/// Always succeeds for `1 <= l < k`. For `l == k` the only candidate is `Z_k`
/// itself, whose sum is `0` for odd `k` and `k/2` for even `k`.
pub fn distinct_subset_sum(k: usize, l: usize, a: Label) -> Result<SubsetSumWitness, ZkError> {
    check_args(k, l, a, k)?;
    let elements = if l == k {
        if a != k * (k - 1) / 2 % k {
            return Err(ZkError::Infeasible { k, l, a });
        }
        (0..k).collect()
    } else if k % 2 == 1 {
        if a == 0 {
            zero_sum_set(k, l, None)
        } else {
            without(zero_sum_set(k, l + 1, Some(a)), k - a)
        }
    } else {
        let half = k / 2;
        if a == half {
            half_sum_set(k, l, None)
        } else if l <= 2 {
            small_even(k, l, a)
        } else {
            let drop = (half + k - a) % k;
            let keep = (drop != half).then_some(drop);
            without(half_sum_set(k, l + 1, keep), drop)
        }
    };
    let witness = SubsetSumWitness {
        k,
        target: a,
        elements,
    };
    debug_assert!(
        witness.verify(),
        "construction failed for k={k} l={l} a={a}"
    );
    Ok(witness)
}

/// Sizes one and two for even `k`: `{a}`, or the first `{x, a - x}` with `x < a - x`.
fn small_even(k: usize, l: usize, a: Label) -> Vec<Label> {
    if l == 1 {
        return vec![a];
    }
    (0..k)
        .map(|x| (x, (a + k - x) % k))
        .find(|&(x, y)| x < y)
        .map(|(x, y)| vec![x, y])
        .expect("k >= 4 leaves room for two distinct summands")
}

/// `l` distinct elements of `Z_k \ forbidden` summing to `a`.
///
/// Searches the reduced ground set with a table of reachable (count, sum)
/// states and returns the lexicographically smallest witness.
pub fn distinct_subset_sum_avoiding(
    k: usize,
    l: usize,
    a: Label,
    forbidden: &[Label],
) -> Result<SubsetSumWitness, ZkError> {
    let ground = ground_set(k, forbidden)?;
    check_args(k, l, a, ground.len())?;

    // reach[i][j][s]: j elements of ground[i..] can sum to s.
    let g = ground.len();
    let mut reach = vec![vec![vec![false; k]; l + 1]; g + 1];
    reach[g][0][0] = true;
    for i in (0..g).rev() {
        let x = ground[i];
        for j in 0..=l {
            for s in 0..k {
                reach[i][j][s] =
                    reach[i + 1][j][s] || (j > 0 && reach[i + 1][j - 1][(s + k - x) % k]);
            }
        }
    }
    if !reach[0][l][a] {
        return Err(ZkError::Infeasible { k, l, a });
    }

    let mut elements = Vec::with_capacity(l);
    let (mut need, mut sum) = (l, a);
    for (i, &x) in ground.iter().enumerate() {
        if need == 0 {
            break;
        }
        let rest = (sum + k - x) % k;
        if reach[i + 1][need - 1][rest] {
            elements.push(x);
            need -= 1;
            sum = rest;
        }
    }
    Ok(SubsetSumWitness {
        k,
        target: a,
        elements,
    })
}

/// Exhaustive reference: the first `l`-subset of `Z_k \ forbidden`, in
/// lexicographic order, that sums to `a`; `None` if there is none or the
/// arguments are out of range.
pub fn oracle_subset_sum(
    k: usize,
    l: usize,
    a: Label,
    forbidden: &[Label],
) -> Option<SubsetSumWitness> {
    let ground = ground_set(k, forbidden).ok()?;
    check_args(k, l, a, ground.len()).ok()?;
    ground
        .into_iter()
        .combinations(l)
        .find(|c| c.iter().sum::<usize>() % k == a)
        .map(|elements| SubsetSumWitness {
            k,
            target: a,
            elements,
        })
}

fn ground_set(k: usize, forbidden: &[Label]) -> Result<Vec<Label>, ZkError> {
    if k < 2 {
        return Err(ZkError::InvalidModulus(k));
    }
    if let Some(&value) = forbidden.iter().find(|&&x| x >= k) {
        return Err(ZkError::OutOfRange { value, k });
    }
    Ok((0..k).filter(|x| !forbidden.contains(x)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn even_modulus_size_two_half_target() {
        let w = distinct_subset_sum(4, 2, 2).unwrap();
        assert_eq!(w.elements, vec![0, 2]);
    }

    #[test]
    fn singleton() {
        assert_eq!(distinct_subset_sum(5, 1, 3).unwrap().elements, vec![3]);
    }

    #[test]
    fn odd_modulus_four_of_five() {
        let w = distinct_subset_sum(5, 4, 0).unwrap();
        assert_eq!(w.elements, vec![1, 2, 3, 4]);
        assert_eq!(
            oracle_subset_sum(5, 4, 0, &[]).map(|w| w.elements),
            Some(vec![1, 2, 3, 4])
        );
    }

    #[test]
    fn full_set_only_hits_its_own_sum() {
        assert_eq!(
            distinct_subset_sum(6, 6, 1),
            Err(ZkError::Infeasible { k: 6, l: 6, a: 1 })
        );
        assert!(oracle_subset_sum(6, 6, 1, &[]).is_none());
        assert_eq!(
            distinct_subset_sum(6, 6, 3).unwrap().elements,
            vec![0, 1, 2, 3, 4, 5]
        );
        assert_eq!(
            oracle_subset_sum(6, 6, 3, &[]).unwrap().elements,
            vec![0, 1, 2, 3, 4, 5]
        );
        assert_eq!(distinct_subset_sum(7, 7, 0).unwrap().len(), 7);
    }

    #[test]
    fn invalid_arguments() {
        assert_eq!(
            distinct_subset_sum(1, 1, 0),
            Err(ZkError::InvalidModulus(1))
        );
        assert_eq!(
            distinct_subset_sum(5, 0, 0),
            Err(ZkError::InvalidSize { l: 0, available: 5 })
        );
        assert_eq!(
            distinct_subset_sum(5, 6, 0),
            Err(ZkError::InvalidSize { l: 6, available: 5 })
        );
        assert_eq!(
            distinct_subset_sum(5, 2, 5),
            Err(ZkError::OutOfRange { value: 5, k: 5 })
        );
        assert_eq!(
            distinct_subset_sum_avoiding(5, 4, 0, &[1, 2]),
            Err(ZkError::InvalidSize { l: 4, available: 3 })
        );
    }

    #[test]
    fn avoiding_examples() {
        assert_eq!(
            distinct_subset_sum_avoiding(5, 1, 2, &[2]),
            Err(ZkError::Infeasible { k: 5, l: 1, a: 2 })
        );
        assert_eq!(
            distinct_subset_sum_avoiding(5, 2, 2, &[2])
                .unwrap()
                .elements,
            vec![3, 4]
        );
        assert_eq!(
            distinct_subset_sum_avoiding(4, 2, 2, &[]).unwrap().elements,
            vec![0, 2]
        );
    }

    #[test]
    fn oracle_examples() {
        assert!(oracle_subset_sum(7, 3, 5, &[]).unwrap().verify());
        assert_eq!(oracle_subset_sum(2, 1, 1, &[]).unwrap().elements, vec![1]);
    }

    #[test]
    fn skeleton_sets_have_the_advertised_sums() {
        for k in (3..=15).step_by(2) {
            for l in 1..=k {
                let set = zero_sum_set(k, l, None);
                assert_eq!(set.len(), l);
                assert_eq!(set.iter().sum::<usize>() % k, 0);
            }
        }
        for k in (4..=16).step_by(2) {
            for l in 1..=k {
                let set = half_sum_set(k, l, None);
                assert_eq!(set.len(), l);
                assert!(set.contains(&(k / 2)));
                assert_eq!(set.iter().sum::<usize>() % k, k / 2);
            }
        }
        assert_eq!(half_sum_set(8, 1, None), vec![4]);
        assert_eq!(half_sum_set(8, 2, None), vec![0, 4]);
    }

    #[test]
    fn removing_whole_inverse_pairs_keeps_sum_zero() {
        // Every subfamily of inverse pairs of an odd modulus, checked directly.
        for k in (3..=13usize).step_by(2) {
            let pairs = (k - 1) / 2;
            for mask in 0u32..(1 << pairs) {
                let remaining: usize = (0..k)
                    .filter(|&x| {
                        let rep = x.min(k - x);
                        x == 0 || mask & (1 << (rep - 1)) == 0
                    })
                    .sum();
                assert_eq!(remaining % k, 0, "k={k} mask={mask:b}");
            }
        }
    }

    #[test]
    fn kept_pair_survives() {
        for k in (5..=11).step_by(2) {
            for a in 1..k {
                for l in 2..=k {
                    let set = zero_sum_set(k, l, Some(a));
                    assert!(
                        set.contains(&a) && set.contains(&(k - a)),
                        "k={k} l={l} a={a}"
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn avoiding_agrees_with_oracle(
            k in 2usize..10,
            l in 1usize..10,
            a in 0usize..10,
            mask in 0u32..1024,
        ) {
            let a = a % k;
            let forbidden: Vec<usize> = (0..k).filter(|x| mask & (1 << x) != 0).collect();
            prop_assume!(l <= k - forbidden.len());
            let fast = distinct_subset_sum_avoiding(k, l, a, &forbidden);
            let slow = oracle_subset_sum(k, l, a, &forbidden);
            match (fast, slow) {
                (Ok(w), Some(o)) => {
                    prop_assert!(w.verify());
                    prop_assert!(w.elements.iter().all(|x| !forbidden.contains(x)));
                    prop_assert_eq!(w.len(), l);
                    // Both report the lexicographically first witness.
                    prop_assert_eq!(w.elements, o.elements);
                }
                (Err(ZkError::Infeasible { .. }), None) => {}
                (fast, slow) => prop_assert!(false, "disagree: {:?} vs {:?}", fast, slow),
            }
        }
    }
}
