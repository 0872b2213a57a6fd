//! Checks enumeration against a slow, independent isomorphism test.

use hypercordial::hypertree::{canonical_form, enumerate_hypertrees};
use hypercordial::{random_hypertree, Hypertree};

/// Vertices sharing an edge. For linear hypertrees with `p >= 3` the edges
/// are exactly the maximal `p`-cliques of this graph, and for `p = 2` the
/// graph is the tree itself.
fn adjacency(t: &Hypertree) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; t.n()]; t.n()];
    for e in t.edges() {
        for &u in e {
            for &w in e {
                adj[u][w] = u != w;
            }
        }
    }
    adj
}

fn extend(
    a: &[Vec<bool>],
    b: &[Vec<bool>],
    degrees: (&[usize], &[usize]),
    map: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let u = map.len();
    if u == a.len() {
        return true;
    }
    for image in 0..b.len() {
        if used[image] || degrees.0[u] != degrees.1[image] {
            continue;
        }
        if (0..u).any(|w| a[u][w] != b[image][map[w]]) {
            continue;
        }
        map.push(image);
        used[image] = true;
        if extend(a, b, degrees, map, used) {
            return true;
        }
        used[image] = false;
        map.pop();
    }
    false
}

fn isomorphic(s: &Hypertree, t: &Hypertree) -> bool {
    if s.p() != t.p() || s.n() != t.n() || s.m() != t.m() {
        return false;
    }
    let mut ds = s.degrees();
    let mut dt = t.degrees();
    let (degrees_s, degrees_t) = (ds.clone(), dt.clone());
    ds.sort_unstable();
    dt.sort_unstable();
    if ds != dt {
        return false;
    }
    let mut map = Vec::new();
    let mut used = vec![false; t.n()];
    extend(
        &adjacency(s),
        &adjacency(t),
        (&degrees_s, &degrees_t),
        &mut map,
        &mut used,
    )
}

/// Every labelled growth sequence, no deduplication.
fn all_grown(p: usize, m: usize) -> Vec<Hypertree> {
    let mut level = vec![Hypertree::single_edge(p).unwrap()];
    for _ in 1..m {
        level = level
            .iter()
            .flat_map(|t| (0..t.n()).map(move |v| t.attach_leaf_edge(v)))
            .collect();
    }
    level
}

fn classes(trees: &[Hypertree]) -> Vec<Hypertree> {
    let mut reps: Vec<Hypertree> = Vec::new();
    for t in trees {
        if !reps.iter().any(|r| isomorphic(r, t)) {
            reps.push(t.clone());
        }
    }
    reps
}

#[test]
fn counts_match_brute_force_classification() {
    for (p, max_m) in [(2, 6), (3, 5), (4, 5), (5, 4)] {
        for m in 1..=max_m {
            let expected = classes(&all_grown(p, m)).len();
            assert_eq!(enumerate_hypertrees(p, m).count(), expected, "p={p} m={m}");
        }
    }
}

#[test]
fn enumerated_trees_are_pairwise_non_isomorphic() {
    for (p, m) in [(2, 7), (3, 6), (4, 5)] {
        let trees: Vec<Hypertree> = enumerate_hypertrees(p, m).collect();
        for i in 0..trees.len() {
            for j in i + 1..trees.len() {
                assert!(
                    !isomorphic(&trees[i], &trees[j]),
                    "p={p} m={m}: {i} and {j}"
                );
            }
        }
    }
}

#[test]
fn free_trees_by_order() {
    let counts: Vec<usize> = (1..=8)
        .map(|m| enumerate_hypertrees(2, m).count())
        .collect();
    assert_eq!(counts, [1, 1, 2, 3, 6, 11, 23, 47]);
}

#[test]
fn random_hypertrees_land_in_the_enumeration() {
    for (p, m) in [(2, 7), (3, 6), (5, 5)] {
        let trees: Vec<Hypertree> = enumerate_hypertrees(p, m).collect();
        for seed in 0..100 {
            let t = random_hypertree(p, m, seed);
            let canon = canonical_form(&t);
            assert!(trees.contains(&canon), "p={p} m={m} seed={seed}");
            assert!(isomorphic(&t, &canon), "p={p} m={m} seed={seed}");
        }
    }
}
