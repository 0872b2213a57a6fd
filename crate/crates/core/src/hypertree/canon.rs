//! Exact canonical forms for hypertrees.
//!
//! A hypergraph is a hypertree exactly when its bipartite incidence graph
//! (one node per vertex, one node per edge) is a tree, so hypertree
//! isomorphism reduces to isomorphism of node-coloured trees. We root the
//! incidence tree at its centre and use the classic sorted-parenthesis
//! encoding, which is exact at every size.

use super::{Hypertree, Vertex};

const OPEN: u8 = b'(';
const CLOSE: u8 = b')';
const VERTEX_TAG: u8 = b'v';
const EDGE_TAG: u8 = b'e';

struct Incidence {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Incidence {
    fn new(t: &Hypertree) -> Self {
        let n = t.n();
        let mut adj = vec![Vec::new(); n + t.m()];
        for (i, edge) in t.edges().iter().enumerate() {
            for &v in edge {
                adj[v].push(n + i);
                adj[n + i].push(v);
            }
        }
        Incidence { n, adj }
    }

    fn centres(&self) -> Vec<usize> {
        let total = self.adj.len();
        if total <= 2 {
            return (0..total).collect();
        }
        let mut degree: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut layer: Vec<usize> = (0..total).filter(|&u| degree[u] <= 1).collect();
        let mut remaining = total;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &u in &layer {
                for &w in &self.adj[u] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
            layer = next;
        }
        layer.sort_unstable();
        layer
    }

    fn encode(&self, u: usize, parent: usize, codes: &mut [Vec<u8>]) {
        let mut children: Vec<usize> = self.adj[u]
            .iter()
            .copied()
            .filter(|&w| w != parent)
            .collect();
        for &w in &children {
            self.encode(w, u, codes);
        }
        children.sort_by(|&a, &b| codes[a].cmp(&codes[b]));
        let mut code = vec![OPEN, if u < self.n { VERTEX_TAG } else { EDGE_TAG }];
        for w in children {
            code.extend_from_slice(&codes[w]);
        }
        code.push(CLOSE);
        codes[u] = code;
    }

    /// Code of the tree rooted at `root`, plus the vertices in canonical order.
    fn rooted(&self, root: usize) -> (Vec<u8>, Vec<Vertex>) {
        let mut codes = vec![Vec::new(); self.adj.len()];
        self.encode(root, usize::MAX, &mut codes);

        let mut order = Vec::with_capacity(self.n);
        let mut stack = vec![(root, usize::MAX)];
        while let Some((u, parent)) = stack.pop() {
            if u < self.n {
                order.push(u);
            }
            let mut children: Vec<usize> = self.adj[u]
                .iter()
                .copied()
                .filter(|&w| w != parent)
                .collect();
            children.sort_by(|&a, &b| codes[a].cmp(&codes[b]));
            stack.extend(children.into_iter().rev().map(|w| (w, u)));
        }
        (std::mem::take(&mut codes[root]), order)
    }

    fn canonical(&self) -> (Vec<u8>, Vec<Vertex>) {
        self.centres()
            .into_iter()
            .map(|c| self.rooted(c))
            .min_by(|a, b| a.0.cmp(&b.0))
            .expect("incidence tree has at least one node")
    }
}

/// A byte string that is equal for two hypertrees iff they are isomorphic.
pub fn canonical_code(t: &Hypertree) -> Vec<u8> {
    Incidence::new(t).canonical().0
}

/// The representative of the isomorphism class of `t`: two hypertrees are
/// isomorphic iff their canonical forms are equal.
pub fn canonical_form(t: &Hypertree) -> Hypertree {
    let (_, order) = Incidence::new(t).canonical();
    let mut perm = vec![0; t.n()];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    t.relabel(&perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(p: usize, n: usize, edges: &[&[usize]]) -> Hypertree {
        Hypertree::new(p, n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn relabelled_copies_share_a_code() {
        let a = tree(3, 7, &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 6]]);
        let b = tree(3, 7, &[&[6, 5, 0], &[0, 1, 3], &[3, 2, 4]]);
        assert_eq!(canonical_code(&a), canonical_code(&b));
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn path_and_star_differ() {
        let path = tree(3, 7, &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 6]]);
        let star = tree(3, 7, &[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]]);
        assert_ne!(canonical_code(&path), canonical_code(&star));
    }

    #[test]
    fn attaching_at_different_vertices_of_a_middle_edge() {
        // Through the shared vertex versus through a pendant vertex of the middle edge.
        let a = tree(3, 7, &[&[0, 1, 2], &[2, 3, 4], &[2, 5, 6]]);
        let b = tree(3, 7, &[&[0, 1, 2], &[2, 3, 4], &[3, 5, 6]]);
        assert_ne!(canonical_code(&a), canonical_code(&b));
    }

    #[test]
    fn canonical_form_is_idempotent_and_valid() {
        let t = tree(2, 6, &[&[0, 5], &[5, 1], &[1, 4], &[1, 3], &[3, 2]]);
        let c = canonical_form(&t);
        assert_eq!(canonical_form(&c), c);
        assert_eq!(Hypertree::new(2, 6, c.edges().to_vec()).unwrap(), c);
    }
}
