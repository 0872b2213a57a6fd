//! Uniform hypertrees.
//!
//! Vertices are dense identifiers `0..n`. Every [`Hypertree`] is kept in a
//! normal form: the vertices of each edge are sorted and the edge list is
//! sorted lexicographically, so two structurally identical inputs compare
//! equal regardless of the order they were written in.

mod canon;
mod enumerate;
mod text;

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use canon::{canonical_code, canonical_form};
pub use enumerate::enumerate_hypertrees;
pub use text::{parse_hypertree, parse_hypertrees, write_hypertrees, TextError};

pub type Vertex = usize;

/// Why a set of edges is not a hypertree.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypertreeError {
    #[error("edge cardinality must be at least 2, got {0}")]
    InvalidCardinality(usize),
    #[error("a hypertree needs at least one vertex")]
    NoVertices,
    #[error("edge {edge} has {found} vertices, expected {expected}")]
    NonUniform {
        edge: usize,
        expected: usize,
        found: usize,
    },
    #[error("edge {edge} contains vertex {vertex} more than once")]
    DuplicateVertexInEdge { edge: usize, vertex: Vertex },
    #[error("edge {edge} contains vertex {vertex}, but there are only {n} vertices")]
    VertexOutOfRange {
        edge: usize,
        vertex: Vertex,
        n: usize,
    },
    #[error("edges {first} and {second} are identical")]
    DuplicateEdge { first: usize, second: usize },
    #[error("{0}")]
    HasCycle(CycleWitness),
    #[error("vertex {vertex} is not connected to vertex 0")]
    Disconnected { vertex: Vertex },
    #[error("the hypertree has no edges")]
    EmptyHypertree,
}

/// Evidence that an edge set contains a cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleWitness {
    /// Two edges share at least two vertices, giving the cycle `u, e1, v, e2, u`.
    SharedPair {
        first: usize,
        second: usize,
        vertices: (Vertex, Vertex),
    },
    /// A connected structure whose order is not `(p - 1) * m + 1`.
    OrderFormula { n: usize, m: usize, p: usize },
}

impl std::fmt::Display for CycleWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CycleWitness::SharedPair {
                first,
                second,
                vertices: (u, v),
            } => write!(f, "edges {first} and {second} share vertices {u} and {v}"),
            CycleWitness::OrderFormula { n, m, p } => write!(
                f,
                "connected with {n} vertices and {m} edges, but (p - 1) * m + 1 = {}",
                (p - 1) * m + 1
            ),
        }
    }
}

/// An immutable, validated `p`-uniform hypertree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypertree {
    p: usize,
    n: usize,
    edges: Vec<Vec<Vertex>>,
}

/// A pendant edge together with the vertices that disappear when it is peeled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafEdgeDecomposition {
    pub edge_index: usize,
    /// The degree-one vertices of the edge, ascending. All `p` of them when the
    /// hypertree has a single edge, `p - 1` otherwise.
    pub pendant_vertices: Vec<Vertex>,
    /// The vertex shared with the rest of the hypertree.
    pub anchor_vertex: Option<Vertex>,
}

/// What is left after peeling a leaf edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Remainder {
    /// The peeled edge was the only one.
    Empty,
    /// The smaller hypertree. `lift[v]` is the identifier in the original
    /// hypertree of vertex `v` of `tree`.
    Tree { tree: Hypertree, lift: Vec<Vertex> },
}

impl Hypertree {
    /// Checks `edges` against every hypertree invariant and returns the
    /// normalised hypertree.
    ///
    /// Edge indices in errors refer to positions in `edges` as given.
    pub fn new(p: usize, n: usize, edges: Vec<Vec<Vertex>>) -> Result<Self, HypertreeError> {
        if p < 2 {
            return Err(HypertreeError::InvalidCardinality(p));
        }
        if n == 0 {
            return Err(HypertreeError::NoVertices);
        }

        let mut sorted = Vec::with_capacity(edges.len());
        for (idx, mut edge) in edges.into_iter().enumerate() {
            if edge.len() != p {
                return Err(HypertreeError::NonUniform {
                    edge: idx,
                    expected: p,
                    found: edge.len(),
                });
            }
            if let Some(&vertex) = edge.iter().find(|&&v| v >= n) {
                return Err(HypertreeError::VertexOutOfRange {
                    edge: idx,
                    vertex,
                    n,
                });
            }
            edge.sort_unstable();
            if let Some(w) = edge.windows(2).find(|w| w[0] == w[1]) {
                return Err(HypertreeError::DuplicateVertexInEdge {
                    edge: idx,
                    vertex: w[0],
                });
            }
            sorted.push(edge);
        }

        let mut order: Vec<usize> = (0..sorted.len()).collect();
        order.sort_by(|&a, &b| sorted[a].cmp(&sorted[b]).then(a.cmp(&b)));
        if let Some(w) = order.windows(2).find(|w| sorted[w[0]] == sorted[w[1]]) {
            return Err(HypertreeError::DuplicateEdge {
                first: w[0],
                second: w[1],
            });
        }

        if let Some(witness) = shared_pair(&sorted) {
            return Err(HypertreeError::HasCycle(witness));
        }
        if let Some(vertex) = unreachable_vertex(n, &sorted) {
            return Err(HypertreeError::Disconnected { vertex });
        }
        let m = sorted.len();
        if n != (p - 1) * m + 1 {
            return Err(HypertreeError::HasCycle(CycleWitness::OrderFormula {
                n,
                m,
                p,
            }));
        }

        let edges = order
            .into_iter()
            .map(|i| std::mem::take(&mut sorted[i]))
            .collect();
        Ok(Hypertree { p, n, edges })
    }

    /// Builds a hypertree from data already known to be valid and normalised.
    fn from_parts_unchecked(p: usize, n: usize, mut edges: Vec<Vec<Vertex>>) -> Self {
        for edge in &mut edges {
            edge.sort_unstable();
        }
        edges.sort();
        let tree = Hypertree { p, n, edges };
        debug_assert!(tree.order_formula_holds());
        tree
    }

    /// The hypertree consisting of the single edge `{0, .., p - 1}`.
    pub fn single_edge(p: usize) -> Result<Self, HypertreeError> {
        Self::new(p, p, vec![(0..p).collect()])
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Order `|T|`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Size `||T||`.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &[Vertex] {
        &self.edges[index]
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut degrees = vec![0; self.n];
        for edge in &self.edges {
            for &v in edge {
                degrees[v] += 1;
            }
        }
        degrees
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges
            .iter()
            .filter(|e| e.binary_search(&v).is_ok())
            .count()
    }

    /// `n == (p - 1) * m + 1`.
    pub fn order_formula_holds(&self) -> bool {
        self.n == (self.p - 1) * self.m() + 1
    }

    /// `true` when every two distinct edges share at most one vertex.
    pub fn edges_pairwise_almost_disjoint(&self) -> bool {
        shared_pair(&self.edges).is_none()
    }

    /// Finds a pendant edge, i.e. one with at least `p - 1` vertices of degree
    /// one. Among all pendant edges the one with the smallest index is chosen.
    pub fn find_removable_leaf_edge(&self) -> Result<LeafEdgeDecomposition, HypertreeError> {
        if self.edges.is_empty() {
            return Err(HypertreeError::EmptyHypertree);
        }
        if self.m() == 1 {
            return Ok(LeafEdgeDecomposition {
                edge_index: 0,
                pendant_vertices: self.edges[0].clone(),
                anchor_vertex: None,
            });
        }
        let degrees = self.degrees();
        let (edge_index, edge) = self
            .edges
            .iter()
            .enumerate()
            .find(|(_, e)| e.iter().filter(|&&v| degrees[v] == 1).count() == self.p - 1)
            .expect("an acyclic hypergraph with two or more edges has a pendant edge");
        let (pendant_vertices, anchors): (Vec<Vertex>, Vec<Vertex>) =
            edge.iter().partition(|&&v| degrees[v] == 1);
        Ok(LeafEdgeDecomposition {
            edge_index,
            pendant_vertices,
            anchor_vertex: anchors.first().copied(),
        })
    }

    /// Removes a pendant edge and its degree-one vertices.
    ///
    /// The surviving vertices are renumbered densely, preserving their order.
    ///
    /// # Panics
    ///
    /// Panics if `leaf` was not obtained from this hypertree.
    pub fn remove_leaf_edge(&self, leaf: &LeafEdgeDecomposition) -> Remainder {
        let edge = &self.edges[leaf.edge_index];
        assert!(
            leaf.pendant_vertices.iter().all(|v| edge.contains(v)),
            "pendant vertices must belong to the removed edge"
        );
        if self.m() == 1 {
            return Remainder::Empty;
        }
        assert_eq!(
            leaf.pendant_vertices.len(),
            self.p - 1,
            "a leaf edge has p - 1 pendant vertices"
        );

        let mut removed = vec![false; self.n];
        for &v in &leaf.pendant_vertices {
            removed[v] = true;
        }
        let lift: Vec<Vertex> = (0..self.n).filter(|&v| !removed[v]).collect();
        let mut relabel = vec![usize::MAX; self.n];
        for (new, &old) in lift.iter().enumerate() {
            relabel[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != leaf.edge_index)
            .map(|(_, e)| e.iter().map(|&v| relabel[v]).collect())
            .collect();
        let tree = Hypertree::from_parts_unchecked(self.p, lift.len(), edges);
        Remainder::Tree { tree, lift }
    }

    /// Attaches a new edge made of `anchor` and `p - 1` fresh vertices
    /// `n, .., n + p - 2`.
    pub fn attach_leaf_edge(&self, anchor: Vertex) -> Hypertree {
        assert!(anchor < self.n, "anchor {anchor} out of range");
        let mut edge = Vec::with_capacity(self.p);
        edge.push(anchor);
        edge.extend(self.n..self.n + self.p - 1);
        let mut edges = self.edges.clone();
        edges.push(edge);
        Hypertree::from_parts_unchecked(self.p, self.n + self.p - 1, edges)
    }

    /// Applies a vertex permutation, `perm[old] = new`.
    pub fn relabel(&self, perm: &[Vertex]) -> Hypertree {
        assert_eq!(perm.len(), self.n);
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| perm[v]).collect())
            .collect();
        Hypertree::from_parts_unchecked(self.p, self.n, edges)
    }
}

/// Grows a hypertree by uniform attachment: each new edge passes through an
/// existing vertex chosen uniformly at random. Deterministic for a given seed.
///
/// # Panics
///
/// Panics if `p < 2` or `m < 1`.
pub fn random_hypertree(p: usize, m: usize, seed: u64) -> Hypertree {
    assert!(p >= 2 && m >= 1, "random_hypertree needs p >= 2 and m >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<Vec<Vertex>> = vec![(0..p).collect()];
    let mut n = p;
    for _ in 1..m {
        let anchor = rng.gen_range(0..n);
        let mut edge = vec![anchor];
        edge.extend(n..n + p - 1);
        edges.push(edge);
        n += p - 1;
    }
    Hypertree::from_parts_unchecked(p, n, edges)
}

/// First pair of edges sharing two or more vertices.
fn shared_pair(edges: &[Vec<Vertex>]) -> Option<CycleWitness> {
    let mut incident: HashMap<Vertex, Vec<usize>> = HashMap::new();
    for (i, edge) in edges.iter().enumerate() {
        for &v in edge {
            incident.entry(v).or_default().push(i);
        }
    }
    let mut vertices: Vec<_> = incident.into_iter().collect();
    vertices.sort_unstable();
    let mut first_shared: HashMap<(usize, usize), Vertex> = HashMap::new();
    for (v, list) in &vertices {
        for (x, &e1) in list.iter().enumerate() {
            for &e2 in &list[x + 1..] {
                if let Some(&u) = first_shared.get(&(e1, e2)) {
                    return Some(CycleWitness::SharedPair {
                        first: e1,
                        second: e2,
                        vertices: (u, *v),
                    });
                }
                first_shared.insert((e1, e2), *v);
            }
        }
    }
    None
}

/// Breadth-first search over the vertex/edge incidence structure from vertex 0.
fn unreachable_vertex(n: usize, edges: &[Vec<Vertex>]) -> Option<Vertex> {
    let mut incident = vec![Vec::new(); n];
    for (i, edge) in edges.iter().enumerate() {
        for &v in edge {
            incident[v].push(i);
        }
    }
    let mut seen_vertex = vec![false; n];
    let mut seen_edge = vec![false; edges.len()];
    let mut queue = VecDeque::from([0]);
    seen_vertex[0] = true;
    while let Some(v) = queue.pop_front() {
        for &e in &incident[v] {
            if std::mem::replace(&mut seen_edge[e], true) {
                continue;
            }
            for &u in &edges[e] {
                if !std::mem::replace(&mut seen_vertex[u], true) {
                    queue.push_back(u);
                }
            }
        }
    }
    seen_vertex.iter().position(|&s| !s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(p: usize, n: usize, edges: &[&[usize]]) -> Result<Hypertree, HypertreeError> {
        Hypertree::new(p, n, edges.iter().map(|e| e.to_vec()).collect())
    }

    #[test]
    fn accepts_two_triples_sharing_a_vertex() {
        let t = tree(3, 5, &[&[0, 1, 2], &[2, 3, 4]]).unwrap();
        assert_eq!(t.n(), 5);
        assert_eq!(t.m(), 2);
        assert_eq!(t.n(), (t.p() - 1) * t.m() + 1);
    }

    #[test]
    fn accepts_single_edge() {
        let t = tree(3, 3, &[&[0, 1, 2]]).unwrap();
        assert_eq!(t, Hypertree::single_edge(3).unwrap());
    }

    #[test]
    fn normalises_edge_order() {
        let a = tree(3, 5, &[&[4, 3, 2], &[2, 1, 0]]).unwrap();
        assert_eq!(a.edges(), &[vec![0, 1, 2], vec![2, 3, 4]]);
    }

    #[test]
    fn rejects_edges_sharing_two_vertices() {
        let err = tree(3, 4, &[&[0, 1, 2], &[1, 2, 3]]).unwrap_err();
        assert_eq!(
            err,
            HypertreeError::HasCycle(CycleWitness::SharedPair {
                first: 0,
                second: 1,
                vertices: (1, 2)
            })
        );
    }

    #[test]
    fn rejects_longer_cycle_by_order_formula() {
        // A triangle of graph edges: pairwise intersections are fine, the
        // cycle only shows up in the vertex count.
        let err = tree(2, 3, &[&[0, 1], &[1, 2], &[0, 2]]).unwrap_err();
        assert_eq!(
            err,
            HypertreeError::HasCycle(CycleWitness::OrderFormula { n: 3, m: 3, p: 2 })
        );
    }

    #[test]
    fn rejects_malformed_edges() {
        assert_eq!(
            tree(3, 5, &[&[0, 1, 2], &[2, 3]]).unwrap_err(),
            HypertreeError::NonUniform {
                edge: 1,
                expected: 3,
                found: 2
            }
        );
        assert_eq!(
            tree(3, 3, &[&[0, 1, 1]]).unwrap_err(),
            HypertreeError::DuplicateVertexInEdge { edge: 0, vertex: 1 }
        );
        assert_eq!(
            tree(3, 3, &[&[0, 1, 3]]).unwrap_err(),
            HypertreeError::VertexOutOfRange {
                edge: 0,
                vertex: 3,
                n: 3
            }
        );
        assert_eq!(
            tree(2, 2, &[&[0, 1], &[1, 0]]).unwrap_err(),
            HypertreeError::DuplicateEdge {
                first: 0,
                second: 1
            }
        );
        assert_eq!(
            tree(1, 1, &[&[0]]).unwrap_err(),
            HypertreeError::InvalidCardinality(1)
        );
        assert_eq!(tree(2, 0, &[]).unwrap_err(), HypertreeError::NoVertices);
    }

    #[test]
    fn rejects_disconnected() {
        assert_eq!(
            tree(2, 4, &[&[0, 1], &[2, 3]]).unwrap_err(),
            HypertreeError::Disconnected { vertex: 2 }
        );
        assert_eq!(
            tree(3, 4, &[&[0, 1, 2]]).unwrap_err(),
            HypertreeError::Disconnected { vertex: 3 }
        );
    }

    #[test]
    fn lone_vertex_is_an_empty_hypertree() {
        let t = tree(3, 1, &[]).unwrap();
        assert_eq!(t.m(), 0);
        assert_eq!(
            t.find_removable_leaf_edge().unwrap_err(),
            HypertreeError::EmptyHypertree
        );
    }

    #[test]
    fn leaf_edge_of_two_triples() {
        let t = tree(3, 5, &[&[0, 1, 2], &[2, 3, 4]]).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 2, 1, 1]);
        let leaf = t.find_removable_leaf_edge().unwrap();
        assert_eq!(
            leaf,
            LeafEdgeDecomposition {
                edge_index: 0,
                pendant_vertices: vec![0, 1],
                anchor_vertex: Some(2)
            }
        );
        match t.remove_leaf_edge(&leaf) {
            Remainder::Tree { tree, lift } => {
                assert_eq!(tree, Hypertree::single_edge(3).unwrap());
                assert_eq!(lift, vec![2, 3, 4]);
            }
            Remainder::Empty => panic!("expected a remainder"),
        }
    }

    #[test]
    fn leaf_edge_of_single_edge() {
        let t = Hypertree::single_edge(3).unwrap();
        let leaf = t.find_removable_leaf_edge().unwrap();
        assert_eq!(leaf.pendant_vertices, vec![0, 1, 2]);
        assert_eq!(leaf.anchor_vertex, None);
        assert_eq!(t.remove_leaf_edge(&leaf), Remainder::Empty);
    }

    #[test]
    fn leaf_edge_of_path_takes_smallest_index() {
        let t = tree(3, 7, &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 6]]).unwrap();
        let degrees = t.degrees();
        let qualifying: Vec<usize> = (0..t.m())
            .filter(|&i| t.edge(i).iter().filter(|&&v| degrees[v] == 1).count() == 2)
            .collect();
        assert_eq!(qualifying, vec![0, 2]);
        let leaf = t.find_removable_leaf_edge().unwrap();
        assert_eq!(leaf.edge_index, 0);
        assert_eq!(leaf.pendant_vertices, vec![0, 1]);
        assert_eq!(leaf.anchor_vertex, Some(2));
    }

    #[test]
    fn peeling_a_star() {
        let star = tree(3, 7, &[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]]).unwrap();
        let leaf = star.find_removable_leaf_edge().unwrap();
        let Remainder::Tree { tree: smaller, .. } = star.remove_leaf_edge(&leaf) else {
            panic!("expected a remainder");
        };
        assert_eq!(smaller.n(), 5);
        assert_eq!(smaller.m(), 2);
        assert_eq!(smaller.degree(0), 2);
    }

    #[test]
    fn random_single_edge_is_unique() {
        for seed in 0..5 {
            assert_eq!(
                random_hypertree(3, 1, seed),
                Hypertree::single_edge(3).unwrap()
            );
        }
    }

    #[test]
    fn random_trees_validate() {
        let t = random_hypertree(3, 5, 42);
        assert_eq!(t.n(), 11);
        assert_eq!(Hypertree::new(3, 11, t.edges().to_vec()).unwrap(), t);
        let g = random_hypertree(2, 4, 7);
        assert_eq!(g.n(), 5);
        assert_eq!(Hypertree::new(2, 5, g.edges().to_vec()).unwrap(), g);
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(random_hypertree(4, 9, 1234), random_hypertree(4, 9, 1234));
    }
}
