//! Exhaustive search for k-cordial labelings.

use std::collections::VecDeque;

use super::CordialError;
use crate::hypertree::{Hypertree, Vertex};
use crate::labeling::{Label, PartialLabeling, VertexLabeling};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(VertexLabeling),
    /// The whole space was searched.
    NoneExists,
}

/// Caps for a histogram over `k` classes holding `total` items in balance:
/// every class holds `total / k` or `total / k + 1` items, and exactly
/// `total % k` classes hold the larger amount.
#[derive(Clone, Copy)]
struct Balance {
    floor: usize,
    extra: usize,
}

impl Balance {
    fn new(total: usize, k: usize) -> Self {
        Balance {
            floor: total / k,
            extra: total % k,
        }
    }

    fn admits(&self, count: usize, at_ceiling: usize) -> bool {
        count < self.floor || (count == self.floor && at_ceiling < self.extra)
    }

    /// Number of classes at the ceiling after one more item lands on a class
    /// that held `count`.
    fn bump(&self, count: usize, at_ceiling: usize) -> usize {
        if self.extra > 0 && count == self.floor {
            at_ceiling + 1
        } else {
            at_ceiling
        }
    }
}

struct Search<'a> {
    t: &'a Hypertree,
    k: usize,
    order: Vec<Vertex>,
    /// `closing[i]`: edges whose last vertex (in `order`) is `order[i]`.
    closing: Vec<Vec<usize>>,
    vertices: Balance,
    edges: Balance,
    partial: PartialLabeling,
    vertex_ceiling: usize,
    edge_hist: Vec<usize>,
    edge_ceiling: usize,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> Result<bool, CordialError> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let v = self.order[depth];
        // A global shift of all labels preserves cordiality, so the first
        // vertex can be pinned to 0.
        let candidates = if depth == 0 { 0..1 } else { 0..self.k };
        for label in candidates {
            let count = self.partial.histogram()[label];
            if !self.vertices.admits(count, self.vertex_ceiling) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(CordialError::BudgetExceeded {
                    budget: self.budget,
                });
            }
            let saved_vertex_ceiling = self.vertex_ceiling;
            self.vertex_ceiling = self.vertices.bump(count, self.vertex_ceiling);
            self.partial.assign(v, label);

            let saved_edge_ceiling = self.edge_ceiling;
            let mut closed: Vec<Label> = Vec::new();
            let mut ok = true;
            for &e in &self.closing[depth] {
                let edge_label = self
                    .t
                    .edge(e)
                    .iter()
                    .map(|&u| self.partial.get(u).unwrap())
                    .sum::<usize>()
                    % self.k;
                let c = self.edge_hist[edge_label];
                if !self.edges.admits(c, self.edge_ceiling) {
                    ok = false;
                    break;
                }
                self.edge_ceiling = self.edges.bump(c, self.edge_ceiling);
                self.edge_hist[edge_label] += 1;
                closed.push(edge_label);
            }

            if ok && self.run(depth + 1)? {
                return Ok(true);
            }

            for l in closed {
                self.edge_hist[l] -= 1;
            }
            self.edge_ceiling = saved_edge_ceiling;
            self.partial.unassign(v);
            self.vertex_ceiling = saved_vertex_ceiling;
        }
        Ok(false)
    }
}

/// Vertices in breadth-first order over the incidence structure, so that each
/// edge is completed as early as possible.
fn search_order(t: &Hypertree) -> Vec<Vertex> {
    let n = t.n();
    let mut incident = vec![Vec::new(); n];
    for (i, e) in t.edges().iter().enumerate() {
        for &v in e {
            incident[v].push(i);
        }
    }
    let mut seen_vertex = vec![false; n];
    let mut seen_edge = vec![false; t.m()];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([0]);
    seen_vertex[0] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &e in &incident[v] {
            if std::mem::replace(&mut seen_edge[e], true) {
                continue;
            }
            for &u in t.edge(e) {
                if !std::mem::replace(&mut seen_vertex[u], true) {
                    queue.push_back(u);
                }
            }
        }
    }
    order
}

/// Decides whether `t` has a k-cordial labeling by exhaustive backtracking.
///
/// Branches are cut as soon as a vertex or edge label class overflows its
/// balanced size. `budget` bounds the number of search nodes; running out is
/// reported as [`CordialError::BudgetExceeded`], never as "none exists".
pub fn brute_force_label(
    t: &Hypertree,
    k: usize,
    budget: u64,
) -> Result<SearchOutcome, CordialError> {
    if k == 0 {
        return Err(CordialError::InvalidModulus);
    }
    if k == 1 {
        let labeling = VertexLabeling::new(1, vec![0; t.n()]).expect("k = 1");
        return Ok(SearchOutcome::Found(labeling));
    }

    let order = search_order(t);
    let mut position = vec![0; t.n()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut closing = vec![Vec::new(); t.n()];
    for (i, e) in t.edges().iter().enumerate() {
        let last = e.iter().map(|&v| position[v]).max().unwrap();
        closing[last].push(i);
    }

    let mut search = Search {
        t,
        k,
        order,
        closing,
        vertices: Balance::new(t.n(), k),
        edges: Balance::new(t.m(), k),
        partial: PartialLabeling::new(k, t.n()),
        vertex_ceiling: 0,
        edge_hist: vec![0; k],
        edge_ceiling: 0,
        nodes: 0,
        budget,
    };
    if search.run(0)? {
        let labeling = search
            .partial
            .to_labeling()
            .expect("search labelled every vertex");
        Ok(SearchOutcome::Found(labeling))
    } else {
        Ok(SearchOutcome::NoneExists)
    }
}
