use itertools::Itertools;
use serde::Serialize;

use super::{theorem_applies, CordialError};
use crate::hypertree::{Hypertree, Remainder, Vertex};
use crate::labeling::{is_k_cordial_labeling, spread, Label, PartialLabeling, VertexLabeling};
use crate::zk::{distinct_subset_sum, distinct_subset_sum_avoiding, ZkError};

/// How the pendant vertices of a re-attached edge were labelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// `r > 0`: the last `r` vertices get distinct labels chosen to hit the
    /// target edge label.
    Residual,
    /// `r = 0`: the labels are forced and so is the edge label.
    Balanced,
    /// Fewer than `k - a` pendant vertices; the complementary block cannot be
    /// laid down whole, so `p - 1` distinct labels outside the heavy set are
    /// searched for instead.
    Fallback,
}

/// The bookkeeping for re-attaching one pendant edge. Vertex ids are those of
/// the hypertree being labelled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionPlan {
    pub edge: Vec<Vertex>,
    pub pendant: Vec<Vertex>,
    pub anchor: Vertex,
    pub anchor_label: Label,
    /// Number of vertices already labelled, reduced mod `k`.
    pub residue: usize,
    /// The `residue` labels currently used one more time than the rest.
    pub heavy_labels: Vec<Label>,
    /// `Z_k` minus the heavy labels, one vertex each.
    pub first_block: Vec<Label>,
    /// Number of full copies of `Z_k` laid down after the first block.
    pub full_blocks: usize,
    /// Vertices left after the blocks: `p - 1 - (k - residue) = full_blocks * k + remainder`.
    pub remainder: usize,
    /// Distinct labels for the remaining vertices.
    pub remainder_labels: Vec<Label>,
    pub target_edge_label: Label,
    pub route: Route,
    pub assignments: Vec<(Vertex, Label)>,
}

impl ExtensionPlan {
    /// `(k - a) + b * k + r = p - 1` outside the fallback route, and the
    /// executed labels are exactly the planned multiset.
    pub fn bookkeeping_holds(&self, k: usize) -> bool {
        let mut planned: Vec<Label> = self.first_block.clone();
        for label in 0..k {
            planned.extend(std::iter::repeat_n(label, self.full_blocks));
        }
        planned.extend(&self.remainder_labels);
        let mut executed: Vec<Label> = self.assignments.iter().map(|&(_, l)| l).collect();
        planned.sort_unstable();
        executed.sort_unstable();

        let counts_add_up = self.route == Route::Fallback
            || self.first_block.len() + self.full_blocks * k + self.remainder == self.pendant.len();
        counts_add_up
            && planned == executed
            && self.remainder_labels.len() == self.remainder
            && self
                .assignments
                .iter()
                .map(|&(v, _)| v)
                .eq(self.pendant.iter().copied())
    }
}

/// A labeling produced by [`label_hypertree`], with the per-edge plans that
/// built it.
#[derive(Debug, Clone)]
pub struct Construction {
    pub labeling: VertexLabeling,
    /// The vertices of the edge the reconstruction starts from.
    pub base_edge: Vec<Vertex>,
    /// One plan per re-attached edge, in re-attachment order.
    pub plans: Vec<ExtensionPlan>,
    pub fallback_fired: bool,
    /// Plans undone while backtracking out of fallback dead ends.
    pub backtracks: u64,
}

struct Peel {
    edge: Vec<Vertex>,
    pendant: Vec<Vertex>,
    anchor: Vertex,
}

/// Peels pendant edges until one edge is left. Returns that edge and the
/// peeled ones in removal order, all in the vertex ids of `t`.
fn peel(t: &Hypertree) -> (Vec<Vertex>, Vec<Peel>) {
    let mut current = t.clone();
    let mut to_original: Vec<Vertex> = (0..t.n()).collect();
    let mut peeled = Vec::with_capacity(t.m());
    loop {
        let leaf = current
            .find_removable_leaf_edge()
            .expect("peeling stops at one edge");
        let edge: Vec<Vertex> = current
            .edge(leaf.edge_index)
            .iter()
            .map(|&v| to_original[v])
            .collect();
        match current.remove_leaf_edge(&leaf) {
            Remainder::Empty => return (edge, peeled),
            Remainder::Tree { tree, lift } => {
                peeled.push(Peel {
                    edge,
                    pendant: leaf
                        .pendant_vertices
                        .iter()
                        .map(|&v| to_original[v])
                        .collect(),
                    anchor: to_original[leaf.anchor_vertex.expect("two or more edges")],
                });
                to_original = lift.iter().map(|&v| to_original[v]).collect();
                current = tree;
            }
        }
    }
}

/// Upper bound on plans tried while backtracking out of fallback dead ends.
const BACKTRACK_BUDGET: u64 = 1_000_000;

/// Builds a k-cordial labeling of `t` by peeling and re-attaching pendant
/// edges.
///
/// Each re-attached edge `e` with anchor `x` brings `p - 1` new vertices.
/// With `a` vertices' worth of imbalance already present (`a = |T'| mod k`,
/// carried by the heavy labels `I`), the new vertices first receive each label
/// of `Z_k \ I` once, which levels the vertex histogram; then `b` full copies
/// of `Z_k`; then `r` distinct labels picked with [`distinct_subset_sum`] so
/// the edge sum lands on the smallest least-used edge label. When `r = 0` the
/// edge label is forced, which only happens when the edge histogram is flat.
///
/// When `p - 1 < k - a` the first block does not fit; the new vertices then
/// take `p - 1` distinct labels from `Z_k \ I` summing to a least-used edge
/// label, starting from the witness of [`distinct_subset_sum_avoiding`], and
/// [`Construction::fallback_fired`] is set. Such a step can have no valid
/// choice at all; the reconstruction then backtracks, trying the other
/// least-used targets of earlier steps and the other fallback subsets. Without
/// a dead end the first choice is always taken, so the result is the plain
/// construction.
///
/// Both balance conditions are checked after every edge and the final
/// labeling is verified before it is returned.
pub fn label_hypertree(t: &Hypertree, k: usize) -> Result<Construction, CordialError> {
    if k == 0 {
        return Err(CordialError::InvalidModulus);
    }
    if !theorem_applies(t.p(), k) {
        return Err(CordialError::TheoremNotApplicable { p: t.p(), k });
    }
    if t.m() == 0 {
        return Ok(Construction {
            labeling: VertexLabeling::new(k, vec![0]).expect("0 < k"),
            base_edge: Vec::new(),
            plans: Vec::new(),
            fallback_fired: false,
            backtracks: 0,
        });
    }

    let (base_edge, mut steps) = peel(t);
    steps.reverse();
    let mut partial = PartialLabeling::new(k, t.n());
    for (i, &v) in base_edge.iter().enumerate() {
        partial.assign(v, i % k);
    }
    let mut edge_hist = vec![0usize; k];
    edge_hist[base_edge
        .iter()
        .map(|&v| partial.get(v).unwrap())
        .sum::<usize>()
        % k] += 1;

    let mut rebuild = Rebuild {
        p: t.p(),
        k,
        steps: &steps,
        partial,
        edge_hist,
        plans: Vec::with_capacity(steps.len()),
        tried: 0,
        backtracks: 0,
        dead_end: None,
    };
    if !rebuild.extend(0)? {
        let plan = rebuild
            .dead_end
            .expect("only fallback steps can run out of options");
        return Err(CordialError::FallbackExhausted {
            plan: Box::new(plan),
        });
    }

    let labeling = rebuild
        .partial
        .to_labeling()
        .expect("every vertex is covered by some edge");
    if !is_k_cordial_labeling(t, &labeling) {
        return Err(CordialError::InternalContradiction {
            reason: "final labeling is not k-cordial".to_string(),
            plan: None,
        });
    }
    let fallback_fired = rebuild.plans.iter().any(|p| p.route == Route::Fallback);
    Ok(Construction {
        labeling,
        base_edge,
        plans: rebuild.plans,
        fallback_fired,
        backtracks: rebuild.backtracks,
    })
}

struct Rebuild<'a> {
    p: usize,
    k: usize,
    steps: &'a [Peel],
    partial: PartialLabeling,
    edge_hist: Vec<usize>,
    plans: Vec<ExtensionPlan>,
    tried: u64,
    backtracks: u64,
    dead_end: Option<ExtensionPlan>,
}

impl Rebuild<'_> {
    /// Re-attaches `steps[i..]`. `Ok(false)` means a fallback dead end below.
    fn extend(&mut self, i: usize) -> Result<bool, CordialError> {
        let Some(step) = self.steps.get(i) else {
            return Ok(true);
        };
        let (skeleton, options) = plan_options(&self.partial, &self.edge_hist, step, self.p)?;
        let mut options = options.peekable();
        if options.peek().is_none() {
            self.dead_end = Some(skeleton);
            return Ok(false);
        }
        for plan in options {
            self.tried += 1;
            if self.tried > BACKTRACK_BUDGET {
                return Err(CordialError::FallbackExhausted {
                    plan: Box::new(plan),
                });
            }
            let edge_label = self.execute(&plan)?;
            self.plans.push(plan);
            if self.extend(i + 1)? {
                return Ok(true);
            }
            let plan = self.plans.pop().unwrap();
            for &(v, _) in &plan.assignments {
                self.partial.unassign(v);
            }
            self.edge_hist[edge_label] -= 1;
            self.backtracks += 1;
        }
        Ok(false)
    }

    /// Applies `plan` and checks that both histograms are still balanced.
    fn execute(&mut self, plan: &ExtensionPlan) -> Result<Label, CordialError> {
        let k = self.k;
        for &(v, label) in &plan.assignments {
            self.partial.assign(v, label);
        }
        let edge_label = plan
            .edge
            .iter()
            .map(|&v| self.partial.get(v).unwrap())
            .sum::<usize>()
            % k;
        self.edge_hist[edge_label] += 1;

        let reason = if edge_label != plan.target_edge_label {
            Some(format!(
                "edge label {edge_label}, planned {}",
                plan.target_edge_label
            ))
        } else if spread(self.partial.histogram()) > 1 {
            Some(format!(
                "vertex histogram {:?} is unbalanced",
                self.partial.histogram()
            ))
        } else if spread(&self.edge_hist) > 1 {
            Some(format!("edge histogram {:?} is unbalanced", self.edge_hist))
        } else if !plan.bookkeeping_holds(k) {
            Some("executed labels differ from the plan".to_string())
        } else {
            None
        };
        match reason {
            Some(reason) => Err(CordialError::InternalContradiction {
                reason,
                plan: Some(Box::new(plan.clone())),
            }),
            None => Ok(edge_label),
        }
    }
}

type Options = Box<dyn Iterator<Item = ExtensionPlan>>;

/// The candidate plans for one re-attachment, best first, together with the
/// common skeleton (used for diagnostics when there is no candidate).
fn plan_options(
    partial: &PartialLabeling,
    edge_hist: &[usize],
    step: &Peel,
    p: usize,
) -> Result<(ExtensionPlan, Options), CordialError> {
    let k = partial.k();
    let hist = partial.histogram();
    let residue = partial.assigned() % k;
    let heavy_labels: Vec<Label> = if residue == 0 {
        Vec::new()
    } else {
        let top = *hist.iter().max().unwrap();
        (0..k).filter(|&l| hist[l] == top).collect()
    };
    let anchor_label = partial
        .get(step.anchor)
        .expect("anchor is already labelled");
    let least = *edge_hist.iter().min().unwrap();
    let least_used: Vec<Label> = (0..k).filter(|&l| edge_hist[l] == least).collect();

    let mut plan = ExtensionPlan {
        edge: step.edge.clone(),
        pendant: step.pendant.clone(),
        anchor: step.anchor,
        anchor_label,
        residue,
        heavy_labels,
        first_block: Vec::new(),
        full_blocks: 0,
        remainder: 0,
        remainder_labels: Vec::new(),
        target_edge_label: least_used[0],
        route: Route::Residual,
        assignments: Vec::new(),
    };
    if plan.heavy_labels.len() != residue {
        return Err(CordialError::InternalContradiction {
            reason: format!("vertex histogram {hist:?} is not friendly"),
            plan: Some(Box::new(plan)),
        });
    }

    let new_vertices = p - 1;
    let complement = k - residue;
    if new_vertices < complement {
        plan.route = Route::Fallback;
        let ground: Vec<Label> = (0..k).filter(|l| !plan.heavy_labels.contains(l)).collect();
        let base = plan.clone();
        let options = fallback_choices(
            k,
            ground,
            &plan.heavy_labels,
            anchor_label,
            least_used,
            new_vertices,
        )
        .map(move |(target, labels)| {
            let mut option = base.clone();
            option.target_edge_label = target;
            option.assignments = option
                .pendant
                .iter()
                .copied()
                .zip(labels.iter().copied())
                .collect();
            option.first_block = labels;
            option
        });
        return Ok((plan, Box::new(options)));
    }

    plan.first_block = (0..k).filter(|l| !plan.heavy_labels.contains(l)).collect();
    let rest = new_vertices - complement;
    plan.full_blocks = rest / k;
    plan.remainder = rest % k;
    let fixed_sum = anchor_label
        + plan.first_block.iter().sum::<usize>()
        + plan.full_blocks * (k * (k - 1) / 2);

    let fill = |plan: &mut ExtensionPlan| {
        let labels: Vec<Label> = plan
            .first_block
            .iter()
            .copied()
            .chain((0..k).flat_map(|l| std::iter::repeat_n(l, plan.full_blocks)))
            .chain(plan.remainder_labels.iter().copied())
            .collect();
        plan.assignments = plan.pendant.iter().copied().zip(labels).collect();
    };

    if plan.remainder == 0 {
        plan.route = Route::Balanced;
        plan.target_edge_label = fixed_sum % k;
        let mut only = plan.clone();
        fill(&mut only);
        return Ok((plan, Box::new(std::iter::once(only))));
    }
    let options = least_used
        .iter()
        .map(|&target| {
            let needed = (target + k - fixed_sum % k) % k;
            let w = distinct_subset_sum(k, plan.remainder, needed)
                .expect("0 < remainder < k always admits a witness");
            let mut option = plan.clone();
            option.target_edge_label = target;
            option.remainder_labels = w.elements;
            fill(&mut option);
            option
        })
        .collect::<Vec<_>>();
    Ok((plan, Box::new(options.into_iter())))
}

/// `(target edge label, labels)` pairs for a short edge: `count` distinct
/// labels from `ground` adding up, with the anchor, to a least-used edge
/// label. For each target the witness of [`distinct_subset_sum_avoiding`]
/// comes first, then the remaining subsets in lexicographic order.
fn fallback_choices(
    k: usize,
    ground: Vec<Label>,
    heavy: &[Label],
    anchor_label: Label,
    least_used: Vec<Label>,
    count: usize,
) -> impl Iterator<Item = (Label, Vec<Label>)> {
    let firsts: Vec<(Label, Vec<Label>)> = least_used
        .into_iter()
        .filter_map(|target| {
            let needed = (target + k - anchor_label) % k;
            match distinct_subset_sum_avoiding(k, count, needed, heavy) {
                Ok(w) => Some((target, w.elements)),
                Err(ZkError::Infeasible { .. }) => None,
                Err(e) => unreachable!("arguments are in range: {e}"),
            }
        })
        .collect();
    firsts.into_iter().flat_map(move |(target, first)| {
        let needed = (target + k - anchor_label) % k;
        let others = ground.clone().into_iter().combinations(count).filter({
            let first = first.clone();
            move |c| c.iter().sum::<usize>() % k == needed && *c != first
        });
        std::iter::once(first)
            .chain(others)
            .map(move |labels| (target, labels))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::{induced_edge_labels, is_k_friendly};

    fn tree(p: usize, n: usize, edges: &[&[usize]]) -> Hypertree {
        Hypertree::new(p, n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn single_edge_base_case() {
        let t = tree(3, 3, &[&[0, 1, 2]]);
        let c = label_hypertree(&t, 2).unwrap();
        assert_eq!(c.labeling.labels(), &[0, 1, 0]);
        assert_eq!(c.labeling.histogram(), &[2, 1]);
        assert!(c.plans.is_empty());
        assert!(is_k_cordial_labeling(&t, &c.labeling));
    }

    #[test]
    fn two_triples_mod_two() {
        let t = tree(3, 5, &[&[0, 1, 2], &[2, 3, 4]]);
        let c = label_hypertree(&t, 2).unwrap();
        assert!(is_k_cordial_labeling(&t, &c.labeling));
        let mut labels = induced_edge_labels(&t, &c.labeling).unwrap().edge_labels;
        labels.sort_unstable();
        assert_eq!(labels, vec![0, 1]);
        assert_eq!(c.plans.len(), 1);
        assert_eq!(c.plans[0].route, Route::Residual);
    }

    #[test]
    fn two_quadruples_mod_four() {
        let t = tree(4, 7, &[&[0, 1, 2, 3], &[3, 4, 5, 6]]);
        let c = label_hypertree(&t, 4).unwrap();
        assert!(is_k_cordial_labeling(&t, &c.labeling));
        let mut hist = c.labeling.histogram().to_vec();
        hist.sort_unstable();
        assert_eq!(hist, vec![1, 2, 2, 2]);
    }

    #[test]
    fn theorem_not_applicable() {
        let t = tree(4, 7, &[&[0, 1, 2, 3], &[3, 4, 5, 6]]);
        assert_eq!(
            label_hypertree(&t, 5).unwrap_err(),
            CordialError::TheoremNotApplicable { p: 4, k: 5 }
        );
        assert_eq!(
            label_hypertree(&t, 0).unwrap_err(),
            CordialError::InvalidModulus
        );
    }

    #[test]
    fn modulus_one() {
        let t = crate::hypertree::random_hypertree(3, 7, 11);
        let c = label_hypertree(&t, 1).unwrap();
        assert!(c.labeling.labels().iter().all(|&l| l == 0));
        assert!(is_k_cordial_labeling(&t, &c.labeling));
    }

    #[test]
    fn lone_vertex() {
        let t = tree(3, 1, &[]);
        let c = label_hypertree(&t, 4).unwrap();
        assert_eq!(c.labeling.labels(), &[0]);
        assert!(is_k_friendly(&c.labeling));
    }

    #[test]
    fn short_edges_with_large_modulus_use_the_fallback() {
        // p = 3, k = 6: two new vertices. After the base edge three labels
        // are light, after the next edge only one is.
        let t = tree(3, 7, &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 6]]);
        let c = label_hypertree(&t, 6).unwrap();
        assert!(c.fallback_fired);
        let routes: Vec<Route> = c.plans.iter().map(|p| p.route).collect();
        assert_eq!(routes, vec![Route::Fallback, Route::Residual]);
        assert!(is_k_cordial_labeling(&t, &c.labeling));
    }

    #[test]
    fn balanced_route_when_p_divisible_by_k() {
        // p = k = 2 on a path: every other edge arrives with a flat edge histogram.
        let t = tree(2, 5, &[&[0, 1], &[1, 2], &[2, 3], &[3, 4]]);
        let c = label_hypertree(&t, 2).unwrap();
        assert!(c.plans.iter().any(|p| p.route == Route::Balanced));
        assert!(is_k_cordial_labeling(&t, &c.labeling));
    }

    #[test]
    fn plans_account_for_every_pendant_vertex() {
        let t = crate::hypertree::random_hypertree(7, 6, 5);
        let c = label_hypertree(&t, 3).unwrap();
        for plan in &c.plans {
            assert!(plan.bookkeeping_holds(3));
            assert_eq!(
                plan.first_block.len() + 3 * plan.full_blocks + plan.remainder,
                6
            );
        }
    }
}
