//! Exhaustive cordiality sweep over all small hypertrees.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use super::{brute_force_label, label_hypertree, theorem_applies, CordialError, SearchOutcome};
use crate::hypertree::{enumerate_hypertrees, Hypertree};

#[derive(Debug, Clone)]
pub struct ExploreConfig {
    pub p: RangeInclusive<usize>,
    pub m: RangeInclusive<usize>,
    pub k: RangeInclusive<usize>,
    /// Search-node budget for each brute-force run.
    pub budget: u64,
    /// Worker threads; the report does not depend on it.
    pub jobs: usize,
}

impl ExploreConfig {
    pub fn validate(&self) -> Result<(), CordialError> {
        let bad = |msg: &str| Err(CordialError::InvalidConfig(msg.to_string()));
        if self.p.is_empty() || self.m.is_empty() || self.k.is_empty() {
            return bad("ranges must be non-empty");
        }
        if *self.p.start() < 2 {
            return bad("p must be at least 2");
        }
        if *self.m.start() < 1 {
            return bad("m must be at least 1");
        }
        if *self.k.start() < 1 {
            return bad("k must be at least 1");
        }
        if self.budget == 0 {
            return bad("budget must be positive");
        }
        if self.jobs == 0 {
            return bad("jobs must be positive");
        }
        Ok(())
    }
}

/// Tallies for one `(p, m, k)` combination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub p: usize,
    pub m: usize,
    pub k: usize,
    pub hypertrees: usize,
    pub cordial: usize,
    pub non_cordial: usize,
    pub exceeded: usize,
    pub theorem_applies: bool,
    /// Constructions that returned a verified labeling.
    pub theorem_verified: usize,
    /// Of those, how many needed the fallback for short edges.
    pub theorem_fallbacks: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub p: usize,
    pub m: usize,
    pub k: usize,
    /// The hypertree in the plain-text file format.
    pub hypertree: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremFailure {
    pub p: usize,
    pub m: usize,
    pub k: usize,
    pub hypertree: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExploreReport {
    pub cells: Vec<CellReport>,
    pub counterexamples: Vec<Counterexample>,
    pub theorem_failures: Vec<TheoremFailure>,
    /// Enumeration is exact up to isomorphism, so each class is counted once.
    pub enumeration_exact: bool,
}

impl ExploreReport {
    pub fn non_cordial(&self) -> usize {
        self.cells.iter().map(|c| c.non_cordial).sum()
    }

    pub fn exceeded(&self) -> usize {
        self.cells.iter().map(|c| c.exceeded).sum()
    }
}

enum Verdict {
    Cordial,
    NonCordial,
    Exceeded,
}

struct Instance<'a> {
    cell: usize,
    tree: &'a Hypertree,
    k: usize,
}

struct Record {
    verdict: Verdict,
    /// `None` when the construction does not apply.
    theorem: Option<Result<bool, String>>,
}

fn examine(tree: &Hypertree, k: usize, budget: u64) -> Record {
    let verdict = match brute_force_label(tree, k, budget) {
        Ok(SearchOutcome::Found(_)) => Verdict::Cordial,
        Ok(SearchOutcome::NoneExists) => Verdict::NonCordial,
        Err(_) => Verdict::Exceeded,
    };
    let theorem = theorem_applies(tree.p(), k).then(|| {
        label_hypertree(tree, k)
            .map(|c| c.fallback_fired)
            .map_err(|e| e.to_string())
    });
    Record { verdict, theorem }
}

/// Runs the brute-force labeler on every hypertree in range for every `k` in
/// range, and cross-checks the inductive construction wherever it applies.
///
/// Instances are independent; with `jobs > 1` they run on a thread pool and
/// the results are merged in enumeration order, so the report is identical
/// for any number of jobs.
pub fn explore_conjecture(config: &ExploreConfig) -> Result<ExploreReport, CordialError> {
    config.validate()?;

    let mut cells = Vec::new();
    let mut trees: Vec<Vec<Hypertree>> = Vec::new();
    for p in config.p.clone() {
        for m in config.m.clone() {
            let level: Vec<Hypertree> = enumerate_hypertrees(p, m).collect();
            for k in config.k.clone() {
                cells.push(CellReport {
                    p,
                    m,
                    k,
                    hypertrees: level.len(),
                    cordial: 0,
                    non_cordial: 0,
                    exceeded: 0,
                    theorem_applies: theorem_applies(p, k),
                    theorem_verified: 0,
                    theorem_fallbacks: 0,
                });
            }
            trees.push(level);
        }
    }

    let ks = config.k.clone().count();
    let instances: Vec<Instance> = cells
        .iter()
        .enumerate()
        .flat_map(|(cell, report)| {
            trees[cell / ks].iter().map(move |tree| Instance {
                cell,
                tree,
                k: report.k,
            })
        })
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| CordialError::InvalidConfig(e.to_string()))?;
    let records: Vec<Record> = pool.install(|| {
        instances
            .par_iter()
            .map(|inst| examine(inst.tree, inst.k, config.budget))
            .collect()
    });

    let mut counterexamples = Vec::new();
    let mut theorem_failures = Vec::new();
    for (inst, record) in instances.iter().zip(records) {
        let cell = &mut cells[inst.cell];
        match record.verdict {
            Verdict::Cordial => cell.cordial += 1,
            Verdict::Exceeded => cell.exceeded += 1,
            Verdict::NonCordial => {
                cell.non_cordial += 1;
                counterexamples.push(Counterexample {
                    p: cell.p,
                    m: cell.m,
                    k: cell.k,
                    hypertree: inst.tree.to_string(),
                });
            }
        }
        match record.theorem {
            None => {}
            Some(Ok(fallback)) => {
                cell.theorem_verified += 1;
                cell.theorem_fallbacks += usize::from(fallback);
            }
            Some(Err(error)) => theorem_failures.push(TheoremFailure {
                p: cell.p,
                m: cell.m,
                k: cell.k,
                hypertree: inst.tree.to_string(),
                error,
            }),
        }
    }

    Ok(ExploreReport {
        cells,
        counterexamples,
        theorem_failures,
        enumeration_exact: true,
    })
}
