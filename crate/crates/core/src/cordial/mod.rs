//! Finding k-cordial labelings.
//!
//! [`label_hypertree`] is the inductive construction: peel pendant edges down
//! to a single edge, then put them back one at a time, labelling the new
//! vertices so that both histograms stay balanced. It applies whenever
//! [`theorem_applies`] holds. [`brute_force_label`] decides cordiality for
//! any small instance, and [`explore_conjecture`] sweeps both over all small
//! hypertrees.

mod brute;
mod construct;
mod explore;

use thiserror::Error;

pub use brute::{brute_force_label, SearchOutcome, DEFAULT_BUDGET};
pub use construct::{label_hypertree, Construction, ExtensionPlan, Route};
pub use explore::{
    explore_conjecture, CellReport, Counterexample, ExploreConfig, ExploreReport, TheoremFailure,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CordialError {
    #[error("modulus must be at least 1")]
    InvalidModulus,
    #[error("no construction is known for p = {p}, k = {k}")]
    TheoremNotApplicable { p: usize, k: usize },
    #[error("construction broke an invariant: {reason}")]
    InternalContradiction {
        reason: String,
        plan: Option<Box<ExtensionPlan>>,
    },
    #[error("no friendly completion reaches a least-used edge label")]
    FallbackExhausted { plan: Box<ExtensionPlan> },
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
}

/// Whether the inductive construction covers `p`-uniform hypertrees with
/// labels in `Z_k`: `k = 1`, or `p` odd and `k` even, or `p = 1 (mod k)`, or
/// `p = 0 (mod k)`.
pub fn theorem_applies(p: usize, k: usize) -> bool {
    k == 1 || (p % 2 == 1 && k.is_multiple_of(2)) || p % k == 1 || p.is_multiple_of(k)
}
