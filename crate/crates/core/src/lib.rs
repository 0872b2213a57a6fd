//! Cordial vertex labelings of uniform hypertrees.
//!
//! A `p`-uniform hypertree is a connected, acyclic hypergraph whose edges all
//! contain exactly `p` vertices. A labeling `c: V -> Z_k` is *k-friendly* when
//! the label classes differ in size by at most one, and *k-cordial* when, in
//! addition, the induced edge labels `c*(e) = sum of c(v) over v in e (mod k)`
//! are balanced the same way.
//!
//! The crate is organised as follows:
//!
//! - [`hypertree`]: the validated [`Hypertree`] type, leaf-edge peeling,
//!   exhaustive enumeration up to isomorphism, random generation and the
//!   plain-text file format.
//! - [`labeling`]: vertex labelings, induced edge labels and the
//!   friendliness / cordiality predicates.
//! - [`zk`]: distinct elements of `Z_k` with a prescribed sum, constructively
//!   and by exhaustive search.
//! - [`cordial`]: the inductive labeler, the brute-force labeler and the
//!   conjecture sweep.

pub mod cordial;
pub mod hypertree;
pub mod labeling;
pub mod zk;

pub use cordial::{
    brute_force_label, explore_conjecture, label_hypertree, theorem_applies, Construction,
    CordialError, ExploreConfig, ExploreReport, ExtensionPlan, Route, SearchOutcome,
};
pub use hypertree::{
    enumerate_hypertrees, random_hypertree, Hypertree, HypertreeError, LeafEdgeDecomposition,
    Remainder, Vertex,
};
pub use labeling::{
    induced_edge_labels, is_k_cordial_labeling, is_k_friendly, EdgeLabelSummary, Label,
    LabelingError, LabelingReport, PartialLabeling, VertexLabeling,
};
pub use zk::{
    distinct_subset_sum, distinct_subset_sum_avoiding, oracle_subset_sum, SubsetSumWitness, ZkError,
};
