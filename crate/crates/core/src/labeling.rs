//! Vertex labelings over `Z_k` and the edge labels they induce.

use serde::Serialize;
use thiserror::Error;

use crate::hypertree::{Hypertree, Vertex};

/// An element of `Z_k`, stored as its representative in `0..k`.
pub type Label = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("modulus must be at least 1")]
    InvalidModulus,
    #[error("vertex {vertex} has label {label}, outside Z_{k}")]
    LabelOutOfRange {
        vertex: Vertex,
        label: Label,
        k: usize,
    },
    #[error("labeling covers {found} vertices, hypertree has {expected}")]
    LengthMismatch { expected: usize, found: usize },
}

/// A complete labeling `c: V -> Z_k` together with its class sizes `v_c(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexLabeling {
    k: usize,
    labels: Vec<Label>,
    histogram: Vec<usize>,
}

impl VertexLabeling {
    pub fn new(k: usize, labels: Vec<Label>) -> Result<Self, LabelingError> {
        if k == 0 {
            return Err(LabelingError::InvalidModulus);
        }
        let mut histogram = vec![0; k];
        for (vertex, &label) in labels.iter().enumerate() {
            if label >= k {
                return Err(LabelingError::LabelOutOfRange { vertex, label, k });
            }
            histogram[label] += 1;
        }
        Ok(VertexLabeling {
            k,
            labels,
            histogram,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> Label {
        self.labels[v]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// `histogram()[i]` is the number of vertices labelled `i`.
    pub fn histogram(&self) -> &[usize] {
        &self.histogram
    }

    /// Adds `shift` to every label, modulo `k`.
    pub fn shifted(&self, shift: Label) -> VertexLabeling {
        let labels = self.labels.iter().map(|&l| (l + shift) % self.k).collect();
        VertexLabeling::new(self.k, labels).expect("shifted labels stay in range")
    }
}

/// A labeling under construction, with class sizes updated on every change.
#[derive(Debug, Clone)]
pub struct PartialLabeling {
    k: usize,
    labels: Vec<Option<Label>>,
    histogram: Vec<usize>,
    assigned: usize,
}

impl PartialLabeling {
    /// # Panics
    ///
    /// Panics if `k == 0`.
    pub fn new(k: usize, n: usize) -> Self {
        assert!(k >= 1, "modulus must be at least 1");
        PartialLabeling {
            k,
            labels: vec![None; n],
            histogram: vec![0; k],
            assigned: 0,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, v: Vertex) -> Option<Label> {
        self.labels[v]
    }

    pub fn histogram(&self) -> &[usize] {
        &self.histogram
    }

    pub fn assigned(&self) -> usize {
        self.assigned
    }

    /// # Panics
    ///
    /// Panics if `v` already has a label or `label >= k`.
    pub fn assign(&mut self, v: Vertex, label: Label) {
        assert!(label < self.k, "label {label} outside Z_{}", self.k);
        assert!(self.labels[v].is_none(), "vertex {v} is already labelled");
        self.labels[v] = Some(label);
        self.histogram[label] += 1;
        self.assigned += 1;
    }

    pub fn unassign(&mut self, v: Vertex) -> Option<Label> {
        let label = self.labels[v].take()?;
        self.histogram[label] -= 1;
        self.assigned -= 1;
        Some(label)
    }

    /// The finished labeling, or `None` while some vertex is unlabelled.
    pub fn to_labeling(&self) -> Option<VertexLabeling> {
        let labels = self.labels.iter().copied().collect::<Option<Vec<_>>>()?;
        Some(VertexLabeling {
            k: self.k,
            labels,
            histogram: self.histogram.clone(),
        })
    }
}

/// The induced edge labels `c*(e)` and their class sizes `e_{c*}(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLabelSummary {
    pub edge_labels: Vec<Label>,
    pub histogram: Vec<usize>,
}

/// Largest class size minus smallest.
pub fn spread(histogram: &[usize]) -> usize {
    let max = histogram.iter().max().copied().unwrap_or(0);
    let min = histogram.iter().min().copied().unwrap_or(0);
    max - min
}

pub fn induced_edge_labels(
    t: &Hypertree,
    c: &VertexLabeling,
) -> Result<EdgeLabelSummary, LabelingError> {
    if c.len() != t.n() {
        return Err(LabelingError::LengthMismatch {
            expected: t.n(),
            found: c.len(),
        });
    }
    let k = c.k();
    let mut histogram = vec![0; k];
    let edge_labels = t
        .edges()
        .iter()
        .map(|e| {
            let label = e.iter().map(|&v| c.label(v)).sum::<usize>() % k;
            histogram[label] += 1;
            label
        })
        .collect();
    Ok(EdgeLabelSummary {
        edge_labels,
        histogram,
    })
}

pub fn is_k_friendly(c: &VertexLabeling) -> bool {
    c.k() == 1 || spread(c.histogram()) <= 1
}

/// `c` is k-friendly and its induced edge labels are balanced too.
pub fn is_k_cordial_labeling(t: &Hypertree, c: &VertexLabeling) -> bool {
    if c.len() != t.n() {
        return false;
    }
    if c.k() == 1 {
        return true;
    }
    is_k_friendly(c)
        && induced_edge_labels(t, c).is_ok_and(|summary| spread(&summary.histogram) <= 1)
}

/// Everything worth reporting about a labeling, in the JSON output layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelingReport {
    pub k: usize,
    pub labels: Vec<Label>,
    pub edge_labels: Vec<Label>,
    pub vertex_hist: Vec<usize>,
    pub edge_hist: Vec<usize>,
    pub k_friendly: bool,
    pub k_cordial: bool,
}

impl LabelingReport {
    pub fn new(t: &Hypertree, c: &VertexLabeling) -> Result<Self, LabelingError> {
        let summary = induced_edge_labels(t, c)?;
        Ok(LabelingReport {
            k: c.k(),
            labels: c.labels().to_vec(),
            edge_labels: summary.edge_labels,
            vertex_hist: c.histogram().to_vec(),
            edge_hist: summary.histogram,
            k_friendly: is_k_friendly(c),
            k_cordial: is_k_cordial_labeling(t, c),
        })
    }
}
