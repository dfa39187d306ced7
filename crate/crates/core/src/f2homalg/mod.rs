//! Linear algebra and homological algebra over the two-element field.
//!
//! [`Complex`] is a finite graded complex whose differential raises `h` by
//! one and preserves `q`. [`FilteredComplex`] adds an integer filtration
//! grading; [`compute_pages`] computes its spectral sequence by canceling
//! differential components stage by stage, and [`oracle_pages`] recomputes
//! the same ranks from the subquotient definition.

mod cancel;
mod complex;
mod matrix;
mod oracle;
mod pages;

pub use cancel::{cancel_pair, Cancellation};
pub use complex::{Chain, Complex, Degree, FilteredComplex};
pub use matrix::SparseMatrixF2;
pub use oracle::oracle_pages;
pub use pages::{compute_pages, compute_pages_ordered, ranks_at, track_cycle, CycleTrace, Page, PageGrading, PageRanks};

#[allow(unused_imports)]
pub(crate) use cancel::Workspace;

/// Homology ranks per bigrading of a complex.
pub fn homology(c: &Complex) -> std::collections::BTreeMap<Degree, usize> {
    c.homology()
}

/// Rank over F2.
pub fn rank(m: &SparseMatrixF2) -> usize {
    m.rank()
}
