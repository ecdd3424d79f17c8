//! Exhaustive enumeration of connected colored graphs up to isomorphism,
//! catalogs of their invariants and the tables and probes built on them.

mod catalog;
mod classify;
mod counts;
mod search;

pub use catalog::{Catalog, CatalogEntry, EnumerationFilter, EnumerationParams};
pub use classify::{
    classify, conjecture_probe, finiteness_bound, finiteness_check, finiteness_sweep, Bucket, BucketKey,
    ClassificationTable, FinitenessReport, FinitenessViolation, ProbeGroup, ProbeReport,
};
pub use counts::{free_energy_counts, CountMode, FreeEnergyCounts};
pub use search::{
    candidate_bound, color_fixed_classes, enumerate, enumerate_catalog, partitions, Checkpoint, Outcome, SearchOptions,
};

use crate::canon::CanonError;
use crate::topology::TopologyError;

/// Candidate count above which an unbudgeted search is refused.
pub const CANDIDATE_LIMIT: f64 = 5e9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EnumerationError {
    #[error("inconsistent filter: {0}")]
    InconsistentFilter(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("about {estimate:.3e} candidates; give a time budget to run it in checkpointed slices")]
    InfeasibleBudget { estimate: f64 },
    #[error("catalog reaches p = {available}, the bound needs p = {required}")]
    IncompleteCatalog { required: i64, available: usize },
    #[error("checkpoint was written for different parameters")]
    CheckpointMismatch,
    #[error("expected a catalog of dimension {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("catalog line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Canon(#[from] CanonError),
}
