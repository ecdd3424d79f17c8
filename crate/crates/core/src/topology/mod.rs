//! Genus, G-degree, Euler characteristic, surface classification and
//! singularity analysis of the pseudomanifolds represented by colored graphs.

mod genus;
mod report;
mod surface;

use serde::{Deserialize, Serialize};

pub use genus::{
    all_regular_genera, euler_characteristic, gurau_degree, gurau_degree_recursive, hat_residue_counts,
    pair_residue_counts, regular_genus, regular_genus_min, CyclicPermutation,
};
pub(crate) use genus::gurau_degree_unchecked;
pub use report::{invariant_report, InvariantReport};
pub(crate) use surface::surface_type_unchecked;
pub use surface::{
    boundary_label, integrality_conditions, membership_in_gs, orientable, singularity_profile, surface_type,
    Integrality, SingularityProfile, SurfaceType,
};

use crate::half::HalfInteger;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TopologyError {
    #[error("operation requires a connected graph")]
    Disconnected,
    #[error("operation requires d = {expected}, got d = {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("G-degree {value} is not a non-negative integer although d >= 3")]
    IntegralityViolation { value: HalfInteger },
}

/// A yes/no answer that may be out of reach of the available certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}
