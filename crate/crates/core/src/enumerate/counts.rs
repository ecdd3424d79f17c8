use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::search::{candidate_bound, color_fixed_classes};
use super::{EnumerationError, CANDIDATE_LIMIT};
use crate::canon::Canonizer;
use crate::half::HalfInteger;
use crate::par::Execution;
use crate::perm::factorial;
use crate::topology::gurau_degree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountMode {
    /// Tuples of matchings on the vertex set `0..2p`.
    Labeled,
    /// Classes up to color-preserving isomorphism.
    Canonical,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeEnergyCounts {
    pub d: usize,
    pub p: usize,
    pub mode: CountMode,
    pub bipartite_only: bool,
    pub counts: BTreeMap<HalfInteger, u64>,
}

/// Connected graphs of order `2p` per G-degree.
///
/// Labeled counts come from the classes by orbit-stabilizer: a class with
/// `|Aut|` color-preserving automorphisms has `(2p)!/|Aut|` labelings.
pub fn free_energy_counts(
    d: usize,
    p: usize,
    bipartite_only: bool,
    mode: CountMode,
    exec: Execution,
) -> Result<FreeEnergyCounts, EnumerationError> {
    if d == 0 || p == 0 || p > 8 {
        return Err(EnumerationError::InvalidParams(format!("need d >= 1 and 1 <= p <= 8, got d = {d}, p = {p}")));
    }
    let estimate = candidate_bound(d, 2 * p);
    if estimate > CANDIDATE_LIMIT {
        return Err(EnumerationError::InfeasibleBudget { estimate });
    }
    let classes = color_fixed_classes(d, 2 * p, bipartite_only, exec);
    let labelings = factorial(2 * p);
    let per_class = exec.map(&classes, |code| -> Result<(HalfInteger, u64), EnumerationError> {
        let g = code.to_graph()?;
        let weight = match mode {
            CountMode::Canonical => 1,
            CountMode::Labeled => labelings / Canonizer::new().automorphism_count(&g)? as u64,
        };
        Ok((gurau_degree(&g)?, weight))
    });
    let mut counts = BTreeMap::new();
    for r in per_class {
        let (omega, weight) = r?;
        *counts.entry(omega).or_default() += weight;
    }
    Ok(FreeEnergyCounts { d, p, mode, bipartite_only, counts })
}
