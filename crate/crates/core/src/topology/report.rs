use std::collections::BTreeMap;

use serde::Serialize;

use super::{all_regular_genera, euler_characteristic, gurau_degree, singularity_profile, SingularityProfile, TopologyError};
use crate::graph::ColoredGraph;
use crate::half::HalfInteger;
use crate::residue::is_bipartite;

/// Per-graph invariant summary, serialized as one JSON object.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub order: usize,
    pub d: usize,
    pub bipartite: bool,
    pub genera: BTreeMap<String, HalfInteger>,
    pub gdegree: HalfInteger,
    pub euler: i64,
    pub profile: Option<SingularityProfile>,
    pub regular_genus: HalfInteger,
}

pub fn invariant_report(g: &ColoredGraph) -> Result<InvariantReport, TopologyError> {
    let genera = all_regular_genera(g)?;
    let regular_genus = *genera.values().min().expect("at least one class");
    Ok(InvariantReport {
        order: g.order(),
        d: g.d(),
        bipartite: is_bipartite(g),
        gdegree: gurau_degree(g)?,
        euler: euler_characteristic(g),
        profile: if g.d() == 3 { Some(singularity_profile(g)?) } else { None },
        genera: genera.into_iter().map(|(eps, rho)| (eps.to_string(), rho)).collect(),
        regular_genus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::torus_gem;

    #[test]
    fn torus_report_json() {
        let r = invariant_report(&torus_gem()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"order":6,"d":2,"bipartite":true,"genera":{"(0,1,2)":"1"},"gdegree":"1","euler":0,"profile":null,"regular_genus":"1"}"#
        );
    }
}
