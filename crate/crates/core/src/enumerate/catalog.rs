use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use super::EnumerationError;
use crate::canon::{CanonMode, CanonicalCode, Canonizer};
use crate::colorset::ColorSet;
use crate::graph::ColoredGraph;
use crate::half::HalfInteger;
use crate::moves::{has_r_dipole, is_contracted, reduce, residue_is_sphere, Certificate};
use crate::residue::{is_bipartite, residues};
use crate::topology::{
    gurau_degree, hat_residue_counts, membership_in_gs, regular_genus_min, singularity_profile, SingularityProfile,
    Verdict,
};

/// Predicates a graph must satisfy to enter a catalog.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct EnumerationFilter {
    pub bipartite_only: bool,
    pub non_bipartite_only: bool,
    /// Keeps graphs certified contracted; `Unknown` verdicts are dropped.
    pub contracted_only: bool,
    pub no_2_dipoles: bool,
    /// At least one `ĉ`-residue certified not to be a sphere.
    pub require_singular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_gdegree: Option<HalfInteger>,
    pub membership_gs_only: bool,
}

impl EnumerationFilter {
    pub fn validate(&self) -> Result<(), EnumerationError> {
        if self.bipartite_only && self.non_bipartite_only {
            return Err(EnumerationError::InconsistentFilter("bipartite_only and non_bipartite_only".into()));
        }
        if self.max_gdegree.is_some_and(|m| m < HalfInteger::ZERO) {
            return Err(EnumerationError::InconsistentFilter("max_gdegree is negative".into()));
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        *self == EnumerationFilter::default()
    }

    /// Evaluates the filter on `entry`, computed from `g`.
    pub fn accepts(&self, entry: &CatalogEntry, g: &ColoredGraph) -> bool {
        if (self.bipartite_only && !entry.bipartite) || (self.non_bipartite_only && entry.bipartite) {
            return false;
        }
        if self.max_gdegree.is_some_and(|m| entry.gdegree > m) {
            return false;
        }
        if self.contracted_only && entry.contracted != Verdict::Yes {
            return false;
        }
        if self.membership_gs_only && entry.membership_gs != Verdict::Yes {
            return false;
        }
        if self.no_2_dipoles && g.d() >= 2 && has_r_dipole(g, 2) {
            return false;
        }
        if self.require_singular && !has_singular_residue(g) {
            return false;
        }
        true
    }
}

/// Some `ĉ`-residue is certified not to represent a sphere.
pub(crate) fn has_singular_residue(g: &ColoredGraph) -> bool {
    let d = g.d();
    (0..=d).any(|c| {
        residues(g, ColorSet::full(d).without(c))
            .components
            .iter()
            .any(|r| residue_is_sphere(r.graph.as_ref()) == Verdict::No)
    })
}

/// What was asked of the generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationParams {
    pub d: usize,
    pub max_order: usize,
    #[serde(default)]
    pub filter: EnumerationFilter,
    pub mode: CanonMode,
}

impl EnumerationParams {
    pub fn new(d: usize, max_order: usize) -> Self {
        EnumerationParams { d, max_order, filter: EnumerationFilter::default(), mode: CanonMode::ColorFree }
    }

    pub fn with_filter(mut self, filter: EnumerationFilter) -> Self {
        self.filter = filter;
        self
    }

    pub fn with_mode(mut self, mode: CanonMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn validate(&self) -> Result<(), EnumerationError> {
        if self.d == 0 || self.d > 8 {
            return Err(EnumerationError::InvalidParams(format!("d = {} outside 1..=8", self.d)));
        }
        if self.max_order < 2 || self.max_order % 2 == 1 {
            return Err(EnumerationError::InvalidParams(format!("max order {} must be even and >= 2", self.max_order)));
        }
        if self.max_order > 16 {
            return Err(EnumerationError::InvalidParams(format!("max order {} is beyond reach", self.max_order)));
        }
        self.filter.validate()
    }
}

/// One isomorphism class with its invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub code: CanonicalCode,
    pub order: usize,
    pub d: usize,
    pub bipartite: bool,
    pub gdegree: HalfInteger,
    pub regular_genus: HalfInteger,
    /// `g_î`: number of `ĉ`-residues per color.
    pub hat_counts: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<SingularityProfile>,
    pub contracted: Verdict,
    pub membership_gs: Verdict,
    /// Color-preserving automorphisms.
    pub automorphisms: usize,
    pub certificate: Certificate,
    /// Color-free code of the greedily reduced graph.
    pub fingerprint: CanonicalCode,
    pub provenance: EnumerationParams,
}

impl CatalogEntry {
    /// Computes every invariant of `g`; the code uses `params.mode`.
    pub fn from_graph(g: &ColoredGraph, params: &EnumerationParams) -> Result<Self, EnumerationError> {
        let mut canon = Canonizer::new();
        let code = canon.canonical_code(g, params.mode)?;
        let reduced = reduce(g);
        Ok(CatalogEntry {
            order: g.order(),
            d: g.d(),
            bipartite: is_bipartite(g),
            gdegree: gurau_degree(g)?,
            regular_genus: regular_genus_min(g)?,
            hat_counts: hat_residue_counts(g),
            profile: if g.d() == 3 { Some(singularity_profile(g)?) } else { None },
            contracted: is_contracted(g),
            membership_gs: membership_in_gs(g),
            automorphisms: canon.automorphism_count(g)?,
            certificate: reduced.certificate,
            fingerprint: canon.canonical_code(&reduced.graph, CanonMode::ColorFree)?,
            code,
            provenance: params.clone(),
        })
    }

    pub fn p(&self) -> usize {
        self.order / 2
    }

    pub fn graph(&self) -> ColoredGraph {
        self.code.to_graph().expect("catalog codes decode")
    }

    /// `Σ g_î` over all colors.
    pub fn hat_sum(&self) -> usize {
        self.hat_counts.iter().sum()
    }

    pub fn boundary_label(&self) -> String {
        self.profile.as_ref().map_or_else(|| "-".to_string(), SingularityProfile::boundary_label)
    }
}

/// Entries sorted by code, plus the parameters that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    /// `None` only for a catalog read back from an empty file.
    pub params: Option<EnumerationParams>,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn d(&self) -> Option<usize> {
        self.params.as_ref().map(|p| p.d)
    }

    /// Largest `p` the catalog was generated for.
    pub fn max_p(&self) -> usize {
        self.params.as_ref().map_or(0, |p| p.max_order / 2)
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> io::Result<()> {
        for e in &self.entries {
            serde_json::to_writer(&mut out, e)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("JSON is UTF-8")
    }

    pub fn from_jsonl(body: &str) -> Result<Self, EnumerationError> {
        let mut entries = Vec::new();
        for (i, line) in body.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let entry: CatalogEntry =
                serde_json::from_str(line).map_err(|e| EnumerationError::Parse { line: i + 1, message: e.to_string() })?;
            entries.push(entry);
        }
        let params = entries.first().map(|e| e.provenance.clone());
        if entries.iter().any(|e| Some(&e.provenance) != params.as_ref()) {
            return Err(EnumerationError::Parse { line: 0, message: "entries disagree on provenance".into() });
        }
        Ok(Catalog { params, entries })
    }
}
