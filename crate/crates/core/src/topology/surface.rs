//! Surfaces represented by 3-colored graphs, singular structure of
//! 4-colored graphs, and membership in the class of singular manifolds.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::genus::{regular_genus, CyclicPermutation};
use super::{TopologyError, Verdict};
use crate::colorset::ColorSet;
use crate::graph::ColoredGraph;
use crate::half::HalfInteger;
use crate::moves::{reduce, Certificate};
use crate::residue::{is_bipartite, is_bipartite_on, is_connected, residue_count, residues};

/// A closed connected surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfaceType {
    /// Non-orientable surfaces sort before orientable ones.
    pub orientable: bool,
    /// Handles when orientable, crosscaps otherwise.
    pub genus: u32,
}

impl SurfaceType {
    pub const SPHERE: SurfaceType = SurfaceType { orientable: true, genus: 0 };
    pub const TORUS: SurfaceType = SurfaceType { orientable: true, genus: 1 };
    pub const PROJECTIVE_PLANE: SurfaceType = SurfaceType { orientable: false, genus: 1 };

    pub fn is_sphere(self) -> bool {
        self == SurfaceType::SPHERE
    }

    /// The genus, or half the number of crosscaps for a non-orientable surface.
    pub fn gd_contribution(self) -> HalfInteger {
        if self.orientable {
            HalfInteger::from_int(self.genus as i64)
        } else {
            HalfInteger::from_twice(self.genus as i64)
        }
    }

    pub fn euler_characteristic(self) -> i64 {
        if self.orientable {
            2 - 2 * self.genus as i64
        } else {
            2 - self.genus as i64
        }
    }
}

impl fmt::Display for SurfaceType {
    /// `S2`, `T2`, `#2T2`, `RP2`, `#2RP2`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.orientable, self.genus) {
            (true, 0) => f.write_str("S2"),
            (true, 1) => f.write_str("T2"),
            (true, g) => write!(f, "#{g}T2"),
            (false, 1) => f.write_str("RP2"),
            (false, k) => write!(f, "#{k}RP2"),
        }
    }
}

impl std::str::FromStr for SurfaceType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (count, rest) = match s.strip_prefix('#') {
            Some(tail) => {
                let split = tail.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(tail.len());
                let k: u32 = tail[..split].parse().map_err(|_| format!("bad surface label {s:?}"))?;
                (k, &tail[split..])
            }
            None => (1, s),
        };
        match (rest, count) {
            ("S2", 1) => Ok(SurfaceType::SPHERE),
            ("T2", k) if k >= 1 => Ok(SurfaceType { orientable: true, genus: k }),
            ("RP2", k) if k >= 1 => Ok(SurfaceType { orientable: false, genus: k }),
            _ => Err(format!("bad surface label {s:?}")),
        }
    }
}

impl Serialize for SurfaceType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SurfaceType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Classifies the surface `|K(Γ)|` of a connected 3-colored graph from its
/// Euler characteristic `g_01 + g_02 + g_12 - p` and bipartiteness.
pub fn surface_type(g: &ColoredGraph) -> Result<SurfaceType, TopologyError> {
    if g.d() != 2 {
        return Err(TopologyError::WrongDimension { expected: 2, found: g.d() });
    }
    if !is_connected(g) {
        return Err(TopologyError::Disconnected);
    }
    Ok(surface_type_unchecked(g))
}

pub(crate) fn surface_type_unchecked(g: &ColoredGraph) -> SurfaceType {
    let faces: usize = ColorSet::subsets_of_size(2, 2).map(|b| residue_count(g, b)).sum();
    let chi = faces as i64 - g.p() as i64;
    if is_bipartite(g) {
        debug_assert!(chi <= 2 && chi % 2 == 0, "orientable surface with χ = {chi}");
        SurfaceType { orientable: true, genus: ((2 - chi) / 2) as u32 }
    } else {
        debug_assert!(chi <= 1, "non-orientable surface with χ = {chi}");
        SurfaceType { orientable: false, genus: (2 - chi) as u32 }
    }
}

/// Vertex-link data of a 4-colored graph: the surface of every
/// `ĉ`-residue for each color `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityProfile {
    /// `per_color[c]` lists the surfaces of the `ĉ`-residues.
    pub per_color: Vec<Vec<SurfaceType>>,
    /// Number of singular (non-sphere) residues.
    pub h: usize,
    /// Number of singular colors.
    pub m: usize,
    /// Non-sphere residues, sorted.
    pub boundary: Vec<SurfaceType>,
    /// `Σ g^∂` over the boundary components.
    pub boundary_genus_sum: HalfInteger,
}

impl SingularityProfile {
    /// `g_î` per color.
    pub fn hat_counts(&self) -> Vec<usize> {
        self.per_color.iter().map(Vec::len).collect()
    }

    pub fn is_closed(&self) -> bool {
        self.h == 0
    }

    /// The boundary multiset as `{T2,T2}`.
    pub fn boundary_label(&self) -> String {
        boundary_label(&self.boundary)
    }
}

pub fn boundary_label(boundary: &[SurfaceType]) -> String {
    let parts: Vec<String> = boundary.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// Singularity analysis for `d = 3`.
pub fn singularity_profile(g: &ColoredGraph) -> Result<SingularityProfile, TopologyError> {
    if g.d() != 3 {
        return Err(TopologyError::WrongDimension { expected: 3, found: g.d() });
    }
    let per_color: Vec<Vec<SurfaceType>> = (0..=3)
        .map(|c| {
            residues(g, ColorSet::full(3).without(c))
                .components
                .iter()
                .map(|r| surface_type_unchecked(r.graph.as_ref().expect("3-residue graph")))
                .collect()
        })
        .collect();
    let mut boundary: Vec<SurfaceType> = per_color.iter().flatten().copied().filter(|s| !s.is_sphere()).collect();
    boundary.sort();
    let m = per_color.iter().filter(|surfaces| surfaces.iter().any(|s| !s.is_sphere())).count();
    let boundary_genus_sum = boundary.iter().map(|s| s.gd_contribution()).sum();
    Ok(SingularityProfile { h: boundary.len(), m, boundary, boundary_genus_sum, per_color })
}

/// Whether `|K(Γ)|` is a singular manifold.
///
/// Exact for `d <= 4`. Above that, a "yes" needs every `d`-residue to reduce
/// to the order-two graph; a "no" is certified by a non-sphere 3-residue.
pub fn membership_in_gs(g: &ColoredGraph) -> Verdict {
    let d = g.d();
    if d <= 3 {
        return Verdict::Yes;
    }
    let all_3_residues_spheres = ColorSet::subsets_of_size(d, 3).all(|b| {
        residues(g, b)
            .components
            .iter()
            .all(|r| surface_type_unchecked(r.graph.as_ref().expect("3-residue graph")).is_sphere())
    });
    if !all_3_residues_spheres {
        return Verdict::No;
    }
    if d == 4 {
        return Verdict::Yes;
    }
    let all_links_spheres = (0..=d).all(|c| {
        residues(g, ColorSet::full(d).without(c))
            .components
            .iter()
            .all(|r| reduce(r.graph.as_ref().expect("d-residue graph")).certificate == Certificate::Sphere)
    });
    if all_links_spheres {
        Verdict::Yes
    } else {
        Verdict::Unknown
    }
}

/// Orientability of `|K(Γ)|`, read off bipartiteness.
pub fn orientable(g: &ColoredGraph) -> bool {
    is_bipartite(g)
}

/// Outcome of the integrality test for `ρ_ε` of a non-bipartite graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum Integrality {
    /// Bipartite input: `ρ_ε` is always an integer.
    TriviallyInteger,
    /// The conditions hold at this position of `ε`; `ρ_ε` was checked to be an integer.
    Certified { index: usize },
    /// No position satisfies the conditions; nothing is asserted.
    Uncertified,
}

impl Integrality {
    pub fn holds(self) -> bool {
        !matches!(self, Integrality::Uncertified)
    }
}

/// Searches for a position `i` of `ε` such that every
/// `{ε_{i-1}, ε_i, ε_{i+1}}`-residue is bipartite and every `ε̂_i`-residue is
/// bipartite or has integer regular genus for the induced permutation. When
/// one exists `ρ_ε` must be an integer, and that is asserted.
pub fn integrality_conditions(g: &ColoredGraph, eps: &CyclicPermutation) -> Result<Integrality, TopologyError> {
    if eps.d() != g.d() {
        return Err(TopologyError::WrongDimension { expected: eps.d(), found: g.d() });
    }
    if !is_connected(g) {
        return Err(TopologyError::Disconnected);
    }
    if is_bipartite(g) {
        return Ok(Integrality::TriviallyInteger);
    }
    let d = g.d();
    if d < 2 {
        return Ok(Integrality::Uncertified);
    }
    let seq = eps.colors();
    let n = seq.len();
    for i in 0..n {
        let triple = ColorSet::from_colors([seq[(i + n - 1) % n], seq[i], seq[(i + 1) % n]]);
        if !is_bipartite_on(g, triple) {
            continue;
        }
        let induced = eps.induced_without(i);
        let residues_ok = residues(g, ColorSet::full(d).without(seq[i])).components.iter().all(|r| {
            let h = r.graph.as_ref().expect("d-residue graph");
            is_bipartite(h) || regular_genus(h, &induced).map(HalfInteger::is_integer).unwrap_or(false)
        });
        if residues_ok {
            let rho = regular_genus(g, eps)?;
            if !rho.is_integer() {
                return Err(TopologyError::IntegralityViolation { value: rho });
            }
            return Ok(Integrality::Certified { index: i });
        }
    }
    Ok(Integrality::Uncertified)
}
