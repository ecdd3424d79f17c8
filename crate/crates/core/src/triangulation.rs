//! Colored graphs from simplicial pseudocomplexes.
//!
//! The graph of a closed `d`-pseudocomplex `K` is the gem of its first
//! barycentric subdivision: one vertex per flag of `K` (a simplex together
//! with an ordering of its vertex positions), so each `d`-simplex contributes
//! `(d+1)!` vertices. A color-`k` edge with `k < d` swaps positions `k` and
//! `k+1`; a color-`d` edge crosses the facet opposite the last position.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::graph::{ColoredGraph, GraphError, Vertex};
use crate::perm::all_permutations;
use crate::residue::residues;
use crate::colorset::{ColorSet, MAX_DIMENSION};

/// `(simplex, facet position)` to its partner facet.
type Gluing = HashMap<(usize, usize), (usize, usize)>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TriangulationError {
    #[error("simplex {simplex} has {found} vertices, expected {expected}")]
    NotPure { simplex: usize, expected: usize, found: usize },
    #[error("simplex {simplex} repeats a vertex")]
    DegenerateSimplex { simplex: usize },
    #[error("facet {face} of simplex {simplex} is not glued to anything")]
    NotClosed { simplex: usize, face: usize },
    #[error("facet {vertices:?} is shared by {count} simplices")]
    Branching { vertices: Vec<u64>, count: usize },
    #[error("invalid pairing {0:?}")]
    BadPairing([usize; 4]),
    #[error("dimension {0} out of range")]
    DimensionOutOfRange(usize),
    #[error("invalid pseudocomplex JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A pure `d`-dimensional simplicial pseudocomplex.
///
/// Facets are glued by vertex-id set unless an explicit pairing
/// `[s, i, t, j]` glues facet `i` of simplex `s` (the facet opposite
/// position `i`) to facet `j` of simplex `t`, identifying vertices by id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pseudocomplex {
    pub d: usize,
    pub simplices: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairings: Vec<[usize; 4]>,
}

impl Pseudocomplex {
    pub fn new(d: usize, simplices: Vec<Vec<u64>>) -> Self {
        Pseudocomplex { d, simplices, pairings: Vec::new() }
    }

    pub fn from_json(s: &str) -> Result<Self, TriangulationError> {
        serde_json::from_str(s).map_err(|e| TriangulationError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("pseudocomplex serialization cannot fail")
    }

    /// Boundary of the standard `(d+1)`-simplex on vertices `0..=d+1`.
    pub fn simplex_boundary(d: usize) -> Self {
        let all: Vec<u64> = (0..=d as u64 + 1).collect();
        let simplices = (0..all.len()).map(|skip| all.iter().copied().filter(|&x| x != skip as u64).collect()).collect();
        Pseudocomplex::new(d, simplices)
    }

    fn check_shape(&self) -> Result<(), TriangulationError> {
        if self.d == 0 || self.d > MAX_DIMENSION {
            return Err(TriangulationError::DimensionOutOfRange(self.d));
        }
        for (i, s) in self.simplices.iter().enumerate() {
            if s.len() != self.d + 1 {
                return Err(TriangulationError::NotPure { simplex: i, expected: self.d + 1, found: s.len() });
            }
            let mut sorted = s.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != s.len() {
                return Err(TriangulationError::DegenerateSimplex { simplex: i });
            }
        }
        Ok(())
    }

    fn facet(&self, s: usize, i: usize) -> Vec<u64> {
        let mut f: Vec<u64> = self.simplices[s].iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).collect();
        f.sort_unstable();
        f
    }

    /// Implicit facets by sorted vertex set, skipping explicitly paired ones.
    fn unpaired_facets(&self, explicit: &Gluing) -> BTreeMap<Vec<u64>, Vec<(usize, usize)>> {
        let mut by_set: BTreeMap<Vec<u64>, Vec<(usize, usize)>> = BTreeMap::new();
        for s in 0..self.simplices.len() {
            for i in 0..=self.d {
                if !explicit.contains_key(&(s, i)) {
                    by_set.entry(self.facet(s, i)).or_default().push((s, i));
                }
            }
        }
        by_set
    }

    fn explicit_gluing(&self) -> Result<Gluing, TriangulationError> {
        let mut glue = HashMap::new();
        for &pair @ [s, i, t, j] in &self.pairings {
            let n = self.simplices.len();
            if s >= n || t >= n || i > self.d || j > self.d || (s, i) == (t, j) || self.facet(s, i) != self.facet(t, j) {
                return Err(TriangulationError::BadPairing(pair));
            }
            if glue.insert((s, i), (t, j)).is_some() || glue.insert((t, j), (s, i)).is_some() {
                return Err(TriangulationError::BadPairing(pair));
            }
        }
        Ok(glue)
    }

    /// The full facet gluing: `(simplex, position)` to `(simplex, position)`.
    fn gluing(&self) -> Result<Gluing, TriangulationError> {
        self.check_shape()?;
        let mut glue = self.explicit_gluing()?;
        for (vertices, faces) in self.unpaired_facets(&glue) {
            match faces[..] {
                [(s, i)] => return Err(TriangulationError::NotClosed { simplex: s, face: i }),
                [a, b] => {
                    glue.insert(a, b);
                    glue.insert(b, a);
                }
                _ => return Err(TriangulationError::Branching { vertices, count: faces.len() }),
            }
        }
        Ok(glue)
    }

    /// Closes the complex by coning each connected boundary component
    /// (boundary facets linked through shared ridges) from a new vertex.
    pub fn cap_boundary(&self) -> Result<Pseudocomplex, TriangulationError> {
        self.check_shape()?;
        let explicit = self.explicit_gluing()?;
        let boundary: Vec<Vec<u64>> = self
            .unpaired_facets(&explicit)
            .into_iter()
            .filter_map(|(set, faces)| match faces.len() {
                1 => Some(Ok(set)),
                2 => None,
                n => Some(Err(TriangulationError::Branching { vertices: set, count: n })),
            })
            .collect::<Result<_, _>>()?;
        let mut parent: Vec<usize> = (0..boundary.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        let mut ridge_owner: HashMap<Vec<u64>, usize> = HashMap::new();
        for (f, facet) in boundary.iter().enumerate() {
            for skip in 0..facet.len() {
                let ridge: Vec<u64> = facet.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &x)| x).collect();
                if let Some(&other) = ridge_owner.get(&ridge) {
                    let (a, b) = (find(&mut parent, f), find(&mut parent, other));
                    parent[a] = b;
                } else {
                    ridge_owner.insert(ridge, f);
                }
            }
        }
        let mut next = self.simplices.iter().flatten().max().map_or(0, |m| m + 1);
        let mut apex: HashMap<usize, u64> = HashMap::new();
        let mut capped = self.clone();
        for (f, facet) in boundary.iter().enumerate() {
            let root = find(&mut parent, f);
            let cone = *apex.entry(root).or_insert_with(|| {
                next += 1;
                next - 1
            });
            let mut s = facet.clone();
            s.push(cone);
            capped.simplices.push(s);
        }
        Ok(capped)
    }
}

/// The gems of the first barycentric subdivision, one per connected
/// component of the complex.
pub fn from_triangulation(k: &Pseudocomplex) -> Result<Vec<ColoredGraph>, TriangulationError> {
    let glue = k.gluing()?;
    let d = k.d;
    let perms = all_permutations(d + 1);
    let rank: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let per = perms.len();
    let order = k.simplices.len() * per;
    let mut adj = vec![0 as Vertex; (d + 1) * order];
    let position = |t: usize, id: u64| k.simplices[t].iter().position(|&x| x == id).expect("glued facets share vertices");
    let mut scratch = vec![0usize; d + 1];
    for s in 0..k.simplices.len() {
        for (pi, perm) in perms.iter().enumerate() {
            let v = s * per + pi;
            for c in 0..d {
                scratch.copy_from_slice(perm);
                scratch.swap(c, c + 1);
                adj[c * order + v] = (s * per + rank[scratch.as_slice()]) as Vertex;
            }
            let (t, j) = glue[&(s, perm[d])];
            for c in 0..d {
                scratch[c] = position(t, k.simplices[s][perm[c]]);
            }
            scratch[d] = j;
            adj[d * order + v] = (t * per + rank[scratch.as_slice()]) as Vertex;
        }
    }
    let g = ColoredGraph::from_flat(d, order, adj)?;
    let parts = residues(&g, ColorSet::full(d));
    Ok(parts.components.into_iter().map(|r| r.graph.expect("full color set has at least two colors")).collect())
}
