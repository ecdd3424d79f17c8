//! The colored-graph data model.
//!
//! A `(d+1)`-colored graph on `2p` vertices is stored as `d+1` fixed-point-free
//! involutions of `{0, .., 2p-1}`: `matching(c)[v]` is the vertex joined to `v`
//! by the edge of color `c`. Parallel edges of distinct colors are allowed.

use std::fmt;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::colorset::{ColorSet, MAX_DIMENSION};

/// Vertex index. Dense in `0..order`.
pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("dimension {0} out of range (1..={MAX_DIMENSION})")]
    DimensionOutOfRange(usize),
    #[error("expected {expected} matchings for d = {d}, found {found}")]
    BadColorCount { d: usize, expected: usize, found: usize },
    #[error("order {0} is not a positive even number")]
    OddOrder(usize),
    #[error("matching {color} has length {found}, expected {expected}")]
    BadMatchingLength { color: usize, expected: usize, found: usize },
    #[error("matching {color} sends vertex {vertex} to {target}, outside 0..{order}")]
    VertexOutOfRange { color: usize, vertex: usize, target: usize, order: usize },
    #[error("matching {color} maps vertex {vertex} to itself (loop edge)")]
    LoopEdge { color: usize, vertex: usize },
    #[error("matching {color} is not an involution at vertex {vertex}")]
    NotInvolution { color: usize, vertex: usize },
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

/// A regular `(d+1)`-valent multigraph with a proper edge coloring by `{0, .., d}`.
///
/// Values are immutable once built; every constructor validates the
/// involution and no-loop invariants.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    d: usize,
    order: usize,
    /// `adj[c * order + v]`
    adj: Vec<Vertex>,
}

impl ColoredGraph {
    /// Builds and validates a graph from `d+1` involution arrays.
    pub fn new(d: usize, matchings: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        if d == 0 || d > MAX_DIMENSION {
            return Err(GraphError::DimensionOutOfRange(d));
        }
        if matchings.len() != d + 1 {
            return Err(GraphError::BadColorCount { d, expected: d + 1, found: matchings.len() });
        }
        let order = matchings[0].len();
        if order == 0 || !order.is_multiple_of(2) {
            return Err(GraphError::OddOrder(order));
        }
        let mut adj = Vec::with_capacity(order * (d + 1));
        for (color, m) in matchings.iter().enumerate() {
            if m.len() != order {
                return Err(GraphError::BadMatchingLength { color, expected: order, found: m.len() });
            }
            for (vertex, &target) in m.iter().enumerate() {
                if target >= order {
                    return Err(GraphError::VertexOutOfRange { color, vertex, target, order });
                }
                adj.push(target as Vertex);
            }
        }
        let g = ColoredGraph { d, order, adj };
        g.validate()?;
        Ok(g)
    }

    /// Builds from a flat color-major table without validation in release
    /// builds. Internal constructors use this on data they produced.
    pub(crate) fn from_flat_unchecked(d: usize, order: usize, adj: Vec<Vertex>) -> Self {
        let g = ColoredGraph { d, order, adj };
        debug_assert_eq!(g.adj.len(), order * (d + 1));
        debug_assert!(g.validate().is_ok(), "invariant violated: {:?}", g.validate());
        g
    }

    pub(crate) fn from_flat(d: usize, order: usize, adj: Vec<Vertex>) -> Result<Self, GraphError> {
        if d == 0 || d > MAX_DIMENSION {
            return Err(GraphError::DimensionOutOfRange(d));
        }
        if order == 0 || !order.is_multiple_of(2) {
            return Err(GraphError::OddOrder(order));
        }
        if adj.len() != order * (d + 1) {
            return Err(GraphError::BadMatchingLength { color: 0, expected: order * (d + 1), found: adj.len() });
        }
        let g = ColoredGraph { d, order, adj };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<(), GraphError> {
        for c in 0..=self.d {
            let m = self.matching(c);
            for (v, &w) in m.iter().enumerate() {
                let w = w as usize;
                if w >= self.order {
                    return Err(GraphError::VertexOutOfRange { color: c, vertex: v, target: w, order: self.order });
                }
                if w == v {
                    return Err(GraphError::LoopEdge { color: c, vertex: v });
                }
                if m[w] as usize != v {
                    return Err(GraphError::NotInvolution { color: c, vertex: v });
                }
            }
        }
        Ok(())
    }

    /// Dimension `d`; the graph has `d+1` colors.
    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// Half the order.
    #[inline]
    pub fn p(&self) -> usize {
        self.order / 2
    }

    #[inline]
    pub fn num_colors(&self) -> usize {
        self.d + 1
    }

    #[inline]
    pub fn all_colors(&self) -> ColorSet {
        ColorSet::full(self.d)
    }

    /// The vertex joined to `v` by the edge of color `c`.
    #[inline]
    pub fn neighbor(&self, c: usize, v: usize) -> usize {
        self.adj[c * self.order + v] as usize
    }

    #[inline]
    pub fn matching(&self, c: usize) -> &[Vertex] {
        &self.adj[c * self.order..(c + 1) * self.order]
    }

    pub(crate) fn flat(&self) -> &[Vertex] {
        &self.adj
    }

    pub fn matchings(&self) -> Vec<Vec<usize>> {
        (0..=self.d).map(|c| self.matching(c).iter().map(|&w| w as usize).collect()).collect()
    }

    /// Colors of the edges joining `u` and `v`.
    pub fn colors_between(&self, u: usize, v: usize) -> ColorSet {
        (0..=self.d).filter(|&c| self.neighbor(c, u) == v).collect()
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> ColoredGraph {
        assert_eq!(perm.len(), self.order);
        let mut adj = vec![0; self.adj.len()];
        for c in 0..=self.d {
            for v in 0..self.order {
                adj[c * self.order + perm[v]] = perm[self.neighbor(c, v)] as Vertex;
            }
        }
        ColoredGraph::from_flat_unchecked(self.d, self.order, adj)
    }

    /// The graph whose color `c` is this graph's color `perm[c]`.
    pub fn permute_colors(&self, perm: &[usize]) -> ColoredGraph {
        assert_eq!(perm.len(), self.d + 1);
        let mut adj = Vec::with_capacity(self.adj.len());
        for &src in perm {
            adj.extend_from_slice(self.matching(src));
        }
        ColoredGraph::from_flat_unchecked(self.d, self.order, adj)
    }

    /// The `|colors|`-colored graph on the same vertices keeping only the
    /// listed colors, renumbered `0..colors.len()` in the given order.
    /// Requires at least two colors.
    pub fn restrict_colors(&self, colors: &[usize]) -> ColoredGraph {
        assert!(colors.len() >= 2, "a colored graph needs at least two colors");
        let mut adj = Vec::with_capacity(colors.len() * self.order);
        for &c in colors {
            adj.extend_from_slice(self.matching(c));
        }
        ColoredGraph::from_flat_unchecked(colors.len() - 1, self.order, adj)
    }

    /// Parses the JSON object form.
    pub fn from_json(s: &str) -> Result<Self, GraphError> {
        let raw: GraphJson = serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))?;
        raw.into_graph()
    }

    /// Compact JSON in the fixed field order `d`, `order`, `matchings`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph JSON serialization cannot fail")
    }
}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ColoredGraph")
            .field("d", &self.d)
            .field("order", &self.order)
            .field("matchings", &self.matchings())
            .finish()
    }
}

impl fmt::Display for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

/// Wire form of a graph: `{"d": .., "order": .., "matchings": [[..], ..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub d: usize,
    pub order: usize,
    pub matchings: Vec<Vec<usize>>,
}

impl GraphJson {
    pub fn into_graph(self) -> Result<ColoredGraph, GraphError> {
        let g = ColoredGraph::new(self.d, self.matchings)?;
        if g.order() != self.order {
            return Err(GraphError::BadMatchingLength { color: 0, expected: self.order, found: g.order() });
        }
        Ok(g)
    }
}

impl From<&ColoredGraph> for GraphJson {
    fn from(g: &ColoredGraph) -> Self {
        GraphJson { d: g.d(), order: g.order(), matchings: g.matchings() }
    }
}

impl Serialize for ColoredGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ColoredGraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        GraphJson::deserialize(deserializer)?.into_graph().map_err(serde::de::Error::custom)
    }
}

/// Reads a file body holding either one graph object or a stream of them
/// (one per line).
pub fn read_graphs(body: &str) -> Result<Vec<ColoredGraph>, GraphError> {
    serde_json::Deserializer::from_str(body)
        .into_iter::<GraphJson>()
        .map(|raw| raw.map_err(|e| GraphError::Json(e.to_string()))?.into_graph())
        .collect()
}

/// Writes graphs as JSON lines.
pub fn write_graphs<W: Write>(mut out: W, graphs: &[ColoredGraph]) -> io::Result<()> {
    for g in graphs {
        writeln!(out, "{}", g.to_json())?;
    }
    Ok(())
}

/// The order-two graph: two vertices joined by `d+1` parallel edges.
/// Represents the `d`-sphere.
pub fn order_two_graph(d: usize) -> ColoredGraph {
    assert!((1..=MAX_DIMENSION).contains(&d));
    ColoredGraph::from_flat_unchecked(d, 2, [1, 0].repeat(d + 1))
}

/// A 6-vertex 3-colored graph representing the torus.
pub fn torus_gem() -> ColoredGraph {
    ColoredGraph::new(
        2,
        vec![
            vec![1, 0, 3, 2, 5, 4],
            vec![5, 2, 1, 4, 3, 0],
            vec![3, 4, 5, 0, 1, 2],
        ],
    )
    .expect("torus gem is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two_graph_is_valid() {
        let g = ColoredGraph::new(3, vec![vec![1, 0]; 4]).unwrap();
        assert_eq!(g, order_two_graph(3));
        assert_eq!(g.p(), 1);
    }

    #[test]
    fn rejects_loops() {
        let err = ColoredGraph::new(3, vec![vec![0, 1], vec![1, 0], vec![1, 0], vec![1, 0]]).unwrap_err();
        assert_eq!(err, GraphError::LoopEdge { color: 0, vertex: 0 });
    }

    #[test]
    fn rejects_non_involution() {
        let err = ColoredGraph::new(1, vec![vec![1, 2, 3, 0], vec![1, 0, 3, 2]]).unwrap_err();
        assert!(matches!(err, GraphError::NotInvolution { color: 0, .. }));
    }

    #[test]
    fn rejects_odd_order_and_bad_color_count() {
        assert_eq!(ColoredGraph::new(1, vec![vec![1, 0, 0], vec![1, 0, 0]]).unwrap_err(), GraphError::OddOrder(3));
        assert!(matches!(
            ColoredGraph::new(3, vec![vec![1, 0]; 3]).unwrap_err(),
            GraphError::BadColorCount { expected: 4, found: 3, .. }
        ));
        assert_eq!(ColoredGraph::new(0, vec![vec![1, 0]]).unwrap_err(), GraphError::DimensionOutOfRange(0));
    }

    #[test]
    fn torus_gem_matches_cycle_notation() {
        // c0:(01)(23)(45), c1:(12)(34)(50), c2:(03)(14)(25)
        let g = torus_gem();
        assert_eq!(g.neighbor(1, 5), 0);
        assert_eq!(g.neighbor(2, 1), 4);
        assert_eq!(g.colors_between(0, 1), ColorSet::single(0));
    }

    #[test]
    fn json_is_bit_exact() {
        let g = order_two_graph(2);
        assert_eq!(g.to_json(), r#"{"d":2,"order":2,"matchings":[[1,0],[1,0],[1,0]]}"#);
        assert_eq!(ColoredGraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn reads_json_lines() {
        let body = format!("{}\n{}\n", order_two_graph(3).to_json(), torus_gem().to_json());
        let gs = read_graphs(&body).unwrap();
        assert_eq!(gs, vec![order_two_graph(3), torus_gem()]);
        assert!(read_graphs(r#"{"d":3,"order":2,"matchings":[[0,1],[1,0],[1,0],[1,0]]}"#).is_err());
    }

    #[test]
    fn relabel_and_permute() {
        let g = torus_gem();
        let h = g.relabel(&[5, 4, 3, 2, 1, 0]);
        assert_eq!(h.neighbor(0, 5), 4);
        let k = g.permute_colors(&[2, 0, 1]);
        assert_eq!(k.matching(0), g.matching(2));
    }
}
