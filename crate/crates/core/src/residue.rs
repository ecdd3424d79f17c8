//! Residues (connected components of color-restricted subgraphs),
//! connectivity and bipartiteness.

use crate::colorset::ColorSet;
use crate::graph::{ColoredGraph, Vertex};

/// Component label of every vertex in `Γ_B`, numbered by smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueLabels {
    pub labels: Vec<u32>,
    pub count: usize,
}

/// Labels each vertex by its `B`-residue.
pub fn residue_labels(g: &ColoredGraph, colors: ColorSet) -> ResidueLabels {
    let n = g.order();
    let mut labels = vec![u32::MAX; n];
    let mut stack = Vec::with_capacity(n);
    let palette: Vec<usize> = colors.iter().filter(|&c| c <= g.d()).collect();
    let mut count = 0u32;
    for start in 0..n {
        if labels[start] != u32::MAX {
            continue;
        }
        labels[start] = count;
        stack.push(start);
        while let Some(v) = stack.pop() {
            for &c in &palette {
                let w = g.neighbor(c, v);
                if labels[w] == u32::MAX {
                    labels[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    ResidueLabels { labels, count: count as usize }
}

/// `g_B`: the number of `B`-residues. `g_∅` is the order.
pub fn residue_count(g: &ColoredGraph, colors: ColorSet) -> usize {
    residue_labels(g, colors).count
}

/// One connected component of `Γ_B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residue {
    /// Parent vertex ids, ascending. Local vertex `i` of `graph` is `vertices[i]`.
    pub vertices: Vec<usize>,
    /// The residue as a `|B|`-colored graph with colors renumbered in
    /// ascending order of `B`. `None` when `|B| < 2` (a lone vertex or edge).
    pub graph: Option<ColoredGraph>,
}

impl Residue {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }
}

/// All `B`-residues of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueDecomposition {
    pub colors: ColorSet,
    pub components: Vec<Residue>,
    /// Component index of each parent vertex.
    pub component_of: Vec<usize>,
}

impl ResidueDecomposition {
    /// `g_B`.
    pub fn count(&self) -> usize {
        self.components.len()
    }
}

/// Decomposes `Γ_B` into its connected components.
pub fn residues(g: &ColoredGraph, colors: ColorSet) -> ResidueDecomposition {
    let colors = ColorSet::from_bits(colors.bits() & g.all_colors().bits());
    let ResidueLabels { labels, count } = residue_labels(g, colors);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (v, &l) in labels.iter().enumerate() {
        members[l as usize].push(v);
    }
    let palette = colors.to_vec();
    let mut local = vec![0usize; g.order()];
    let components = members
        .into_iter()
        .map(|vertices| {
            for (i, &v) in vertices.iter().enumerate() {
                local[v] = i;
            }
            let graph = (palette.len() >= 2).then(|| {
                let n = vertices.len();
                let mut adj = Vec::with_capacity(n * palette.len());
                for &c in &palette {
                    adj.extend(vertices.iter().map(|&v| local[g.neighbor(c, v)] as Vertex));
                }
                ColoredGraph::from_flat_unchecked(palette.len() - 1, n, adj)
            });
            Residue { vertices, graph }
        })
        .collect();
    ResidueDecomposition {
        colors,
        components,
        component_of: labels.into_iter().map(|l| l as usize).collect(),
    }
}

/// Connectedness over all colors.
pub fn is_connected(g: &ColoredGraph) -> bool {
    residue_count(g, g.all_colors()) == 1
}

/// A two-class vertex partition with every edge crossing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    /// `side[v]` is 0 or 1; the smallest vertex of each component is on side 0.
    pub side: Vec<u8>,
}

impl Bipartition {
    pub fn class(&self, which: u8) -> Vec<usize> {
        self.side.iter().enumerate().filter(|(_, &s)| s == which).map(|(v, _)| v).collect()
    }
}

/// Two-colors the subgraph `Γ_B`, if possible.
pub fn bipartition_on(g: &ColoredGraph, colors: ColorSet) -> Option<Bipartition> {
    let n = g.order();
    let palette: Vec<usize> = colors.iter().filter(|&c| c <= g.d()).collect();
    let mut side = vec![u8::MAX; n];
    let mut stack = Vec::with_capacity(n);
    for start in 0..n {
        if side[start] != u8::MAX {
            continue;
        }
        side[start] = 0;
        stack.push(start);
        while let Some(v) = stack.pop() {
            for &c in &palette {
                let w = g.neighbor(c, v);
                if side[w] == u8::MAX {
                    side[w] = side[v] ^ 1;
                    stack.push(w);
                } else if side[w] == side[v] {
                    return None;
                }
            }
        }
    }
    Some(Bipartition { side })
}

pub fn bipartition(g: &ColoredGraph) -> Option<Bipartition> {
    bipartition_on(g, g.all_colors())
}

pub fn is_bipartite(g: &ColoredGraph) -> bool {
    bipartition(g).is_some()
}

/// Whether every `B`-residue is bipartite.
pub fn is_bipartite_on(g: &ColoredGraph, colors: ColorSet) -> bool {
    bipartition_on(g, colors).is_some()
}
