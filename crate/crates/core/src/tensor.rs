//! Trace invariants, Wick pairings and G-degree histograms of the
//! resulting Feynman graphs.
//!
//! A trace invariant of rank-`d` tensors is a connected bipartite graph on
//! colors `1..=d`, white vertices standing for `T` and black ones for `T̄`.
//! A pairing `σ ∈ S_p` closes it into a `(d+1)`-colored Feynman graph by
//! adding the color-0 edges `w_r – b_σ(r)`. Each connected Feynman graph
//! contributes at order `N^{-2ω_G/(d-1)!}`; the tensor size `N` stays symbolic.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize, Serializer};

use crate::graph::{ColoredGraph, GraphError, Vertex};
use crate::half::HalfInteger;
use crate::par::Execution;
use crate::perm::{factorial, next_permutation};
use crate::residue::{bipartition, is_connected};
use crate::topology::gurau_degree_unchecked;

/// Largest `p` for which all of `S_p` is enumerated.
pub const MAX_PAIRING_SIZE: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TensorError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid trace invariant: {0}")]
    InvalidInvariant(String),
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("p = {p} exceeds the enumeration budget (p <= {MAX_PAIRING_SIZE})")]
    BudgetExceeded { p: usize },
}

/// A bipartite `d`-colored graph on colors `1..=d` with ordered white and
/// black vertex lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceInvariant {
    /// Colors stored shifted down by one: stored color `k` is tensor index `k + 1`.
    graph: ColoredGraph,
    white: Vec<usize>,
    black: Vec<usize>,
}

impl TraceInvariant {
    /// `matchings[k]` is the involution for tensor index `k + 1`.
    pub fn new(rank: usize, matchings: Vec<Vec<usize>>, white: Vec<usize>, black: Vec<usize>) -> Result<Self, TensorError> {
        if rank < 2 {
            return Err(TensorError::InvalidInvariant(format!("rank {rank} < 2")));
        }
        if matchings.len() != rank {
            return Err(TensorError::InvalidInvariant(format!("expected {rank} matchings, found {}", matchings.len())));
        }
        let graph = ColoredGraph::new(rank - 1, matchings)?;
        let p = graph.p();
        if white.len() != p || black.len() != p {
            return Err(TensorError::InvalidInvariant(format!("need {p} white and {p} black vertices")));
        }
        let mut side = vec![u8::MAX; graph.order()];
        for (list, mark) in [(&white, 0u8), (&black, 1u8)] {
            for &v in list {
                if v >= graph.order() || side[v] != u8::MAX {
                    return Err(TensorError::InvalidInvariant(format!("vertex {v} repeated or out of range")));
                }
                side[v] = mark;
            }
        }
        for c in 0..=graph.d() {
            for v in 0..graph.order() {
                if side[v] == side[graph.neighbor(c, v)] {
                    return Err(TensorError::InvalidInvariant(format!(
                        "edge of color {} joins two vertices of the same class",
                        c + 1
                    )));
                }
            }
        }
        if !is_connected(&graph) {
            return Err(TensorError::InvalidInvariant("invariant graph must be connected".into()));
        }
        Ok(TraceInvariant { graph, white, black })
    }

    /// Uses the bipartition of the graph: the class of vertex 0 is white,
    /// both classes in ascending order.
    pub fn from_graph(rank: usize, matchings: Vec<Vec<usize>>) -> Result<Self, TensorError> {
        let graph = ColoredGraph::new(rank.saturating_sub(1).max(1), matchings.clone())?;
        let parts = bipartition(&graph).ok_or_else(|| TensorError::InvalidInvariant("graph is not bipartite".into()))?;
        TraceInvariant::new(rank, matchings, parts.class(0), parts.class(1))
    }

    /// Tensor rank `d`.
    pub fn rank(&self) -> usize {
        self.graph.d() + 1
    }

    pub fn p(&self) -> usize {
        self.white.len()
    }

    pub fn white(&self) -> &[usize] {
        &self.white
    }

    pub fn black(&self) -> &[usize] {
        &self.black
    }

    /// The vertex joined to `v` by the edge of tensor index `color` (1-based).
    pub fn neighbor(&self, color: usize, v: usize) -> usize {
        self.graph.neighbor(color - 1, v)
    }

    /// The same invariant with white and black vertices listed in a new
    /// order (`white_order[r]` is the old position of the new `w_r`).
    pub fn reorder(&self, white_order: &[usize], black_order: &[usize]) -> Result<Self, TensorError> {
        let white = white_order.iter().map(|&i| self.white[i]).collect();
        let black = black_order.iter().map(|&i| self.black[i]).collect();
        TraceInvariant::new(self.rank(), self.graph.matchings(), white, black)
    }

    /// Parses the core graph format with `"colors_offset": 1` and a
    /// `"white"` list; `"d"` is the tensor rank and there are `d` matchings.
    pub fn from_json(s: &str) -> Result<Self, TensorError> {
        let raw: InvariantJson = serde_json::from_str(s).map_err(|e| TensorError::InvalidInvariant(e.to_string()))?;
        if raw.colors_offset != 1 {
            return Err(TensorError::InvalidInvariant(format!("colors_offset must be 1, got {}", raw.colors_offset)));
        }
        if raw.matchings.first().map(Vec::len) != Some(raw.order) {
            return Err(TensorError::InvalidInvariant("order does not match the matchings".into()));
        }
        let black = match raw.black {
            Some(b) => b,
            None => (0..raw.order).filter(|v| !raw.white.contains(v)).collect(),
        };
        TraceInvariant::new(raw.d, raw.matchings, raw.white, black)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&InvariantJson {
            d: self.rank(),
            order: self.graph.order(),
            matchings: self.graph.matchings(),
            colors_offset: 1,
            white: self.white.clone(),
            black: Some(self.black.clone()),
        })
        .expect("invariant JSON serialization cannot fail")
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct InvariantJson {
    d: usize,
    order: usize,
    matchings: Vec<Vec<usize>>,
    colors_offset: usize,
    white: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    black: Option<Vec<usize>>,
}

/// The quartic invariant `T̄_{i1 i2..} T_{j1 i2..} T̄_{j1 j2..} T_{i1 j2..}`.
///
/// Vertices: `w1 = 0`, `b1 = 1`, `w2 = 2`, `b2 = 3`. Index 1 joins
/// `b1 – w2` and `b2 – w1`; indices `2..=d` join `b1 – w1` and `b2 – w2`.
pub fn quartic_invariant(rank: usize) -> TraceInvariant {
    assert!(rank >= 2);
    let mut matchings = vec![vec![3, 2, 1, 0]];
    matchings.extend(std::iter::repeat_n(vec![1, 0, 3, 2], rank - 1));
    TraceInvariant::new(rank, matchings, vec![0, 2], vec![1, 3]).expect("quartic invariant is valid")
}

/// `T̄ · T`: two vertices joined by all `d` indices.
pub fn single_pair_invariant(rank: usize) -> TraceInvariant {
    TraceInvariant::new(rank, vec![vec![1, 0]; rank], vec![0], vec![1]).expect("valid")
}

/// A permutation `σ` of `0..p`; white vertex `r` is paired with black `σ(r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WickPairing(Vec<usize>);

impl WickPairing {
    pub fn new(sigma: Vec<usize>) -> Result<Self, TensorError> {
        let mut seen = vec![false; sigma.len()];
        for &s in &sigma {
            if s >= sigma.len() || std::mem::replace(&mut seen[s], true) {
                return Err(TensorError::InvalidPairing(format!("{sigma:?} is not a permutation")));
            }
        }
        Ok(WickPairing(sigma))
    }

    pub fn identity(p: usize) -> Self {
        WickPairing((0..p).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Closes the invariant with the color-0 edges `w_r – b_σ(r)`.
pub fn feynman_graph(invariant: &TraceInvariant, sigma: &WickPairing) -> Result<ColoredGraph, TensorError> {
    if sigma.0.len() != invariant.p() {
        return Err(TensorError::InvalidPairing(format!("pairing has {} entries, invariant has p = {}", sigma.0.len(), invariant.p())));
    }
    let g = build_feynman(invariant, &sigma.0);
    debug_assert!(crate::residue::is_bipartite(&g));
    Ok(g)
}

fn build_feynman(invariant: &TraceInvariant, sigma: &[usize]) -> ColoredGraph {
    let n = invariant.graph.order();
    let mut adj = Vec::with_capacity(n * (invariant.rank() + 1));
    adj.resize(n, 0 as Vertex);
    for (r, &s) in sigma.iter().enumerate() {
        let (w, b) = (invariant.white[r], invariant.black[s]);
        adj[w] = b as Vertex;
        adj[b] = w as Vertex;
    }
    adj.extend_from_slice(invariant.graph.flat());
    ColoredGraph::from_flat_unchecked(invariant.rank(), n, adj)
}

/// Feynman-graph counts of one invariant, bucketed by G-degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionHistogram {
    pub p: usize,
    /// Tensor rank.
    pub d: usize,
    pub buckets: BTreeMap<HalfInteger, u64>,
    pub disconnected: u64,
}

impl ExpansionHistogram {
    /// Exponent of `N` for a bucket: `-2ω_G/(d-1)!`.
    pub fn exponent(&self, omega: HalfInteger) -> Ratio<i64> {
        Ratio::new(-omega.twice_value(), factorial(self.d - 1) as i64)
    }

    pub fn total(&self) -> u64 {
        self.buckets.values().sum::<u64>() + self.disconnected
    }

    fn merge(mut self, other: ExpansionHistogram) -> Self {
        for (k, v) in other.buckets {
            *self.buckets.entry(k).or_default() += v;
        }
        self.disconnected += other.disconnected;
        self
    }
}

impl Serialize for ExpansionHistogram {
    /// `{"p":..,"d":..,"buckets":{"<omega>":count},"disconnected":n,"exponents":{"<omega>":"<rational>"}}`
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let buckets: BTreeMap<String, u64> = self.buckets.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        let exponents: BTreeMap<String, String> =
            self.buckets.keys().map(|k| (k.to_string(), self.exponent(*k).to_string())).collect();
        let mut s = serializer.serialize_struct("ExpansionHistogram", 5)?;
        s.serialize_field("p", &self.p)?;
        s.serialize_field("d", &self.d)?;
        s.serialize_field("buckets", &buckets)?;
        s.serialize_field("disconnected", &self.disconnected)?;
        s.serialize_field("exponents", &exponents)?;
        s.end()
    }
}

/// Sums over every pairing in `S_p`, split across workers by `σ(0)`.
pub fn expansion_histogram(invariant: &TraceInvariant, exec: Execution) -> Result<ExpansionHistogram, TensorError> {
    let p = invariant.p();
    if p > MAX_PAIRING_SIZE {
        return Err(TensorError::BudgetExceeded { p });
    }
    let empty = || ExpansionHistogram { p, d: invariant.rank(), buckets: BTreeMap::new(), disconnected: 0 };
    let firsts: Vec<usize> = (0..p).collect();
    let histogram = exec.map_reduce(
        &firsts,
        empty,
        |&first| {
            let mut local = empty();
            let mut rest: Vec<usize> = (0..p).filter(|&x| x != first).collect();
            let mut sigma = vec![0; p];
            loop {
                sigma[0] = first;
                sigma[1..].copy_from_slice(&rest);
                let g = build_feynman(invariant, &sigma);
                if is_connected(&g) {
                    *local.buckets.entry(gurau_degree_unchecked(&g)).or_default() += 1;
                } else {
                    local.disconnected += 1;
                }
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            local
        },
        ExpansionHistogram::merge,
    );
    debug_assert_eq!(histogram.total(), factorial(p));
    Ok(histogram)
}
