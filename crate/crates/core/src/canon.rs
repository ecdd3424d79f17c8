//! Canonical codes for connected colored graphs.
//!
//! In a connected properly edge-colored regular graph the image of a single
//! vertex determines an isomorphism. So a root vertex fixes a unique
//! breadth-first relabeling (neighbors visited in ascending color order),
//! and the lexicographically least relabeled adjacency table over all roots
//! is a complete invariant. Color-free mode also minimizes over the
//! `(d+1)!` color permutations.
//!
//! Byte layout: `d` (1 byte), order (4 bytes, big endian), then for each new
//! vertex label `i` and each color `c` the label of `i`'s `c`-neighbor. Labels
//! are one byte when the order is at most 256, two bytes big endian otherwise.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::graph::{ColoredGraph, GraphError, Vertex};
use crate::perm::all_permutations;

const HEADER: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CanonMode {
    /// Isomorphism preserving every color.
    ColorFixed,
    /// Isomorphism up to a permutation of the colors.
    ColorFree,
}

impl fmt::Display for CanonMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CanonMode::ColorFixed => "color-fixed",
            CanonMode::ColorFree => "color-free",
        })
    }
}

impl FromStr for CanonMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "color-fixed" => Ok(CanonMode::ColorFixed),
            "color-free" => Ok(CanonMode::ColorFree),
            other => Err(format!("unknown canonicalization mode {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CanonError {
    #[error("canonical codes are defined for connected graphs only")]
    Disconnected,
    #[error("malformed canonical code: {0}")]
    Malformed(String),
}

/// Byte string identifying a connected graph up to isomorphism.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        CanonicalCode(bytes)
    }

    pub fn d(&self) -> usize {
        self.0[0] as usize
    }

    pub fn order(&self) -> usize {
        u32::from_be_bytes(self.0[1..HEADER].try_into().unwrap()) as usize
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Result<Self, CanonError> {
        if !s.len().is_multiple_of(2) {
            return Err(CanonError::Malformed("odd hex length".into()));
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16).map_err(|e| CanonError::Malformed(e.to_string())))
            .collect::<Result<Vec<u8>, _>>()
            .map(CanonicalCode)
    }

    /// Rebuilds the relabeled graph the code describes.
    pub fn to_graph(&self) -> Result<ColoredGraph, CanonError> {
        if self.0.len() < HEADER {
            return Err(CanonError::Malformed("truncated header".into()));
        }
        let d = self.d();
        let n = self.order();
        let width = label_width(n);
        let body = &self.0[HEADER..];
        if body.len() != n * (d + 1) * width {
            return Err(CanonError::Malformed("body length does not match header".into()));
        }
        let mut adj = vec![0 as Vertex; n * (d + 1)];
        for i in 0..n {
            for c in 0..=d {
                let k = (i * (d + 1) + c) * width;
                let label = if width == 1 { body[k] as u32 } else { u16::from_be_bytes([body[k], body[k + 1]]) as u32 };
                adj[c * n + i] = label;
            }
        }
        ColoredGraph::from_flat(d, n, adj).map_err(|e: GraphError| CanonError::Malformed(e.to_string()))
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalCode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        CanonicalCode::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

fn label_width(order: usize) -> usize {
    if order <= 256 {
        1
    } else {
        2
    }
}

/// Reusable scratch space for computing codes; one per worker thread.
#[derive(Debug, Default)]
pub struct Canonizer {
    label: Vec<u32>,
    queue: Vec<u32>,
    best: Vec<u8>,
    trial: Vec<u8>,
    color_perms: Vec<Vec<usize>>,
}

impl Canonizer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn canonical_code(&mut self, g: &ColoredGraph, mode: CanonMode) -> Result<CanonicalCode, CanonError> {
        self.best.clear();
        let identity: Vec<usize> = (0..=g.d()).collect();
        match mode {
            CanonMode::ColorFixed => self.minimize_over_roots(g, &identity)?,
            CanonMode::ColorFree => {
                if self.color_perms.first().map(Vec::len) != Some(g.d() + 1) {
                    self.color_perms = all_permutations(g.d() + 1);
                }
                let perms = std::mem::take(&mut self.color_perms);
                let result = perms.iter().try_for_each(|perm| self.minimize_over_roots(g, perm));
                self.color_perms = perms;
                result?;
            }
        }
        Ok(CanonicalCode(self.best.clone()))
    }

    /// Number of color-preserving automorphisms of a connected graph.
    pub fn automorphism_count(&mut self, g: &ColoredGraph) -> Result<usize, CanonError> {
        let identity: Vec<usize> = (0..=g.d()).collect();
        self.best.clear();
        self.minimize_over_roots(g, &identity)?;
        let best = self.best.clone();
        let mut count = 0;
        for root in 0..g.order() {
            self.encode_from_root(g, root, &identity, None)?;
            if self.trial == best {
                count += 1;
            }
        }
        Ok(count)
    }

    fn minimize_over_roots(&mut self, g: &ColoredGraph, colors: &[usize]) -> Result<(), CanonError> {
        for root in 0..g.order() {
            let bound = if self.best.is_empty() { None } else { Some(std::mem::take(&mut self.best)) };
            let improved = self.encode_from_root(g, root, colors, bound.as_deref())?;
            match (improved, bound) {
                (true, _) => std::mem::swap(&mut self.best, &mut self.trial),
                (false, Some(b)) => self.best = b,
                (false, None) => unreachable!("first root always improves"),
            }
        }
        Ok(())
    }

    /// Writes the code rooted at `root` (with color `i` read from
    /// `colors[i]`) into `self.trial`. Returns whether it is strictly smaller
    /// than `bound`, aborting early once it is known to be larger or equal.
    fn encode_from_root(
        &mut self,
        g: &ColoredGraph,
        root: usize,
        colors: &[usize],
        bound: Option<&[u8]>,
    ) -> Result<bool, CanonError> {
        let n = g.order();
        let width = label_width(n);
        self.label.clear();
        self.label.resize(n, u32::MAX);
        self.queue.clear();
        self.trial.clear();
        self.trial.push(g.d() as u8);
        self.trial.extend_from_slice(&(n as u32).to_be_bytes());
        let mut state = match bound {
            None => Ordering::Less,
            Some(b) => self.trial.as_slice().cmp(&b[..HEADER]),
        };
        if state == Ordering::Greater {
            return Ok(false);
        }
        self.label[root] = 0;
        self.queue.push(root as u32);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head] as usize;
            head += 1;
            for &c in colors {
                let w = g.neighbor(c, v);
                if self.label[w] == u32::MAX {
                    self.label[w] = self.queue.len() as u32;
                    self.queue.push(w as u32);
                }
                let l = self.label[w];
                let pos = self.trial.len();
                if width == 1 {
                    self.trial.push(l as u8);
                } else {
                    self.trial.extend_from_slice(&(l as u16).to_be_bytes());
                }
                if state == Ordering::Equal {
                    let b = bound.unwrap();
                    state = self.trial[pos..].cmp(&b[pos..pos + width]);
                    if state == Ordering::Greater {
                        return Ok(false);
                    }
                }
            }
        }
        if self.queue.len() != n {
            return Err(CanonError::Disconnected);
        }
        Ok(state == Ordering::Less)
    }
}

/// Canonical code of a connected graph.
pub fn canonical_code(g: &ColoredGraph, mode: CanonMode) -> Result<CanonicalCode, CanonError> {
    Canonizer::new().canonical_code(g, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{order_two_graph, torus_gem};

    #[test]
    fn order_two_code_is_mode_independent() {
        let g = order_two_graph(3);
        let fixed = canonical_code(&g, CanonMode::ColorFixed).unwrap();
        let free = canonical_code(&g, CanonMode::ColorFree).unwrap();
        assert_eq!(fixed, free);
        assert_eq!(fixed.to_hex(), "03000000020101010100000000");
    }

    #[test]
    fn relabeling_invariance() {
        let g = torus_gem();
        let h = g.relabel(&[3, 1, 4, 0, 5, 2]);
        assert_eq!(
            canonical_code(&g, CanonMode::ColorFixed).unwrap(),
            canonical_code(&h, CanonMode::ColorFixed).unwrap()
        );
    }

    #[test]
    fn decode_round_trip() {
        let g = torus_gem();
        for mode in [CanonMode::ColorFixed, CanonMode::ColorFree] {
            let code = canonical_code(&g, mode).unwrap();
            let back = code.to_graph().unwrap();
            assert_eq!(canonical_code(&back, mode).unwrap(), code);
            assert_eq!(CanonicalCode::from_hex(&code.to_hex()).unwrap(), code);
        }
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = ColoredGraph::new(1, vec![vec![1, 0, 3, 2], vec![1, 0, 3, 2]]).unwrap();
        assert_eq!(canonical_code(&g, CanonMode::ColorFixed), Err(CanonError::Disconnected));
    }

    #[test]
    fn automorphisms() {
        let mut c = Canonizer::new();
        assert_eq!(c.automorphism_count(&order_two_graph(3)).unwrap(), 2);
        // the torus gem is vertex-transitive under color-preserving maps
        assert_eq!(c.automorphism_count(&torus_gem()).unwrap(), 6);
    }
}
