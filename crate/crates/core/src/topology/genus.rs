//! Regular genera, the Gurau degree and the Euler characteristic.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::TopologyError;
use crate::colorset::ColorSet;
use crate::graph::ColoredGraph;
use crate::half::HalfInteger;
use crate::perm::{factorial, next_permutation};
use crate::residue::{is_connected, residue_count, residues};

/// A cyclic ordering of `{0, .., d}` up to rotation and reversal.
///
/// Stored normalized: the first entry is `0` and the second is smaller than
/// the last.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicPermutation(Vec<usize>);

impl CyclicPermutation {
    /// Normalizes any cyclic sequence of the colors `0..seq.len()`.
    pub fn new(seq: &[usize]) -> Self {
        let n = seq.len();
        assert!(n >= 2, "a cyclic permutation needs at least two colors");
        let start = seq.iter().position(|&c| c == 0).expect("sequence must contain color 0");
        let mut rotated: Vec<usize> = (0..n).map(|k| seq[(start + k) % n]).collect();
        if rotated[1] > rotated[n - 1] {
            rotated[1..].reverse();
        }
        debug_assert!({
            let mut sorted = rotated.clone();
            sorted.sort_unstable();
            sorted == (0..n).collect::<Vec<_>>()
        });
        CyclicPermutation(rotated)
    }

    /// All `d!/2` classes for `d >= 2` (one class when `d = 1`), in
    /// lexicographic order of their normalized form.
    pub fn all(d: usize) -> Vec<CyclicPermutation> {
        if d == 1 {
            return vec![CyclicPermutation(vec![0, 1])];
        }
        let mut tail: Vec<usize> = (1..=d).collect();
        let mut out = Vec::with_capacity(factorial(d) as usize / 2);
        loop {
            if tail[0] < tail[d - 1] {
                let mut seq = Vec::with_capacity(d + 1);
                seq.push(0);
                seq.extend_from_slice(&tail);
                out.push(CyclicPermutation(seq));
            }
            if !next_permutation(&mut tail) {
                break;
            }
        }
        out
    }

    pub fn colors(&self) -> &[usize] {
        &self.0
    }

    pub fn d(&self) -> usize {
        self.0.len() - 1
    }

    /// The consecutive color pairs `{ε_j, ε_{j+1}}`, `j ∈ Z_{d+1}`.
    pub fn consecutive_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.0.len();
        (0..n).map(move |j| (self.0[j], self.0[(j + 1) % n]))
    }

    /// The cyclic order induced on the remaining colors after dropping the
    /// entry at `index`, with colors renumbered to `0..d` by rank.
    pub fn induced_without(&self, index: usize) -> CyclicPermutation {
        let dropped = self.0[index];
        let n = self.0.len();
        let seq: Vec<usize> = (1..n)
            .map(|k| self.0[(index + k) % n])
            .map(|c| if c > dropped { c - 1 } else { c })
            .collect();
        CyclicPermutation::new(&seq)
    }
}

impl fmt::Display for CyclicPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for CyclicPermutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `g_{ij}` for every pair of colors, as a symmetric table.
pub fn pair_residue_counts(g: &ColoredGraph) -> Vec<Vec<usize>> {
    let n = g.num_colors();
    let mut table = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let count = residue_count(g, ColorSet::from_colors([i, j]));
            table[i][j] = count;
            table[j][i] = count;
        }
    }
    table
}

fn require_connected(g: &ColoredGraph) -> Result<(), TopologyError> {
    if is_connected(g) {
        Ok(())
    } else {
        Err(TopologyError::Disconnected)
    }
}

fn genus_from_pairs(g: &ColoredGraph, pairs: &[Vec<usize>], eps: &CyclicPermutation) -> HalfInteger {
    let sum: usize = eps.consecutive_pairs().map(|(a, b)| pairs[a][b]).sum();
    let twice = 2 + (g.d() as i64 - 1) * g.p() as i64 - sum as i64;
    HalfInteger::from_twice(twice)
}

/// `ρ_ε`, from `2 - 2ρ_ε = Σ_j g_{ε_j ε_{j+1}} + (1 - d) p`.
pub fn regular_genus(g: &ColoredGraph, eps: &CyclicPermutation) -> Result<HalfInteger, TopologyError> {
    if eps.d() != g.d() {
        return Err(TopologyError::WrongDimension { expected: eps.d(), found: g.d() });
    }
    require_connected(g)?;
    Ok(genus_from_pairs(g, &pair_residue_counts(g), eps))
}

/// `ρ_ε` for every cyclic permutation class.
pub fn all_regular_genera(g: &ColoredGraph) -> Result<BTreeMap<CyclicPermutation, HalfInteger>, TopologyError> {
    require_connected(g)?;
    let pairs = pair_residue_counts(g);
    Ok(CyclicPermutation::all(g.d())
        .into_iter()
        .map(|eps| {
            let rho = genus_from_pairs(g, &pairs, &eps);
            (eps, rho)
        })
        .collect())
}

/// `ρ(Γ)`, the least regular genus over all classes.
pub fn regular_genus_min(g: &ColoredGraph) -> Result<HalfInteger, TopologyError> {
    Ok(all_regular_genera(g)?.into_values().min().expect("at least one class"))
}

/// The Gurau degree: the sum of `ρ_ε` over all classes.
///
/// For `d >= 3` the result is a non-negative integer; anything else is
/// reported as [`TopologyError::IntegralityViolation`].
pub fn gurau_degree(g: &ColoredGraph) -> Result<HalfInteger, TopologyError> {
    require_connected(g)?;
    let omega = gurau_degree_unchecked(g);
    if g.d() >= 3 && (!omega.is_integer() || omega < HalfInteger::ZERO) {
        return Err(TopologyError::IntegralityViolation { value: omega });
    }
    Ok(omega)
}

/// Sum of `ρ_ε` without connectivity or integrality checks.
pub(crate) fn gurau_degree_unchecked(g: &ColoredGraph) -> HalfInteger {
    let pairs = pair_residue_counts(g);
    CyclicPermutation::all(g.d()).iter().map(|eps| genus_from_pairs(g, &pairs, eps)).sum()
}

/// The Gurau degree computed by recursing into the `ĉ`-residues:
///
/// `ω_G(Γ) = (d-1)!/2 · (p + d - Σ_i g_î) + Σ_i ω_G(Γ_î)`.
///
/// Independent of [`gurau_degree`] except at the `d = 2` base case.
pub fn gurau_degree_recursive(g: &ColoredGraph) -> Result<HalfInteger, TopologyError> {
    require_connected(g)?;
    Ok(recursive_unchecked(g))
}

fn recursive_unchecked(g: &ColoredGraph) -> HalfInteger {
    let d = g.d();
    match d {
        1 => HalfInteger::ZERO,
        2 => {
            let eps = CyclicPermutation(vec![0, 1, 2]);
            genus_from_pairs(g, &pair_residue_counts(g), &eps)
        }
        _ => {
            let mut residue_total = 0i64;
            let mut inner = HalfInteger::ZERO;
            for c in 0..=d {
                let decomposition = residues(g, ColorSet::full(d).without(c));
                residue_total += decomposition.count() as i64;
                for comp in &decomposition.components {
                    inner += recursive_unchecked(comp.graph.as_ref().expect("d-residues have d colors"));
                }
            }
            let leading = factorial(d - 1) as i64 * (g.p() as i64 + d as i64 - residue_total);
            HalfInteger::from_twice(leading) + inner
        }
    }
}

/// `g_î` for every color `i`.
pub fn hat_residue_counts(g: &ColoredGraph) -> Vec<usize> {
    (0..=g.d()).map(|c| residue_count(g, ColorSet::full(g.d()).without(c))).collect()
}

/// Euler characteristic of `|K(Γ)|`, counting simplices through the
/// residue correspondence (`h`-residues ↔ `(d-h)`-simplices, `g_∅ = 2p`).
pub fn euler_characteristic(g: &ColoredGraph) -> i64 {
    let d = g.d();
    (0..=d)
        .map(|h| {
            let simplices: usize = ColorSet::subsets_of_size(d, h).map(|b| residue_count(g, b)).sum();
            let sign = if (d - h).is_multiple_of(2) { 1 } else { -1 };
            sign * simplices as i64
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{order_two_graph, torus_gem};

    #[test]
    fn class_counts() {
        assert_eq!(CyclicPermutation::all(2).len(), 1);
        assert_eq!(CyclicPermutation::all(3).len(), 3);
        assert_eq!(CyclicPermutation::all(4).len(), 12);
        assert_eq!(CyclicPermutation::all(5).len(), 60);
        let all = CyclicPermutation::all(4);
        for eps in &all {
            let reversed: Vec<usize> = eps.colors().iter().rev().copied().collect();
            assert_eq!(&CyclicPermutation::new(&reversed), eps);
            let mut rotated = eps.colors().to_vec();
            rotated.rotate_left(2);
            assert_eq!(&CyclicPermutation::new(&rotated), eps);
        }
    }

    #[test]
    fn induced_permutation() {
        let eps = CyclicPermutation::new(&[0, 2, 1, 3]);
        // dropping color 2 leaves the cyclic order (0,1,3) → renumbered (0,1,2)
        assert_eq!(eps.induced_without(1).colors(), &[0, 1, 2]);
    }

    #[test]
    fn order_two_fixture() {
        let g = order_two_graph(3);
        let genera = all_regular_genera(&g).unwrap();
        assert_eq!(genera.len(), 3);
        assert!(genera.values().all(|&r| r == HalfInteger::ZERO));
        assert_eq!(gurau_degree(&g).unwrap(), HalfInteger::ZERO);
        assert_eq!(gurau_degree_recursive(&g).unwrap(), HalfInteger::ZERO);
        assert_eq!(euler_characteristic(&g), 0);
    }

    #[test]
    fn torus_fixture() {
        let g = torus_gem();
        assert_eq!(regular_genus_min(&g).unwrap(), HalfInteger::from_int(1));
        assert_eq!(gurau_degree(&g).unwrap(), HalfInteger::from_int(1));
        assert_eq!(gurau_degree_recursive(&g).unwrap(), HalfInteger::from_int(1));
        assert_eq!(euler_characteristic(&g), 0);
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = ColoredGraph::new(2, vec![vec![1, 0, 3, 2]; 3]).unwrap();
        assert_eq!(gurau_degree(&g), Err(TopologyError::Disconnected));
        assert_eq!(euler_characteristic(&g), 4);
    }
}
