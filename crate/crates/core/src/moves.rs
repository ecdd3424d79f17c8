//! Dipole moves: detection, elimination, insertion, properness,
//! contractedness, and greedy reduction.
//!
//! An `r`-dipole is a pair of vertices joined by exactly `r` edges (colors
//! `R`) lying in different components of `Γ_{Δ∖R}`. Eliminating it deletes
//! both vertices and welds the hanging edges color by color; the G-degree
//! drops by exactly `(d-1)!/2 · (r-1)(d-r)`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::canon::{CanonMode, Canonizer};
use crate::colorset::ColorSet;
use crate::graph::{ColoredGraph, Vertex};
use crate::half::HalfInteger;
use crate::perm::factorial;
use crate::residue::{is_bipartite, residue_labels, residues, ResidueDecomposition};
use crate::topology::{euler_characteristic, membership_in_gs, surface_type_unchecked, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("invalid dipole ({u}, {v}) with colors {colors}: {reason}")]
    InvalidDipole { u: usize, v: usize, colors: ColorSet, reason: &'static str },
    #[error("bad attachment: {0}")]
    BadAttachment(String),
}

/// Whether eliminating a dipole preserves the represented polyhedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Properness {
    Proper,
    Improper,
    Unknown,
}

impl fmt::Display for Properness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Properness::Proper => "proper",
            Properness::Improper => "improper",
            Properness::Unknown => "unknown",
        })
    }
}

/// A dipole `(u, v)` on colors `colors`, with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dipole {
    pub u: usize,
    pub v: usize,
    pub colors: ColorSet,
    pub properness: Properness,
}

impl Dipole {
    /// A dipole site whose properness has not been evaluated.
    pub fn new(u: usize, v: usize, colors: ColorSet) -> Self {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        Dipole { u, v, colors, properness: Properness::Unknown }
    }

    pub fn r(&self) -> usize {
        self.colors.len()
    }
}

impl Serialize for Dipole {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Dipole", 5)?;
        s.serialize_field("u", &self.u)?;
        s.serialize_field("v", &self.v)?;
        s.serialize_field("colors", &self.colors.to_vec())?;
        s.serialize_field("r", &self.r())?;
        s.serialize_field("proper", &self.properness)?;
        s.end()
    }
}

/// `(d-1)!/2 · (r-1)(d-r)`: the G-degree lost by eliminating an `r`-dipole.
pub fn gdegree_drop(d: usize, r: usize) -> HalfInteger {
    assert!((1..=d).contains(&r));
    HalfInteger::from_twice(factorial(d - 1) as i64 * ((r - 1) * (d - r)) as i64)
}

/// Component-label and decomposition cache keyed by color set.
struct ResidueCache<'g> {
    g: &'g ColoredGraph,
    labels: HashMap<ColorSet, Vec<u32>>,
    decompositions: HashMap<ColorSet, ResidueDecomposition>,
}

impl<'g> ResidueCache<'g> {
    fn new(g: &'g ColoredGraph) -> Self {
        ResidueCache { g, labels: HashMap::new(), decompositions: HashMap::new() }
    }

    fn separated(&mut self, u: usize, v: usize, colors: ColorSet) -> bool {
        let g = self.g;
        let labels = self.labels.entry(colors).or_insert_with(|| residue_labels(g, colors).labels);
        labels[u] != labels[v]
    }

    fn decomposition(&mut self, colors: ColorSet) -> &ResidueDecomposition {
        let g = self.g;
        self.decompositions.entry(colors).or_insert_with(|| residues(g, colors))
    }
}

fn check_site(g: &ColoredGraph, dip: &Dipole) -> Result<(), MoveError> {
    let invalid = |reason| MoveError::InvalidDipole { u: dip.u, v: dip.v, colors: dip.colors, reason };
    if dip.u >= g.order() || dip.v >= g.order() || dip.u == dip.v {
        return Err(invalid("vertices out of range"));
    }
    if dip.colors.is_empty() || dip.r() > g.d() || !dip.colors.is_subset_of(g.all_colors()) {
        return Err(invalid("need 1 <= r <= d colors"));
    }
    if g.colors_between(dip.u, dip.v) != dip.colors {
        return Err(invalid("colors do not match the edges between the vertices"));
    }
    let labels = residue_labels(g, dip.colors.complement(g.d())).labels;
    if labels[dip.u] == labels[dip.v] {
        return Err(invalid("vertices share a complementary residue"));
    }
    Ok(())
}

/// Sphere recognition for a residue on `k` colors (dimension `k - 1`).
///
/// Exact up to dimension 2; above that "yes" is certified by reduction and
/// "no" by bipartiteness, Euler characteristic or a non-sphere 3-residue.
pub fn residue_is_sphere(residue: Option<&ColoredGraph>) -> Verdict {
    match residue {
        // a lone edge or vertex pair: S^0
        None => Verdict::Yes,
        Some(h) if h.d() == 1 => Verdict::Yes,
        Some(h) if h.d() == 2 => {
            if surface_type_unchecked(h).is_sphere() {
                Verdict::Yes
            } else {
                Verdict::No
            }
        }
        Some(h) => sphere_status(h),
    }
}

fn sphere_status(h: &ColoredGraph) -> Verdict {
    let d = h.d();
    let sphere_chi = if d.is_multiple_of(2) { 2 } else { 0 };
    if !is_bipartite(h) || euler_characteristic(h) != sphere_chi {
        return Verdict::No;
    }
    let links_ok = ColorSet::subsets_of_size(d, 3).all(|b| {
        residues(h, b)
            .components
            .iter()
            .all(|r| surface_type_unchecked(r.graph.as_ref().expect("3-residue")).is_sphere())
    });
    if !links_ok {
        return Verdict::No;
    }
    if reduce(h).certificate == Certificate::Sphere {
        Verdict::Yes
    } else {
        Verdict::Unknown
    }
}

fn properness_with(g: &ColoredGraph, dip: &Dipole, cache: &mut ResidueCache<'_>, in_gs: &mut Option<Verdict>) -> Properness {
    let d = g.d();
    let r = dip.r();
    let codim = d - r;
    if codim >= 3 && r > 1 {
        let verdict = *in_gs.get_or_insert_with(|| membership_in_gs(g));
        if verdict == Verdict::Yes {
            return Properness::Proper;
        }
    }
    let decomposition = cache.decomposition(dip.colors.complement(d));
    let comps = [decomposition.component_of[dip.u], decomposition.component_of[dip.v]];
    let verdicts = comps.map(|i| residue_is_sphere(decomposition.components[i].graph.as_ref()));
    if verdicts.contains(&Verdict::Yes) {
        Properness::Proper
    } else if codim <= 2 && verdicts.iter().all(|&v| v == Verdict::No) {
        Properness::Improper
    } else {
        Properness::Unknown
    }
}

/// Properness of a dipole of `g`.
pub fn is_proper(g: &ColoredGraph, dip: &Dipole) -> Result<Properness, MoveError> {
    check_site(g, dip)?;
    Ok(properness_with(g, dip, &mut ResidueCache::new(g), &mut None))
}

fn dipoles_matching(g: &ColoredGraph, mut keep_r: impl FnMut(usize) -> bool, evaluate: bool) -> Vec<Dipole> {
    let d = g.d();
    let mut cache = ResidueCache::new(g);
    let mut in_gs = None;
    let mut out = Vec::new();
    for u in 0..g.order() {
        let mut seen = ColorSet::EMPTY;
        for c in 0..=d {
            let v = g.neighbor(c, u);
            if v <= u || seen.contains(c) {
                continue;
            }
            let colors = g.colors_between(u, v);
            seen = seen.union(colors);
            let r = colors.len();
            if r > d || !keep_r(r) || !cache.separated(u, v, colors.complement(d)) {
                continue;
            }
            let mut dip = Dipole::new(u, v, colors);
            if evaluate {
                dip.properness = properness_with(g, &dip, &mut cache, &mut in_gs);
            }
            out.push(dip);
        }
    }
    out.sort_by_key(|dip| (dip.u, dip.v, dip.colors));
    out
}

/// Every dipole of `g` with its properness, ordered by `(u, v, colors)`.
pub fn find_dipoles(g: &ColoredGraph) -> Vec<Dipole> {
    dipoles_matching(g, |_| true, true)
}

/// Dipoles with exactly `r` colors; properness is evaluated.
pub fn find_r_dipoles(g: &ColoredGraph, r: usize) -> Vec<Dipole> {
    dipoles_matching(g, |k| k == r, true)
}

/// Whether `g` has an `r`-dipole, without evaluating properness.
pub fn has_r_dipole(g: &ColoredGraph, r: usize) -> bool {
    !dipoles_matching(g, |k| k == r, false).is_empty()
}

/// Deletes the dipole and welds the hanging edges by color. Surviving
/// vertices keep their relative order.
pub fn eliminate(g: &ColoredGraph, dip: &Dipole) -> Result<ColoredGraph, MoveError> {
    check_site(g, dip)?;
    let result = eliminate_unchecked(g, dip);
    debug_assert_eq!(
        crate::topology::gurau_degree_unchecked(g),
        crate::topology::gurau_degree_unchecked(&result) + gdegree_drop(g.d(), dip.r()),
        "G-degree law violated eliminating {dip:?}"
    );
    Ok(result)
}

fn eliminate_unchecked(g: &ColoredGraph, dip: &Dipole) -> ColoredGraph {
    let n = g.order();
    let (u, v) = (dip.u, dip.v);
    let new_index = |w: usize| (w - (w > u) as usize - (w > v) as usize) as Vertex;
    let mut adj = Vec::with_capacity((n - 2) * g.num_colors());
    for c in 0..=g.d() {
        let welded = (!dip.colors.contains(c)).then(|| (g.neighbor(c, u), g.neighbor(c, v)));
        for w in (0..n).filter(|&w| w != u && w != v) {
            let mut t = g.neighbor(c, w);
            if let Some((x, y)) = welded {
                if w == x {
                    t = y;
                } else if w == y {
                    t = x;
                }
            }
            adj.push(new_index(t));
        }
    }
    ColoredGraph::from_flat_unchecked(g.d(), n - 2, adj)
}

/// Result of inserting a dipole.
#[derive(Debug, Clone)]
pub struct DipoleAddition {
    pub graph: ColoredGraph,
    /// The inserted pair `(order, order + 1)`; `None` when the two new
    /// vertices share a complementary residue and so do not form a dipole.
    pub dipole: Option<Dipole>,
}

/// Inserts two vertices `u = 2p`, `v = 2p + 1` joined by the colors in
/// `colors`. `attachments` lists, for each color `c` not in `colors` in
/// ascending order, a `c`-edge `(x_c, y_c)` of `g` which is replaced by
/// `x_c – u` and `v – y_c`.
pub fn add_dipole(g: &ColoredGraph, colors: ColorSet, attachments: &[(usize, usize)]) -> Result<DipoleAddition, MoveError> {
    let d = g.d();
    if colors.is_empty() || colors.len() > d || !colors.is_subset_of(g.all_colors()) {
        return Err(MoveError::BadAttachment(format!("dipole colors {colors} must be a proper nonempty subset")));
    }
    let free = colors.complement(d).to_vec();
    if attachments.len() != free.len() {
        return Err(MoveError::BadAttachment(format!(
            "expected {} attachments (colors {:?}), got {}",
            free.len(),
            free,
            attachments.len()
        )));
    }
    for (&c, &(x, y)) in free.iter().zip(attachments) {
        if x >= g.order() || y >= g.order() || g.neighbor(c, x) != y {
            return Err(MoveError::BadAttachment(format!("({x}, {y}) is not an edge of color {c}")));
        }
    }
    let n = g.order();
    let (u, v) = (n, n + 1);
    let mut adj = Vec::with_capacity((n + 2) * (d + 1));
    let mut attach = attachments.iter();
    for c in 0..=d {
        let start = adj.len();
        adj.extend(g.matching(c).iter().copied());
        if colors.contains(c) {
            adj.push(v as Vertex);
            adj.push(u as Vertex);
        } else {
            let &(x, y) = attach.next().expect("one attachment per free color");
            adj[start + x] = u as Vertex;
            adj[start + y] = v as Vertex;
            adj.push(x as Vertex);
            adj.push(y as Vertex);
        }
    }
    let graph = ColoredGraph::from_flat_unchecked(d, n + 2, adj);
    let site = Dipole::new(u, v, colors);
    let dipole = check_site(&graph, &site).ok().map(|_| {
        let mut dip = site;
        dip.properness = properness_with(&graph, &dip, &mut ResidueCache::new(&graph), &mut None);
        dip
    });
    Ok(DipoleAddition { graph, dipole })
}

/// The attachments that [`add_dipole`] needs to undo eliminating `dip`.
pub fn inverse_attachments(g: &ColoredGraph, dip: &Dipole) -> Vec<(usize, usize)> {
    let (u, v) = (dip.u, dip.v);
    let new_index = |w: usize| w - (w > u) as usize - (w > v) as usize;
    dip.colors
        .complement(g.d())
        .iter()
        .map(|c| (new_index(g.neighbor(c, u)), new_index(g.neighbor(c, v))))
        .collect()
}

/// For each color `c`, `Γ_ĉ` is connected or none of its components is a
/// `(d-1)`-sphere.
pub fn is_contracted(g: &ColoredGraph) -> Verdict {
    let d = g.d();
    let mut unknown = false;
    for c in 0..=d {
        let decomposition = residues(g, ColorSet::full(d).without(c));
        if decomposition.count() == 1 {
            continue;
        }
        for comp in &decomposition.components {
            match residue_is_sphere(comp.graph.as_ref()) {
                Verdict::Yes => return Verdict::No,
                Verdict::Unknown => unknown = true,
                Verdict::No => {}
            }
        }
    }
    if unknown {
        Verdict::Unknown
    } else {
        Verdict::Yes
    }
}

/// Eliminates proper 1-dipoles until none is left. In dimension 3 the
/// result is contracted and represents the same singular manifold.
pub fn contract(g: &ColoredGraph) -> ColoredGraph {
    let mut current = g.clone();
    loop {
        let next = find_r_dipoles(&current, 1).into_iter().find(|dip| dip.properness == Properness::Proper);
        match next {
            Some(dip) => current = eliminate(&current, &dip).expect("found dipoles are valid"),
            None => return current,
        }
    }
}

/// Outcome of a reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// The order-two graph was reached: the graph represents the `d`-sphere.
    Sphere,
    /// No proper dipole is left; nothing is claimed about the polyhedron.
    IrreducibleLocal,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certificate::Sphere => "sphere",
            Certificate::IrreducibleLocal => "irreducible-local",
        })
    }
}

/// One step of a reduction, in the move-log wire format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveRecord {
    pub op: &'static str,
    pub u: usize,
    pub v: usize,
    pub colors: Vec<usize>,
    pub r: usize,
    /// Change in G-degree (`new - old`).
    #[serde(rename = "dG_delta")]
    pub dg_delta: HalfInteger,
}

impl MoveRecord {
    fn elimination(d: usize, dip: &Dipole) -> Self {
        MoveRecord {
            op: "eliminate",
            u: dip.u,
            v: dip.v,
            colors: dip.colors.to_vec(),
            r: dip.r(),
            dg_delta: -gdegree_drop(d, dip.r()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub graph: ColoredGraph,
    pub certificate: Certificate,
    pub moves: Vec<MoveRecord>,
}

/// Greedily eliminates proper dipoles, largest G-degree drop first (ties
/// broken by `(u, v, colors)` order), until none remains.
pub fn reduce(g: &ColoredGraph) -> Reduction {
    let d = g.d();
    let mut current = g.clone();
    let mut moves = Vec::new();
    loop {
        let best = find_dipoles(&current)
            .into_iter()
            .filter(|dip| dip.properness == Properness::Proper)
            .enumerate()
            .max_by_key(|(i, dip)| (gdegree_drop(d, dip.r()), std::cmp::Reverse(*i)))
            .map(|(_, dip)| dip);
        let Some(dip) = best else { break };
        moves.push(MoveRecord::elimination(d, &dip));
        current = eliminate(&current, &dip).expect("found dipoles are valid");
    }
    let certificate = if current.order() == 2 { Certificate::Sphere } else { Certificate::IrreducibleLocal };
    Reduction { graph: current, certificate, moves }
}

/// Searches every sequence of proper-dipole eliminations for one reaching
/// the order-two graph. Gives up (returning `None`) on inputs larger than
/// `max_order`.
pub fn reduce_exhaustive(g: &ColoredGraph, max_order: usize) -> Option<Reduction> {
    if g.order() > max_order {
        return None;
    }
    let mut visited = HashSet::new();
    let mut canonizer = Canonizer::new();
    let mut path = Vec::new();
    let found = search_to_sphere(g, &mut visited, &mut canonizer, &mut path)?;
    Some(Reduction { graph: found, certificate: Certificate::Sphere, moves: path })
}

fn search_to_sphere(
    g: &ColoredGraph,
    visited: &mut HashSet<Vec<u8>>,
    canonizer: &mut Canonizer,
    path: &mut Vec<MoveRecord>,
) -> Option<ColoredGraph> {
    if g.order() == 2 {
        return Some(g.clone());
    }
    let code = canonizer.canonical_code(g, CanonMode::ColorFixed).ok()?;
    if !visited.insert(code.as_bytes().to_vec()) {
        return None;
    }
    for dip in find_dipoles(g).into_iter().filter(|dip| dip.properness == Properness::Proper) {
        let next = eliminate(g, &dip).expect("found dipoles are valid");
        path.push(MoveRecord::elimination(g.d(), &dip));
        if let Some(found) = search_to_sphere(&next, visited, canonizer, path) {
            return Some(found);
        }
        path.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{order_two_graph, torus_gem};
    use crate::topology::gurau_degree;

    #[test]
    fn order_two_has_no_dipoles() {
        assert!(find_dipoles(&order_two_graph(3)).is_empty());
        let red = reduce(&order_two_graph(3));
        assert_eq!(red.certificate, Certificate::Sphere);
        assert!(red.moves.is_empty());
        assert_eq!(is_contracted(&order_two_graph(3)), Verdict::Yes);
    }

    #[test]
    fn drop_formula() {
        assert_eq!(gdegree_drop(3, 1), HalfInteger::ZERO);
        assert_eq!(gdegree_drop(3, 2), HalfInteger::from_int(1));
        assert_eq!(gdegree_drop(3, 3), HalfInteger::ZERO);
        assert_eq!(gdegree_drop(4, 2), HalfInteger::from_int(6));
        assert_eq!(gdegree_drop(2, 1), HalfInteger::ZERO);
    }

    #[test]
    fn add_then_eliminate_round_trip() {
        let g = order_two_graph(3);
        for r in 1..=3 {
            let colors = ColorSet::from_colors(0..r);
            let attachments: Vec<(usize, usize)> = colors.complement(3).iter().map(|_| (0, 1)).collect();
            let added = add_dipole(&g, colors, &attachments).unwrap();
            let dip = added.dipole.expect("separated");
            assert_eq!(dip.properness, Properness::Proper);
            assert!(find_dipoles(&added.graph).iter().any(|x| x.u == dip.u && x.v == dip.v && x.colors == dip.colors));
            assert_eq!(eliminate(&added.graph, &dip).unwrap(), g);
            assert_eq!(inverse_attachments(&added.graph, &dip), attachments);
            assert_eq!(
                gurau_degree(&added.graph).unwrap(),
                gurau_degree(&g).unwrap() + gdegree_drop(3, r)
            );
        }
    }

    #[test]
    fn bad_attachment() {
        let g = order_two_graph(3);
        assert!(matches!(add_dipole(&g, ColorSet::single(0), &[(0, 1)]), Err(MoveError::BadAttachment(_))));
        assert!(matches!(
            add_dipole(&g, ColorSet::single(0), &[(0, 0), (0, 1), (0, 1)]),
            Err(MoveError::BadAttachment(_))
        ));
    }

    #[test]
    fn invalid_dipole() {
        let g = torus_gem();
        // 0 and 1 are joined by color 0 only, but stay connected through colors 1, 2
        let dip = Dipole::new(0, 1, ColorSet::single(0));
        assert!(matches!(eliminate(&g, &dip), Err(MoveError::InvalidDipole { .. })));
        assert!(matches!(is_proper(&g, &Dipole::new(0, 2, ColorSet::single(0))), Err(MoveError::InvalidDipole { .. })));
    }

    #[test]
    fn one_dipole_into_order_two_contracts_back() {
        let g = order_two_graph(3);
        let added = add_dipole(&g, ColorSet::single(2), &[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(is_contracted(&added.graph), Verdict::No);
        assert_eq!(contract(&added.graph), g);
    }
}
