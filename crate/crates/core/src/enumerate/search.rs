//! Candidate generation.
//!
//! Color 0 is fixed to the pairing `(0 1)(2 3)…`. Up to relabeling, color 1
//! is then determined by the cycle type of the `{0,1}`-residue, a partition
//! of `p`; each cycle of length `2k` occupies consecutive vertices. Color 2
//! ranges over representatives of the orbits of the automorphism group of
//! these two colors, and colors `3..=d` over all perfect matchings.
//! Survivors are deduplicated by canonical code.
//!
//! A work item is one `(order, color 1, color 2)` prefix; items are
//! independent, numbered deterministically, and are the unit of
//! checkpointing.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::catalog::{Catalog, CatalogEntry, EnumerationFilter, EnumerationParams};
use super::{EnumerationError, CANDIDATE_LIMIT};
use crate::canon::{canonical_code, CanonMode, CanonicalCode, Canonizer};
use crate::graph::{ColoredGraph, Vertex};
use crate::par::Execution;
use crate::perm::perfect_matchings;

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    pub execution: Execution,
    /// Wall-clock budget; items not started in time are left for a resume.
    pub budget: Option<Duration>,
    pub resume: Option<Checkpoint>,
}

/// Progress of an interrupted search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub params: EnumerationParams,
    pub total_items: usize,
    /// Ids of finished work items, ascending.
    pub completed: Vec<usize>,
    /// Color-fixed codes found by the finished items, ascending.
    pub classes: Vec<CanonicalCode>,
}

impl Checkpoint {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("checkpoint serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self, EnumerationError> {
        serde_json::from_str(s).map_err(|e| EnumerationError::Parse { line: 1, message: e.to_string() })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Complete(Catalog),
    Incomplete(Checkpoint),
}

struct WorkItem {
    order: usize,
    m1: Vec<Vertex>,
    m2: Option<Vec<Vertex>>,
}

/// Partitions of `n` into nonincreasing parts, largest first part first.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Color 1 for a cycle type: the cycle of size `k` starting at vertex `a`
/// pairs `a+2i+1` with `a+2i+2` and closes with `(a+2k-1, a)`.
fn cycle_matching(partition: &[usize]) -> Vec<Vertex> {
    let order = 2 * partition.iter().sum::<usize>();
    let mut m = vec![0; order];
    let mut a = 0;
    for &k in partition {
        for i in 0..k {
            let x = a + 2 * i + 1;
            let y = a + (2 * i + 2) % (2 * k);
            m[x] = y as Vertex;
            m[y] = x as Vertex;
        }
        a += 2 * k;
    }
    m
}

/// Generators of the group of relabelings fixing colors 0 and 1.
fn cycle_generators(partition: &[usize]) -> Vec<Vec<usize>> {
    let order = 2 * partition.iter().sum::<usize>();
    let identity: Vec<usize> = (0..order).collect();
    let mut gens = Vec::new();
    let mut starts = Vec::new();
    let mut a = 0;
    for &k in partition {
        starts.push(a);
        let len = 2 * k;
        if k > 1 {
            let mut rot = identity.clone();
            for j in 0..len {
                rot[a + j] = a + (j + 2) % len;
            }
            gens.push(rot);
        }
        let mut refl = identity.clone();
        for j in 0..len {
            refl[a + j] = a + (len + 1 - j) % len;
        }
        gens.push(refl);
        a += len;
    }
    for i in 1..partition.len() {
        if partition[i] == partition[i - 1] {
            let mut swap = identity.clone();
            let (x, y) = (starts[i - 1], starts[i]);
            for j in 0..2 * partition[i] {
                swap[x + j] = y + j;
                swap[y + j] = x + j;
            }
            gens.push(swap);
        }
    }
    gens
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Least-index representative of each orbit of `all` under `gens`.
fn orbit_representatives(all: &[Vec<Vertex>], index: &HashMap<&[Vertex], usize>, gens: &[Vec<usize>]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..all.len()).collect();
    let mut image = vec![0 as Vertex; all.first().map_or(0, Vec::len)];
    for g in gens {
        for (i, m) in all.iter().enumerate() {
            for (v, &w) in m.iter().enumerate() {
                image[g[v]] = g[w as usize] as Vertex;
            }
            let j = index[image.as_slice()];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..all.len()).filter(|&i| find(&mut parent, i) == i).collect()
}

fn identity_pairing(order: usize) -> Vec<Vertex> {
    (0..order as Vertex).map(|v| v ^ 1).collect()
}

/// BFS over the first `colors` matchings of a flat adjacency array.
fn connected_flat(adj: &[Vertex], order: usize, colors: usize, seen: &mut Vec<bool>, stack: &mut Vec<usize>) -> bool {
    seen.clear();
    seen.resize(order, false);
    stack.clear();
    stack.push(0);
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for c in 0..colors {
            let w = adj[c * order + v] as usize;
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == order
}

/// Two-coloring over the first `colors` matchings.
fn bipartite_flat(adj: &[Vertex], order: usize, colors: usize) -> bool {
    let mut side = vec![u8::MAX; order];
    for root in 0..order {
        if side[root] != u8::MAX {
            continue;
        }
        side[root] = 0;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for c in 0..colors {
                let w = adj[c * order + v] as usize;
                if side[w] == u8::MAX {
                    side[w] = side[v] ^ 1;
                    stack.push(w);
                } else if side[w] == side[v] {
                    return false;
                }
            }
        }
    }
    true
}

struct Plan {
    d: usize,
    bipartite_only: bool,
    items: Vec<WorkItem>,
    /// All perfect matchings per order.
    matchings: HashMap<usize, Vec<Vec<Vertex>>>,
}

impl Plan {
    fn new(d: usize, min_order: usize, max_order: usize, bipartite_only: bool) -> Plan {
        let mut items = Vec::new();
        let mut matchings = HashMap::new();
        for order in (min_order..=max_order).step_by(2) {
            let p = order / 2;
            let all = if d >= 2 { perfect_matchings(order) } else { Vec::new() };
            let index: HashMap<&[Vertex], usize> = all.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
            let m0 = identity_pairing(order);
            for partition in partitions(p) {
                let m1 = cycle_matching(&partition);
                if d == 1 {
                    if partition.len() == 1 {
                        items.push(WorkItem { order, m1, m2: None });
                    }
                    continue;
                }
                for rep in orbit_representatives(&all, &index, &cycle_generators(&partition)) {
                    let m2 = all[rep].clone();
                    if bipartite_only {
                        let prefix: Vec<Vertex> = [&m0[..], &m1[..], &m2[..]].concat();
                        if !bipartite_flat(&prefix, order, 3) {
                            continue;
                        }
                    }
                    items.push(WorkItem { order, m1: m1.clone(), m2: Some(m2) });
                }
            }
            drop(index);
            matchings.insert(order, all);
        }
        Plan { d, bipartite_only, items, matchings }
    }

    /// Color-fixed codes of the connected candidates of one item.
    fn run(&self, item: &WorkItem) -> Vec<CanonicalCode> {
        let (d, n) = (self.d, item.order);
        let all = &self.matchings[&n];
        let mut adj = identity_pairing(n);
        adj.extend_from_slice(&item.m1);
        if let Some(m2) = &item.m2 {
            adj.extend_from_slice(m2);
        }
        let free = d.saturating_sub(2);
        adj.resize((d + 1) * n, 0);
        let mut idx = vec![0usize; free];
        for k in 0..free {
            adj[(3 + k) * n..(4 + k) * n].copy_from_slice(&all[0]);
        }
        let mut canon = Canonizer::new();
        let mut found = HashSet::new();
        let (mut seen, mut stack) = (Vec::new(), Vec::new());
        loop {
            if connected_flat(&adj, n, d + 1, &mut seen, &mut stack)
                && (!self.bipartite_only || bipartite_flat(&adj, n, d + 1))
            {
                let g = ColoredGraph::from_flat_unchecked(d, n, adj.clone());
                found.insert(canon.canonical_code(&g, CanonMode::ColorFixed).expect("candidate is connected"));
            }
            // odometer over colors 3..=d
            let mut k = free;
            loop {
                if k == 0 {
                    let mut out: Vec<CanonicalCode> = found.into_iter().collect();
                    out.sort_unstable();
                    return out;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < all.len() {
                    adj[(3 + k) * n..(4 + k) * n].copy_from_slice(&all[idx[k]]);
                    break;
                }
                idx[k] = 0;
                adj[(3 + k) * n..(4 + k) * n].copy_from_slice(&all[0]);
            }
        }
    }
}

/// Upper bound on the candidates up to `max_order`: every partition times
/// every color-2 matching times the free colors.
pub fn candidate_bound(d: usize, max_order: usize) -> f64 {
    (2..=max_order)
        .step_by(2)
        .map(|order| {
            let matchings: f64 = (1..order).step_by(2).map(|k| k as f64).product();
            partitions(order / 2).len() as f64 * matchings.powi(d as i32 - 1)
        })
        .sum()
}

/// All connected `(d+1)`-colored graphs of one order, up to color-preserving
/// isomorphism, sorted by code.
pub fn color_fixed_classes(d: usize, order: usize, bipartite_only: bool, exec: Execution) -> Vec<CanonicalCode> {
    let plan = Plan::new(d, order, order, bipartite_only);
    let per_item = exec.map(&plan.items, |it| plan.run(it));
    let set: BTreeSet<CanonicalCode> = per_item.into_iter().flatten().collect();
    set.into_iter().collect()
}

/// Runs the search, possibly resuming a checkpoint, and either finishes the
/// catalog or returns a new checkpoint when the budget runs out.
pub fn enumerate(params: &EnumerationParams, options: &SearchOptions) -> Result<Outcome, EnumerationError> {
    params.validate()?;
    if options.budget.is_none() {
        let estimate = candidate_bound(params.d, params.max_order);
        if estimate > CANDIDATE_LIMIT {
            return Err(EnumerationError::InfeasibleBudget { estimate });
        }
    }
    let plan = Plan::new(params.d, 2, params.max_order, params.filter.bipartite_only);
    let (mut completed, mut classes): (BTreeSet<usize>, BTreeSet<CanonicalCode>) = match &options.resume {
        Some(ck) => {
            if ck.params != *params || ck.total_items != plan.items.len() {
                return Err(EnumerationError::CheckpointMismatch);
            }
            (ck.completed.iter().copied().collect(), ck.classes.iter().cloned().collect())
        }
        None => (BTreeSet::new(), BTreeSet::new()),
    };
    let deadline = options.budget.map(|b| Instant::now() + b);
    let pending: Vec<usize> = (0..plan.items.len()).filter(|i| !completed.contains(i)).collect();
    let results = options.execution.map(&pending, |&id| {
        if deadline.is_some_and(|t| Instant::now() >= t) {
            return None;
        }
        Some(plan.run(&plan.items[id]))
    });
    let mut unfinished = false;
    for (&id, result) in pending.iter().zip(results) {
        match result {
            Some(codes) => {
                completed.insert(id);
                classes.extend(codes);
            }
            None => unfinished = true,
        }
    }
    if unfinished {
        return Ok(Outcome::Incomplete(Checkpoint {
            params: params.clone(),
            total_items: plan.items.len(),
            completed: completed.into_iter().collect(),
            classes: classes.into_iter().collect(),
        }));
    }
    build_catalog(params, classes, options.execution).map(Outcome::Complete)
}

fn build_catalog(
    params: &EnumerationParams,
    classes: BTreeSet<CanonicalCode>,
    exec: Execution,
) -> Result<Catalog, EnumerationError> {
    let classes: Vec<CanonicalCode> = classes.into_iter().collect();
    let codes: Vec<CanonicalCode> = match params.mode {
        CanonMode::ColorFixed => classes,
        CanonMode::ColorFree => {
            let free = exec.map(&classes, |c| {
                canonical_code(&c.to_graph().expect("own codes decode"), CanonMode::ColorFree).expect("connected")
            });
            free.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
        }
    };
    let filter: &EnumerationFilter = &params.filter;
    let built = exec.map(&codes, |code| -> Result<Option<CatalogEntry>, EnumerationError> {
        let g = code.to_graph()?;
        let entry = CatalogEntry::from_graph(&g, params)?;
        debug_assert_eq!(&entry.code, code);
        Ok(filter.accepts(&entry, &g).then_some(entry))
    });
    let mut entries = Vec::new();
    for e in built {
        entries.extend(e?);
    }
    Ok(Catalog { params: Some(params.clone()), entries })
}

/// Unbudgeted enumeration with the default execution.
pub fn enumerate_catalog(params: &EnumerationParams) -> Result<Catalog, EnumerationError> {
    match enumerate(params, &SearchOptions::default())? {
        Outcome::Complete(c) => Ok(c),
        Outcome::Incomplete(_) => unreachable!("no budget was set"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{order_two_graph, torus_gem};

    #[test]
    fn partition_lists() {
        assert_eq!(partitions(4), vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(partitions(6).len(), 11);
    }

    #[test]
    fn cycle_layout_has_the_requested_type() {
        let m1 = cycle_matching(&[3, 1]);
        let adj: Vec<Vertex> = [identity_pairing(8), m1].concat();
        let g = ColoredGraph::from_flat(1, 8, adj).unwrap();
        let r = crate::residue::residues(&g, g.all_colors());
        let mut sizes: Vec<usize> = r.components.iter().map(|c| c.order()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 6]);
    }

    #[test]
    fn generators_fix_colors_zero_and_one() {
        for partition in partitions(5) {
            let m0 = identity_pairing(10);
            let m1 = cycle_matching(&partition);
            for g in cycle_generators(&partition) {
                for m in [&m0, &m1] {
                    for v in 0..10 {
                        assert_eq!(m[g[v]] as usize, g[m[v] as usize]);
                    }
                }
            }
        }
    }

    #[test]
    fn small_orders() {
        assert_eq!(color_fixed_classes(3, 2, false, Execution::Sequential).len(), 1);
        let e = enumerate_catalog(&EnumerationParams::new(3, 2)).unwrap();
        assert_eq!(e.entries.len(), 1);
        assert_eq!(e.entries[0].graph(), order_two_graph(3).relabel(&[0, 1]));
        // d = 1: one cycle per order
        assert_eq!(enumerate_catalog(&EnumerationParams::new(1, 8)).unwrap().len(), 4);
    }

    #[test]
    fn torus_appears_at_order_six() {
        let cat = enumerate_catalog(&EnumerationParams::new(2, 6)).unwrap();
        let torus = canonical_code(&torus_gem(), CanonMode::ColorFree).unwrap();
        assert!(cat.entries.iter().any(|e| e.code == torus));
        for w in cat.entries.windows(2) {
            assert!(w[0].code < w[1].code);
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let params = EnumerationParams::new(3, 6);
        let seq = enumerate(&params, &SearchOptions { execution: Execution::Sequential, ..Default::default() }).unwrap();
        let par = enumerate(&params, &SearchOptions { execution: Execution::Parallel, ..Default::default() }).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn zero_budget_checkpoints_and_resumes() {
        let params = EnumerationParams::new(3, 6);
        let first = enumerate(&params, &SearchOptions { budget: Some(Duration::ZERO), ..Default::default() }).unwrap();
        let Outcome::Incomplete(ck) = first else { panic!("expected a checkpoint") };
        assert!(ck.completed.is_empty());
        let ck = Checkpoint::from_json(&ck.to_json()).unwrap();
        let resumed = enumerate(&params, &SearchOptions { resume: Some(ck), ..Default::default() }).unwrap();
        assert_eq!(resumed, Outcome::Complete(enumerate_catalog(&params).unwrap()));
        let other = EnumerationParams::new(3, 4);
        let Outcome::Incomplete(ck) =
            enumerate(&params, &SearchOptions { budget: Some(Duration::ZERO), ..Default::default() }).unwrap()
        else {
            unreachable!()
        };
        assert_eq!(
            enumerate(&other, &SearchOptions { resume: Some(ck), ..Default::default() }),
            Err(EnumerationError::CheckpointMismatch)
        );
    }

    #[test]
    fn infeasible_without_budget() {
        let r = enumerate(&EnumerationParams::new(5, 16), &SearchOptions::default());
        assert!(matches!(r, Err(EnumerationError::InfeasibleBudget { .. })));
    }
}
