//! Library results against brute force.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use common::*;
use gemkit::enumerate::{
    color_fixed_classes, enumerate_catalog, free_energy_counts, CountMode, EnumerationParams,
};
use gemkit::moves::find_dipoles;
use gemkit::par::Execution;
use gemkit::perm::{factorial, perfect_matchings};
use gemkit::residue::{is_bipartite, is_connected};
use gemkit::topology::{gurau_degree, pair_residue_counts};
use gemkit::{canonical_code, CanonMode, ColorSet, ColoredGraph, HalfInteger};

#[test]
fn enumeration_is_complete_through_order_six() {
    for order in [2, 4, 6] {
        let brute: BTreeSet<_> = all_graphs_fixed_zero(3, order)
            .iter()
            .map(|g| canonical_code(g, CanonMode::ColorFixed).unwrap())
            .collect();
        let found: BTreeSet<_> = color_fixed_classes(3, order, false, Execution::Sequential).into_iter().collect();
        assert_eq!(found, brute, "order {order}");
    }
    let catalog = enumerate_catalog(&EnumerationParams::new(3, 6)).unwrap();
    let mut brute_free = BTreeSet::new();
    for order in [2, 4, 6] {
        for g in all_graphs_fixed_zero(3, order) {
            brute_free.insert(canonical_code(&g, CanonMode::ColorFree).unwrap());
        }
    }
    let listed: Vec<_> = catalog.entries.iter().map(|e| e.code.clone()).collect();
    assert_eq!(listed, brute_free.into_iter().collect::<Vec<_>>());
}

#[test]
fn bipartite_prefilter_loses_nothing() {
    for (d, order) in [(3, 6), (4, 6), (2, 8)] {
        let all = color_fixed_classes(d, order, false, Execution::Sequential);
        let bip: Vec<_> = all.iter().filter(|c| is_bipartite(&c.to_graph().unwrap())).cloned().collect();
        assert_eq!(color_fixed_classes(d, order, true, Execution::Sequential), bip);
    }
}

/// Codes agree exactly when the brute-force forms agree, in both modes.
fn check_canonical_soundness(d: usize, order: usize) {
    let graphs = all_graphs_fixed_zero(d, order);
    for (mode, color_free) in [(CanonMode::ColorFixed, false), (CanonMode::ColorFree, true)] {
        let brute = BruteForm::new(order, d + 1, color_free);
        let mut code_to_form = HashMap::new();
        let mut form_to_code = HashMap::new();
        for g in &graphs {
            let code = canonical_code(g, mode).unwrap();
            let form = brute.form(g);
            assert_eq!(code_to_form.entry(code.clone()).or_insert_with(|| form.clone()), &form, "{mode}: {g}");
            assert_eq!(form_to_code.entry(form).or_insert_with(|| code.clone()), &code, "{mode}: {g}");
        }
        assert_eq!(code_to_form.len(), form_to_code.len());
    }
}

#[test]
fn canonical_codes_match_brute_force_isomorphism() {
    for order in [2, 4, 6] {
        check_canonical_soundness(3, order);
    }
    check_canonical_soundness(2, 6);
}

#[test]
fn dipoles_match_a_pair_scan() {
    let mut rng = rng(7);
    for d in 2..=5 {
        for _ in 0..40 {
            let order = 2 * rng_range(&mut rng, 1, 6);
            let g = random_connected_graph(&mut rng, d, order);
            let mut expected = HashSet::new();
            for u in 0..order {
                for v in u + 1..order {
                    let colors: ColorSet = (0..=d).filter(|&c| g.neighbor(c, u) == v).collect();
                    if colors.is_empty() || colors.len() > d {
                        continue;
                    }
                    let comp = brute_components(&g, colors.complement(d));
                    if comp[u] != comp[v] {
                        expected.insert((u, v, colors));
                    }
                }
            }
            let found: HashSet<_> = find_dipoles(&g).into_iter().map(|dip| (dip.u, dip.v, dip.colors)).collect();
            assert_eq!(found, expected, "{g}");
        }
    }
}

fn rng_range(rng: &mut rand::rngs::StdRng, lo: usize, hi: usize) -> usize {
    use rand::Rng;
    rng.gen_range(lo..=hi)
}

/// `2ω = d! + d!(d-1)p/2 - (d-1)! Σ_{i<j} g_ij`: each color pair is adjacent
/// in `(d-1)!` of the `d!/2` cyclic orders.
fn gdegree_by_faces(g: &ColoredGraph) -> HalfInteger {
    let d = g.d() as i64;
    let fd = factorial(g.d()) as i64;
    let faces: i64 = (0..=g.d()).flat_map(|i| (i + 1..=g.d()).map(move |j| (i, j))).map(|(i, j)| bicolored_cycles(g, i, j) as i64).sum();
    HalfInteger::from_twice(fd + fd * (d - 1) * g.p() as i64 / 2 - factorial(g.d() - 1) as i64 * faces)
}

#[test]
fn gdegree_matches_face_count() {
    let mut rng = rng(11);
    for d in 2..=5 {
        for _ in 0..60 {
            let order = 2 * rng_range(&mut rng, 1, 6);
            let g = random_connected_graph(&mut rng, d, order);
            let counts = pair_residue_counts(&g);
            for i in 0..=d {
                for j in i + 1..=d {
                    assert_eq!(counts[i][j], bicolored_cycles(&g, i, j));
                }
            }
            assert_eq!(gurau_degree(&g).unwrap(), gdegree_by_faces(&g), "{g}");
        }
    }
}

/// Labeled counts straight from all tuples of matchings.
fn labeled_by_tuples(d: usize, p: usize) -> BTreeMap<HalfInteger, u64> {
    let all = perfect_matchings(2 * p);
    let mut counts = BTreeMap::new();
    let mut idx = vec![0usize; d + 1];
    loop {
        let ms: Vec<Vec<usize>> = idx.iter().map(|&i| all[i].iter().map(|&x| x as usize).collect()).collect();
        let g = ColoredGraph::new(d, ms).unwrap();
        if is_connected(&g) && is_bipartite(&g) {
            *counts.entry(gurau_degree(&g).unwrap()).or_default() += 1;
        }
        let mut k = d + 1;
        loop {
            if k == 0 {
                return counts;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < all.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[test]
fn labeled_counts_match_tuple_enumeration() {
    for (d, p) in [(3, 1), (3, 2), (2, 3), (3, 3)] {
        let counts = free_energy_counts(d, p, true, CountMode::Labeled, Execution::Sequential).unwrap();
        assert_eq!(counts.counts, labeled_by_tuples(d, p), "d = {d}, p = {p}");
    }
}

#[test]
fn frozen_class_counts() {
    // cumulative color-free counts for d = 3 up to orders 2, 4, 6, 8
    let free: Vec<usize> = [2, 4, 6, 8]
        .iter()
        .map(|&n| enumerate_catalog(&EnumerationParams::new(3, n)).unwrap().len())
        .collect();
    assert_eq!(free, [1, 4, 21, 287]);
    // color-fixed counts per order
    let fixed: Vec<usize> = [2, 4, 6, 8].iter().map(|&n| color_fixed_classes(3, n, false, Execution::Sequential).len()).collect();
    assert_eq!(fixed, [1, 13, 118, 3931]);
}

#[test]
fn order_eight_matches_brute_force() {
    let brute: BTreeSet<_> = all_graphs_fixed_zero(3, 8)
        .iter()
        .map(|g| canonical_code(g, CanonMode::ColorFixed).unwrap())
        .collect();
    assert_eq!(color_fixed_classes(3, 8, false, Execution::Parallel), brute.into_iter().collect::<Vec<_>>());
}
