mod common;

use common::*;
use gemkit::moves::{add_dipole, eliminate, gdegree_drop, inverse_attachments, reduce};
use gemkit::par::Execution;
use gemkit::residue::{is_bipartite, residues};
use gemkit::tensor::{expansion_histogram, TraceInvariant};
use gemkit::topology::{
    euler_characteristic, gurau_degree, gurau_degree_recursive, regular_genus_min, surface_type,
};
use gemkit::{canonical_code, CanonMode, Canonizer, ColorSet, ColoredGraph, HalfInteger};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn graph_strategy(max_d: usize, max_p: usize) -> impl Strategy<Value = ColoredGraph> {
    (any::<u64>(), 2..=max_d, 1..=max_p).prop_map(|(seed, d, p)| random_connected_graph(&mut rng(seed), d, 2 * p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn direct_and_recursive_gdegree_agree(g in graph_strategy(5, 6)) {
        let direct = gurau_degree(&g).unwrap();
        prop_assert_eq!(direct, gurau_degree_recursive(&g).unwrap());
        prop_assert!(direct >= HalfInteger::ZERO);
        prop_assert!(regular_genus_min(&g).unwrap() <= direct);
    }

    #[test]
    fn codes_ignore_labels(g in graph_strategy(4, 6), seed in any::<u64>()) {
        let mut r = rng(seed);
        let relabeled = g.relabel(&random_relabeling(&mut r, g.order()));
        let mut colors: Vec<usize> = (0..=g.d()).collect();
        colors.shuffle(&mut r);
        let recolored = relabeled.permute_colors(&colors);
        let fixed = canonical_code(&g, CanonMode::ColorFixed).unwrap();
        prop_assert_eq!(&canonical_code(&relabeled, CanonMode::ColorFixed).unwrap(), &fixed);
        let free = canonical_code(&g, CanonMode::ColorFree).unwrap();
        prop_assert_eq!(&canonical_code(&recolored, CanonMode::ColorFree).unwrap(), &free);
        // decoding gives a graph with the same code
        prop_assert_eq!(canonical_code(&fixed.to_graph().unwrap(), CanonMode::ColorFixed).unwrap(), fixed);
        prop_assert_eq!(canonical_code(&free.to_graph().unwrap(), CanonMode::ColorFree).unwrap(), free);
    }

    #[test]
    fn automorphisms_act_freely(g in graph_strategy(4, 6)) {
        let aut = Canonizer::new().automorphism_count(&g).unwrap();
        prop_assert!(aut >= 1 && g.order() % aut == 0);
    }

    #[test]
    fn json_round_trip(g in graph_strategy(5, 6)) {
        prop_assert_eq!(ColoredGraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn residues_partition_vertices(g in graph_strategy(5, 6), bits in any::<u32>()) {
        let colors = ColorSet::from_bits(bits & ColorSet::full(g.d()).bits());
        let dec = residues(&g, colors);
        prop_assert_eq!(dec.components.iter().map(|c| c.order()).sum::<usize>(), g.order());
    }

    #[test]
    fn surfaces_are_consistent(seed in any::<u64>(), p in 1usize..=6) {
        let g = random_connected_graph(&mut rng(seed), 2, 2 * p);
        let s = surface_type(&g).unwrap();
        prop_assert_eq!(s.orientable, is_bipartite(&g));
        prop_assert_eq!(s.euler_characteristic(), euler_characteristic(&g));
        prop_assert_eq!(s.gd_contribution(), gurau_degree(&g).unwrap());
    }

    #[test]
    fn dipole_insertion_is_undone_by_elimination(g in graph_strategy(5, 5), seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = g.d();
        let size = r.gen_range(1..=d);
        let mut all: Vec<usize> = (0..=d).collect();
        all.shuffle(&mut r);
        let colors: ColorSet = all[..size].iter().copied().collect();
        let attachments: Vec<(usize, usize)> = colors
            .complement(d)
            .iter()
            .map(|c| {
                let x = r.gen_range(0..g.order());
                (x, g.neighbor(c, x))
            })
            .collect();
        let added = add_dipole(&g, colors, &attachments).unwrap();
        if let Some(dip) = added.dipole {
            let back = eliminate(&added.graph, &dip).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(inverse_attachments(&added.graph, &dip), attachments);
            let before = gurau_degree(&added.graph).unwrap();
            prop_assert_eq!(before - gurau_degree(&g).unwrap(), gdegree_drop(d, dip.r()));
        }
    }

    #[test]
    fn reduction_log_accounts_for_the_degree(g in graph_strategy(4, 5)) {
        let red = reduce(&g);
        let total: HalfInteger = red.moves.iter().map(|m| m.dg_delta).sum();
        prop_assert_eq!(gurau_degree(&g).unwrap() + total, gurau_degree(&red.graph).unwrap());
        prop_assert_eq!(red.graph.order() + 2 * red.moves.len(), g.order());
    }
}

/// A random connected invariant: matchings between whites `0..p` and blacks `p..2p`.
fn random_invariant(seed: u64, rank: usize, p: usize) -> TraceInvariant {
    let mut r = rng(seed);
    loop {
        let matchings: Vec<Vec<usize>> = (0..rank)
            .map(|_| {
                let mut black: Vec<usize> = (p..2 * p).collect();
                black.shuffle(&mut r);
                let mut m = vec![0; 2 * p];
                for (w, &b) in black.iter().enumerate() {
                    m[w] = b;
                    m[b] = w;
                }
                m
            })
            .collect();
        if let Ok(inv) = TraceInvariant::new(rank, matchings, (0..p).collect(), (p..2 * p).collect()) {
            return inv;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn histograms_ignore_vertex_orderings(seed in any::<u64>(), rank in 2usize..=4, p in 1usize..=5) {
        let inv = random_invariant(seed, rank, p);
        let mut r = rng(seed ^ 0x5eed);
        let reordered = inv.reorder(&random_relabeling(&mut r, p), &random_relabeling(&mut r, p)).unwrap();
        let a = expansion_histogram(&inv, Execution::Sequential).unwrap();
        let b = expansion_histogram(&reordered, Execution::Parallel).unwrap();
        prop_assert_eq!(a.total(), (1..=p as u64).product::<u64>());
        prop_assert_eq!(a, b);
    }
}
