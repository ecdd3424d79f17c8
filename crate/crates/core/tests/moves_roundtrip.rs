mod common;

use common::*;
use gemkit::graph::order_two_graph;
use gemkit::moves::{add_dipole, eliminate, find_dipoles, gdegree_drop, is_proper, Properness};
use gemkit::topology::{gurau_degree, gurau_degree_recursive};
use gemkit::ColorSet;
use rand::seq::SliceRandom;
use rand::Rng;

/// Grows graphs by random dipole insertions and checks that eliminating
/// each inserted dipole restores the previous graph exactly.
#[test]
fn thousand_insert_eliminate_round_trips() {
    let mut r = rng(2024);
    let mut done = 0;
    while done < 1000 {
        let d = r.gen_range(2..=5);
        let mut g = order_two_graph(d);
        for _ in 0..r.gen_range(1..=5) {
            let size = r.gen_range(1..=d);
            let mut colors: Vec<usize> = (0..=d).collect();
            colors.shuffle(&mut r);
            let colors: ColorSet = colors[..size].iter().copied().collect();
            let attachments: Vec<(usize, usize)> = colors
                .complement(d)
                .iter()
                .map(|c| {
                    let x = r.gen_range(0..g.order());
                    (x, g.neighbor(c, x))
                })
                .collect();
            let added = add_dipole(&g, colors, &attachments).unwrap();
            let Some(dip) = added.dipole else { continue };
            assert_eq!(eliminate(&added.graph, &dip).unwrap(), g);
            let delta = gurau_degree(&added.graph).unwrap() - gurau_degree(&g).unwrap();
            assert_eq!(delta, gdegree_drop(d, dip.r()));
            assert_eq!(is_proper(&added.graph, &dip).unwrap(), dip.properness);
            done += 1;
            g = added.graph;
        }
    }
}

/// Every dipole of random graphs, proper or not, obeys the degree law.
#[test]
fn eliminations_follow_the_degree_law() {
    let mut r = rng(99);
    let mut checked = 0;
    for _ in 0..400 {
        let d = r.gen_range(3..=4);
        let order = 2 * r.gen_range(2..=6);
        let g = random_connected_graph(&mut r, d, order);
        for dip in find_dipoles(&g) {
            let h = eliminate(&g, &dip).unwrap();
            let before = gurau_degree(&g).unwrap();
            let after = gurau_degree(&h).unwrap();
            assert_eq!(before - after, gdegree_drop(d, dip.r()), "{g} {dip:?}");
            assert_eq!(after, gurau_degree_recursive(&h).unwrap());
            if dip.properness == Properness::Proper && dip.r() == 1 {
                assert_eq!(before, after);
            }
            checked += 1;
        }
    }
    assert!(checked >= 500, "only {checked} eliminations");
}
