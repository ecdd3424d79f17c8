#![allow(dead_code)]

use gemkit::perm::{all_permutations, perfect_matchings};
use gemkit::residue::is_connected;
use gemkit::{ColorSet, ColoredGraph};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_matching(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let mut vs: Vec<usize> = (0..n).collect();
    vs.shuffle(rng);
    let mut m = vec![0; n];
    for pair in vs.chunks(2) {
        m[pair[0]] = pair[1];
        m[pair[1]] = pair[0];
    }
    m
}

/// Bipartite when `bipartite`: every matching joins even to odd vertices.
pub fn random_graph(rng: &mut StdRng, d: usize, order: usize, bipartite: bool) -> ColoredGraph {
    let matchings = (0..=d)
        .map(|_| {
            if bipartite {
                let mut black: Vec<usize> = (0..order / 2).collect();
                black.shuffle(rng);
                let mut m = vec![0; order];
                for (w, &b) in black.iter().enumerate() {
                    m[2 * w] = 2 * b + 1;
                    m[2 * b + 1] = 2 * w;
                }
                m
            } else {
                random_matching(rng, order)
            }
        })
        .collect();
    ColoredGraph::new(d, matchings).unwrap()
}

pub fn random_connected_graph(rng: &mut StdRng, d: usize, order: usize) -> ColoredGraph {
    let bipartite = rng.gen_bool(0.5);
    loop {
        let g = random_graph(rng, d, order, bipartite);
        if is_connected(&g) {
            return g;
        }
    }
}

pub fn random_relabeling(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Every connected graph on `order` vertices whose color 0 is `(0 1)(2 3)…`.
pub fn all_graphs_fixed_zero(d: usize, order: usize) -> Vec<ColoredGraph> {
    let all = perfect_matchings(order);
    let m0: Vec<usize> = (0..order).map(|v| v ^ 1).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; d];
    loop {
        let mut ms = vec![m0.clone()];
        ms.extend(idx.iter().map(|&i| all[i].iter().map(|&x| x as usize).collect::<Vec<_>>()));
        let g = ColoredGraph::new(d, ms).unwrap();
        if is_connected(&g) {
            out.push(g);
        }
        let mut k = d;
        loop {
            if k == 0 {
                return out;
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

/// Lexicographically least adjacency array over all vertex bijections and,
/// if `color_free`, all color permutations. Independent of the library's
/// canonical form.
pub struct BruteForm {
    vertex_perms: Vec<Vec<usize>>,
    color_perms: Vec<Vec<usize>>,
}

impl BruteForm {
    pub fn new(order: usize, colors: usize, color_free: bool) -> Self {
        let color_perms = if color_free { all_permutations(colors) } else { vec![(0..colors).collect()] };
        BruteForm { vertex_perms: all_permutations(order), color_perms }
    }

    pub fn form(&self, g: &ColoredGraph) -> Vec<usize> {
        let n = g.order();
        let k = g.d() + 1;
        let mut best = vec![usize::MAX; n * k];
        let mut cur = vec![0usize; n * k];
        for cp in &self.color_perms {
            for pi in &self.vertex_perms {
                for c in 0..k {
                    for v in 0..n {
                        cur[c * n + pi[v]] = pi[g.neighbor(cp[c], v)];
                    }
                }
                if cur < best {
                    best.copy_from_slice(&cur);
                }
            }
        }
        best
    }
}

/// Components of the residue on `colors` by plain BFS.
pub fn brute_components(g: &ColoredGraph, colors: ColorSet) -> Vec<usize> {
    let n = g.order();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut queue = vec![s];
        while let Some(v) = queue.pop() {
            for c in colors.iter() {
                let w = g.neighbor(c, v);
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    queue.push(w);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Number of `{i,j}`-bicolored cycles, walking alternating edges.
pub fn bicolored_cycles(g: &ColoredGraph, i: usize, j: usize) -> usize {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let mut v = s;
        loop {
            seen[v] = true;
            let w = g.neighbor(i, v);
            seen[w] = true;
            v = g.neighbor(j, w);
            if v == s {
                break;
            }
        }
    }
    cycles
}
