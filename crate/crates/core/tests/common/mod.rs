#![allow(dead_code)]

use ctqw_clique::{Graph, Label};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Pairwise adjacency scan, independent of `Graph::is_clique`.
pub fn brute_is_clique(g: &Graph, labels: &[Label]) -> bool {
    for a in 0..labels.len() {
        for b in (a + 1)..labels.len() {
            if labels[a] != labels[b] && !g.adjacent(labels[a], labels[b]) {
                return false;
            }
        }
    }
    true
}

/// Clique number and every maximum clique by scanning all `2^n` subsets.
pub fn subset_max_cliques(g: &Graph) -> (usize, Vec<Vec<Label>>) {
    let n = g.n();
    assert!(n <= 20, "subset enumeration is for tiny graphs");
    let rows: Vec<u32> = (0..n)
        .map(|i| (0..n).filter(|&j| g.has_edge(i, j)).fold(0u32, |m, j| m | (1 << j)))
        .collect();
    let mut best = 0;
    let mut all: Vec<u32> = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let ok = (0..n).filter(|&i| mask >> i & 1 == 1).all(|i| mask & !(1 << i) & !rows[i] == 0);
        if !ok {
            continue;
        }
        let size = mask.count_ones() as usize;
        if size > best {
            best = size;
            all.clear();
        }
        if size == best {
            all.push(mask);
        }
    }
    let mut out: Vec<Vec<Label>> = all
        .into_iter()
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).map(|i| g.label(i)).collect())
        .collect();
    out.sort();
    (best, out)
}

/// Reconstruction of the paper's 21-vertex example: the 5-clique
/// `{1..5}` with center 5, a ring `6..21` hanging off the center, and the
/// cross edges `(1,10)`, `(2,8)`, `(3,21)`.
pub fn fig8_graph() -> Graph {
    let mut g = Graph::empty(21);
    for a in 1..=5 {
        for b in (a + 1)..=5 {
            g.add_edge(a, b).unwrap();
        }
    }
    for v in 6..=21 {
        g.add_edge(5, v).unwrap();
        g.add_edge(v, if v == 21 { 6 } else { v + 1 }).unwrap();
    }
    for (a, b) in [(1, 10), (2, 8), (3, 21)] {
        g.add_edge(a, b).unwrap();
    }
    g
}

/// Two `K4`s joined by one edge, plus a vertex adjacent to all eight.
pub fn twin_k4_with_hub() -> Graph {
    let mut g = Graph::empty(9);
    for block in [[1, 2, 3, 4], [5, 6, 7, 8]] {
        for a in 0..4 {
            for b in (a + 1)..4 {
                g.add_edge(block[a], block[b]).unwrap();
            }
        }
    }
    g.add_edge(4, 5).unwrap();
    for v in 1..=8 {
        g.add_edge(9, v).unwrap();
    }
    g
}
