//! Exact maximum clique by branch and bound with greedy-coloring bounds.
//!
//! Vertices are visited in descending-degree order; each node of the search
//! colors its candidate set greedily and prunes when the current clique plus
//! the color count cannot reach the incumbent.

use thiserror::Error;

use crate::graph::{Clique, Graph, Label, Procedure};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the exact-search cap of {cap}; use a heuristic solver")]
    TooLarge { n: usize, cap: usize },
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub max_vertices: usize,
    /// Upper bound on stored witnesses when enumerating.
    pub max_witnesses: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            max_vertices: 64,
            max_witnesses: 10_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub omega: usize,
    /// One witness, or every maximum clique (up to the cap) when enumerating.
    pub witnesses: Vec<Clique>,
    pub nodes_explored: u64,
}

pub fn max_clique_exact(g: &Graph, enumerate_all: bool) -> Result<OracleResult, OracleError> {
    max_clique_with(g, enumerate_all, &OracleConfig::default())
}

pub fn max_clique_with(g: &Graph, enumerate_all: bool, cfg: &OracleConfig) -> Result<OracleResult, OracleError> {
    let n = g.n();
    if n > cfg.max_vertices {
        return Err(OracleError::TooLarge {
            n,
            cap: cfg.max_vertices,
        });
    }
    if n == 0 {
        return Ok(OracleResult {
            omega: 0,
            witnesses: vec![Clique::certify(g, Vec::new(), Procedure::Oracle).unwrap()],
            nodes_explored: 0,
        });
    }

    // Search in descending-degree order; ties by position.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(g.degree(i)));
    let words = n.div_ceil(64);
    let adj: Vec<Bits> = order
        .iter()
        .map(|&i| {
            let mut b = Bits::new(words);
            for (r, &k) in order.iter().enumerate() {
                if g.has_edge(i, k) {
                    b.insert(r);
                }
            }
            b
        })
        .collect();

    let mut search = Search {
        adj,
        enumerate_all,
        max_witnesses: cfg.max_witnesses,
        best: 0,
        found: Vec::new(),
        current: Vec::new(),
        nodes: 0,
    };
    let mut all = Bits::new(words);
    for r in 0..n {
        all.insert(r);
    }
    search.expand(all);

    let mut witnesses: Vec<Clique> = search
        .found
        .into_iter()
        .map(|rs| {
            let labels: Vec<Label> = rs.iter().map(|&r| g.label(order[r])).collect();
            Clique::certify(g, labels, Procedure::Oracle).expect("search only extends cliques")
        })
        .collect();
    witnesses.sort_by(|a, b| a.members().cmp(b.members()));
    Ok(OracleResult {
        omega: search.best,
        witnesses,
        nodes_explored: search.nodes,
    })
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(words: usize) -> Self {
        Bits(vec![0; words])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, &w)| k * 64 + w.trailing_zeros() as usize)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_not_assign(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }
}

struct Search {
    adj: Vec<Bits>,
    enumerate_all: bool,
    max_witnesses: usize,
    best: usize,
    found: Vec<Vec<usize>>,
    current: Vec<usize>,
    nodes: u64,
}

impl Search {
    /// Greedy sequential coloring of `cands`; returns vertices in color
    /// order together with the color of each.
    fn color_sort(&self, cands: &Bits) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = cands.clone();
        let mut verts = Vec::new();
        let mut colors = Vec::new();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                avail.and_not_assign(&self.adj[v]);
                uncolored.remove(v);
                verts.push(v);
                colors.push(color);
            }
        }
        (verts, colors)
    }

    fn record(&mut self) {
        let size = self.current.len();
        if size > self.best {
            self.best = size;
            self.found.clear();
        }
        if self.found.is_empty() || (self.enumerate_all && self.found.len() < self.max_witnesses) {
            self.found.push(self.current.clone());
        }
    }

    fn pruned(&self, bound: usize) -> bool {
        if self.enumerate_all {
            bound < self.best
        } else {
            bound <= self.best
        }
    }

    fn expand(&mut self, mut cands: Bits) {
        self.nodes += 1;
        let (verts, colors) = self.color_sort(&cands);
        for k in (0..verts.len()).rev() {
            if self.pruned(self.current.len() + colors[k]) {
                return;
            }
            let v = verts[k];
            self.current.push(v);
            let next = cands.and(&self.adj[v]);
            if next.is_empty() {
                if self.current.len() >= self.best {
                    self.record();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cands.remove(v);
        }
    }
}
