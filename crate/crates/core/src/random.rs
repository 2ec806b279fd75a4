//! Seeded random graph generators.

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Label};

/// Erdős–Rényi `G(n, p)` on labels `1..=n`: each pair independently joined
/// with probability `p`, pairs drawn in row-major order.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    assert!((0.0..=1.0).contains(&p), "edge probability {p} outside [0, 1]");
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < p {
                g.set_edge(i, j);
            }
        }
    }
    g
}

/// Seed for one trial of a batch, drawn from stream `(n, p, trial)` of the
/// ChaCha generator keyed by `seed`. Trials of different cells never share
/// a stream, so any cell can be regenerated on its own.
pub fn trial_seed(seed: u64, n: usize, p: f64, trial: usize) -> u64 {
    let ppm = (p * 1e6).round() as u64;
    assert!(n < 1 << 24 && ppm < 1 << 20 && trial < 1 << 20, "trial coordinates out of range");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 40) | (ppm << 20) | trial as u64);
    rng.next_u64()
}

/// The generator every graph of a batch is drawn with.
pub fn trial_rng(trial_seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed)
}

/// `G(n, p)` with `count` cliques of `size` vertices planted so that all of
/// them share one hub vertex and are otherwise disjoint. Returns the graph
/// and the planted cliques (sorted labels).
pub fn planted_shared_cliques<R: Rng + ?Sized>(
    n: usize,
    p: f64,
    size: usize,
    count: usize,
    rng: &mut R,
) -> (Graph, Vec<Vec<Label>>) {
    assert!(size >= 2 && count >= 1);
    assert!(1 + count * (size - 1) <= n, "not enough vertices to plant the cliques");
    let mut g = gnp(n, p, rng);
    let mut pool: Vec<usize> = (0..n).collect();
    pool.shuffle(rng);
    let hub = pool[0];
    let mut planted = Vec::with_capacity(count);
    for c in 0..count {
        let mut members = vec![hub];
        members.extend_from_slice(&pool[1 + c * (size - 1)..1 + (c + 1) * (size - 1)]);
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                g.set_edge(i, j);
            }
        }
        let mut labels: Vec<Label> = members.iter().map(|&i| g.label(i)).collect();
        labels.sort_unstable();
        planted.push(labels);
    }
    (g, planted)
}
