//! Seeded random 2-connected graphs built from a cycle and random ears.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A 2-connected graph with `n` vertices and `n + s` edges: a random cycle
/// plus `s` open ears with random endpoints, vertices relabelled at random.
/// The same `(n, s, seed)` always gives the same graph.
pub fn random_two_connected(n: usize, s: usize, seed: u64) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("need at least 3 vertices, got {n}")));
    }
    if n + s > n * (n - 1) / 2 {
        return Err(Error::InvalidInput(format!("{n} vertices cannot carry {} edges", n + s)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: loop {
        let k = if s == 0 { n } else { rng.gen_range(3..=n) };
        let mut inner = vec![0usize; s];
        for _ in 0..n - k {
            let t = rng.gen_range(0..s);
            inner[t] += 1;
        }
        let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        let mut placed = k;
        for &b in &inner {
            let mut tries = 0;
            let (x, y) = loop {
                let x = rng.gen_range(0..placed);
                let y = rng.gen_range(0..placed);
                let taken = edges.contains(&(x, y)) || edges.contains(&(y, x));
                if x != y && (b > 0 || !taken) {
                    break (x, y);
                }
                tries += 1;
                if tries > 1000 {
                    continue 'attempt;
                }
            };
            let mut prev = x;
            for _ in 0..b {
                edges.push((prev, placed));
                prev = placed;
                placed += 1;
            }
            edges.push((prev, y));
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        return Graph::from_edges(n, edges.into_iter().map(|(a, b)| (perm[a], perm[b])));
    }
}
