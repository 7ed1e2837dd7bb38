//! Independent brute-force oracles for values the library computes by
//! cleverer means.

use std::collections::BTreeMap;

use cyclelens::construct::{bcfy_construct, cycle_lengths_closed_form};
use cyclelens::cycles::{enumerate_cycles, DEFAULT_CAP};
use cyclelens::sidon::{max_sidon_exact, singer_difference_set, Convention, DEFAULT_MAX_N};
use cyclelens::Graph;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Cycle lengths with multiplicity, found by testing every edge subset for
/// being connected and 2-regular.
fn cycles_by_subsets(g: &Graph) -> BTreeMap<usize, u64> {
    let edges = g.edges();
    let mut out = BTreeMap::new();
    for mask in 1u32..1 << edges.len() {
        let chosen: Vec<(usize, usize)> = (0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
        if chosen.len() < 3 {
            continue;
        }
        let mut deg = vec![0; g.n()];
        for &(a, b) in &chosen {
            deg[a] += 1;
            deg[b] += 1;
        }
        if deg.iter().any(|&d| d != 0 && d != 2) {
            continue;
        }
        let mut comp: Vec<usize> = (0..g.n()).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            if c[x] != x {
                let r = find(c, c[x]);
                c[x] = r;
            }
            c[x]
        }
        for &(a, b) in &chosen {
            let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
            comp[ra] = rb;
        }
        let root = find(&mut comp, chosen[0].0);
        if (0..g.n()).all(|v| deg[v] == 0 || find(&mut comp, v) == root) {
            *out.entry(chosen.len()).or_insert(0) += 1;
        }
    }
    out
}

fn random_graph(n: usize, e: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.shuffle(rng);
    pairs.truncate(e);
    Graph::from_edges(n, pairs).unwrap()
}

#[test]
fn cycle_counts_match_subset_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..300 {
        let n = 3 + trial % 8;
        let max_e = (n * (n - 1) / 2).min(15);
        let e = 2 + trial * 7 % (max_e - 1);
        let g = random_graph(n, e.min(max_e), &mut rng);
        let spectrum = enumerate_cycles(&g, DEFAULT_CAP).unwrap();
        let oracle = cycles_by_subsets(&g);
        assert_eq!(spectrum.multiplicities(), oracle, "edges {:?}", g.edges());
        assert_eq!(spectrum.cycle_count, oracle.values().sum::<u64>());
    }
}

#[test]
fn known_cycle_counts() {
    // K4 has 4 triangles and 3 four-cycles; K5 has 37 cycles in total.
    let k4 = cycles_by_subsets(&Graph::complete(4));
    assert_eq!(k4, BTreeMap::from([(3, 4), (4, 3)]));
    assert_eq!(enumerate_cycles(&Graph::complete(5), DEFAULT_CAP).unwrap().cycle_count, 37);
    assert_eq!(enumerate_cycles(&Graph::complete(6), DEFAULT_CAP).unwrap().cycle_count, 197);
}

#[test]
fn small_chorded_cycles_match_subset_enumeration() {
    for q in [2, 3] {
        let c = bcfy_construct(q).unwrap();
        if c.graph().edge_count() > 20 {
            continue;
        }
        let oracle = cycles_by_subsets(c.graph());
        assert!(oracle.values().all(|&m| m == 1));
        assert_eq!(oracle.keys().copied().collect::<Vec<_>>(), cycle_lengths_closed_form(&c));
    }
}

fn max_sidon_by_subsets(n: u64, convention: Convention) -> usize {
    let mut best = 0;
    for mask in 1u32..1 << n {
        let set: Vec<u64> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        if set.len() <= best {
            continue;
        }
        let mut keys: Vec<u64> = Vec::new();
        for (j, &b) in set.iter().enumerate() {
            for &a in &set[..j] {
                keys.push(match convention {
                    Convention::StrictSums => a + b,
                    Convention::DistinctDifferences => b - a,
                });
            }
        }
        let len = keys.len();
        keys.sort_unstable();
        keys.dedup();
        if keys.len() == len {
            best = set.len();
        }
    }
    best
}

#[test]
fn sidon_maxima_match_subset_enumeration() {
    assert_eq!(max_sidon_by_subsets(7, Convention::DistinctDifferences), 4);
    assert_eq!(max_sidon_by_subsets(13, Convention::DistinctDifferences), 5);
    for n in 1..=16 {
        for conv in [Convention::DistinctDifferences, Convention::StrictSums] {
            let exact = max_sidon_exact(n, conv, DEFAULT_MAX_N, u64::MAX).unwrap();
            assert_eq!(exact.size(), max_sidon_by_subsets(n, conv), "n = {n}, {conv:?}");
        }
    }
}

#[test]
fn singer_sets_cover_every_difference_once() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let d = singer_difference_set(q).unwrap();
        let v = q * q + q + 1;
        assert_eq!(d.v, v);
        assert_eq!(d.elements.len() as u64, q + 1);
        let mut count = vec![0; v as usize];
        for &x in &d.elements {
            for &y in &d.elements {
                if x != y {
                    count[((x + v - y) % v) as usize] += 1;
                }
            }
        }
        assert_eq!(count[0], 0);
        assert!(count[1..].iter().all(|&c| c == 1), "q = {q}");
    }
}
