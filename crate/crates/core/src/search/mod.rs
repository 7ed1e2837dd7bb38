//! Exhaustive search for the densest graphs without two cycles of the same
//! length, and for graphs with exactly one cycle of each length `3..=n`.
//!
//! Connected graphs are grown one edge at a time, either closing a cycle
//! between existing vertices or hanging a new vertex, and each level is
//! reduced to one canonical representative per isomorphism class. Adding
//! an edge never removes a repeated length, so extensions of a repeating
//! graph are never generated.

mod canon;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

pub use canon::{canonical_form, SmallGraph, MAX_CANON_N};

use crate::cycles::{enumerate_cycles, is_two_connected, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by the search.
pub const MAX_SEARCH_N: usize = MAX_CANON_N;

/// `max(0, ⌊(√(8n − 15) − 3) / 2⌋)`, computed in integers.
pub fn shi_formula(n: u64) -> u64 {
    if n < 2 {
        return 0;
    }
    let r = (8 * n - 15).isqrt();
    r.saturating_sub(3) / 2
}

/// Cycle lengths created by adding `ab` to `g`, as a bit mask, or `None`
/// if two of them coincide or one is already present in `mask`.
fn new_lengths(g: &SmallGraph, mask: u32, a: usize, b: usize) -> Option<u32> {
    fn walk(g: &SmallGraph, at: usize, target: usize, seen: u16, len: u32, acc: &mut u32, clash: &mut bool) {
        if *clash {
            return;
        }
        if at == target {
            let bit = 1u32 << (len + 1);
            if *acc & bit != 0 {
                *clash = true;
            }
            *acc |= bit;
            return;
        }
        let mut next = g.adj[at] & !seen;
        while next != 0 {
            let w = next.trailing_zeros() as usize;
            next &= next - 1;
            walk(g, w, target, seen | 1 << w, len + 1, acc, clash);
        }
    }
    let mut acc = 0;
    let mut clash = false;
    walk(g, a, b, 1 << a, 0, &mut acc, &mut clash);
    (!clash && acc & mask == 0).then_some(acc)
}

#[derive(Clone, Copy)]
struct Node {
    g: SmallGraph,
    mask: u32,
}

/// Every repeat-free connected graph on exactly `n` vertices, up to
/// isomorphism, found before the node budget ran out.
struct Exploration {
    finals: Vec<Node>,
    nodes: u64,
    complete: bool,
}

fn explore(n: usize, budget: u64) -> Exploration {
    let mut level: Vec<Node> = vec![Node {
        g: SmallGraph::new(1),
        mask: 0,
    }];
    let mut finals = Vec::new();
    let mut nodes = 1u64;
    loop {
        finals.extend(level.iter().filter(|x| x.g.k == n).copied());
        if level.is_empty() {
            return Exploration {
                finals,
                nodes,
                complete: true,
            };
        }
        if nodes > budget {
            return Exploration {
                finals,
                nodes,
                complete: false,
            };
        }
        let children: Vec<Vec<(u128, usize, Node)>> = level
            .par_iter()
            .map(|x| {
                let mut out = Vec::new();
                let k = x.g.k;
                for a in 0..k {
                    for b in a + 1..k {
                        if x.g.has_edge(a, b) {
                            continue;
                        }
                        if let Some(add) = new_lengths(&x.g, x.mask, a, b) {
                            let mut g = x.g;
                            g.add_edge(a, b);
                            let (code, canon) = canonical_form(&g);
                            out.push((code, k, Node { g: canon, mask: x.mask | add }));
                        }
                    }
                }
                if k < n {
                    for a in 0..k {
                        let mut g = x.g;
                        g.k = k + 1;
                        g.add_edge(a, k);
                        let (code, canon) = canonical_form(&g);
                        out.push((code, k + 1, Node { g: canon, mask: x.mask }));
                    }
                }
                out
            })
            .collect();
        let mut next: BTreeMap<(usize, u128), Node> = BTreeMap::new();
        for batch in children {
            nodes += batch.len() as u64;
            for (code, k, node) in batch {
                next.entry((k, code)).or_insert(node);
            }
        }
        level = next.into_values().collect();
    }
}

fn to_graph(g: &SmallGraph) -> Graph {
    Graph::from_edges(g.k, g.edges()).expect("search graphs are simple")
}

/// Outcome of an `f(n)` or `f₂(n)` search.
#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub two_connected: bool,
    pub best_edge_count: usize,
    /// `best_edge_count − n`.
    pub excess: i64,
    pub witness: Graph,
    pub spectrum: Vec<usize>,
    pub nodes_explored: u64,
    /// True only when every branch was exhausted.
    pub proven_optimal: bool,
}

fn check_order(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("search needs n >= 3, got {n}")));
    }
    if n > MAX_SEARCH_N {
        return Err(Error::OutOfRange {
            what: "search order",
            value: n as u64,
            max: MAX_SEARCH_N as u64,
        });
    }
    Ok(())
}

/// Maximum edge count of an `n`-vertex graph (2-connected if asked) with no
/// two cycles of the same length. When the budget runs out the best graph
/// seen so far is returned with `proven_optimal = false`; the cycle `C_n`
/// is always a valid fallback.
pub fn exact_f(n: usize, require_two_connected: bool, budget: u64) -> Result<SearchResult> {
    check_order(n)?;
    let ex = explore(n, budget);
    let mut best = Graph::cycle(n);
    for node in &ex.finals {
        if node.g.edge_count() <= best.edge_count() {
            continue;
        }
        let g = to_graph(&node.g);
        if !require_two_connected || is_two_connected(&g) {
            best = g;
        }
    }
    let spectrum = enumerate_cycles(&best, DEFAULT_CAP)?;
    if !spectrum.is_distinct() {
        return Err(Error::InvalidInput("search produced a repeating witness".into()));
    }
    Ok(SearchResult {
        n,
        two_connected: require_two_connected,
        best_edge_count: best.edge_count(),
        excess: best.edge_count() as i64 - n as i64,
        spectrum: spectrum.lengths,
        witness: best,
        nodes_explored: ex.nodes,
        proven_optimal: ex.complete,
    })
}

/// All `n`-vertex graphs, up to isomorphism, with exactly one cycle of each
/// length `3..=n`.
pub fn uniquely_pancyclic_search(n: usize, budget: u64) -> Result<Vec<Graph>> {
    check_order(n)?;
    let ex = explore(n, budget);
    if !ex.complete {
        return Err(Error::BudgetExceeded { budget });
    }
    let target: u32 = (3..=n).map(|l| 1u32 << l).sum();
    Ok(ex
        .finals
        .iter()
        .filter(|x| x.mask == target)
        .map(|x| to_graph(&x.g))
        .collect())
}
