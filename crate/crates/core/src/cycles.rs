//! Exact simple-cycle enumeration and cycle-length spectra.
//!
//! Enumeration runs Johnson's circuit-finding algorithm on the symmetric
//! digraph of the input. Roots are taken in increasing vertex order and each
//! root only explores vertices above it, so every undirected cycle is found
//! exactly twice (once per direction). The direction whose second vertex is
//! smaller than its last is kept; the 2-circuits `s -> x -> s` produced by
//! single edges are dropped.

use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_CAP: u64 = 10_000_000;

/// Calls `visit` with the vertex sequence of every simple cycle of `g`, each
/// cycle once, starting from its smallest vertex. The visitor may stop the
/// walk early; the return value tells whether the walk ran to completion.
pub fn visit_cycles<F>(g: &Graph, mut visit: F) -> bool
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = g.n();
    let mut state = Johnson {
        g,
        root: 0,
        blocked: vec![false; n],
        blist: vec![Vec::new(); n],
        stack: Vec::with_capacity(n),
    };
    for root in 0..n {
        if g.neighbors(root).iter().filter(|&&w| w > root).count() < 2 {
            continue;
        }
        state.root = root;
        for v in root..n {
            state.blocked[v] = false;
            state.blist[v].clear();
        }
        let mut stop = false;
        state.circuit(root, &mut visit, &mut stop);
        if stop {
            return false;
        }
    }
    true
}

struct Johnson<'g> {
    g: &'g Graph,
    root: usize,
    blocked: Vec<bool>,
    blist: Vec<Vec<usize>>,
    stack: Vec<usize>,
}

impl Johnson<'_> {
    fn circuit<F>(&mut self, v: usize, visit: &mut F, stop: &mut bool) -> bool
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let mut found = false;
        self.stack.push(v);
        self.blocked[v] = true;
        let g = self.g;
        for &w in g.neighbors(v) {
            if *stop {
                break;
            }
            if w < self.root {
                continue;
            }
            if w == self.root {
                found = true;
                let len = self.stack.len();
                if len >= 3 && self.stack[1] < self.stack[len - 1] && visit(&self.stack).is_break() {
                    *stop = true;
                }
            } else if !self.blocked[w] && self.circuit(w, visit, stop) {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for &w in g.neighbors(v) {
                if w >= self.root && !self.blist[w].contains(&v) {
                    self.blist[w].push(v);
                }
            }
        }
        self.stack.pop();
        found
    }

    fn unblock(&mut self, v: usize) {
        let mut pending = vec![v];
        while let Some(x) = pending.pop() {
            if !self.blocked[x] {
                continue;
            }
            self.blocked[x] = false;
            pending.append(&mut self.blist[x]);
        }
    }
}

/// Multiset of cycle lengths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSpectrum {
    /// Every cycle length, sorted, with repetition.
    pub lengths: Vec<usize>,
    pub cycle_count: u64,
    /// Lengths that occur at least twice.
    pub repeated: Vec<usize>,
    /// False when enumeration stopped at the cap.
    pub authoritative: bool,
}

impl CycleSpectrum {
    fn from_counts(counts: &BTreeMap<usize, u64>, authoritative: bool) -> Self {
        let mut lengths = Vec::new();
        let mut repeated = Vec::new();
        for (&len, &mult) in counts {
            lengths.extend(std::iter::repeat_n(len, mult as usize));
            if mult >= 2 {
                repeated.push(len);
            }
        }
        CycleSpectrum {
            cycle_count: counts.values().sum(),
            lengths,
            repeated,
            authoritative,
        }
    }

    pub fn multiplicities(&self) -> BTreeMap<usize, u64> {
        let mut counts = BTreeMap::new();
        for &len in &self.lengths {
            *counts.entry(len).or_insert(0) += 1;
        }
        counts
    }

    pub fn is_distinct(&self) -> bool {
        self.repeated.is_empty()
    }
}

/// Full cycle spectrum of `g`, visiting at most `cap` cycles.
pub fn enumerate_cycles(g: &Graph, cap: u64) -> Result<CycleSpectrum> {
    let mut counts = BTreeMap::new();
    let mut seen = 0u64;
    let complete = visit_cycles(g, |cycle| {
        if seen == cap {
            return ControlFlow::Break(());
        }
        seen += 1;
        *counts.entry(cycle.len()).or_insert(0u64) += 1;
        ControlFlow::Continue(())
    });
    if complete {
        Ok(CycleSpectrum::from_counts(&counts, true))
    } else {
        Err(Error::CapExceeded {
            cap,
            partial: Box::new(CycleSpectrum::from_counts(&counts, false)),
        })
    }
}

/// All cycles of `g` as vertex sequences, in enumeration order.
pub fn list_cycles(g: &Graph, cap: u64) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut counts = BTreeMap::new();
    let complete = visit_cycles(g, |cycle| {
        if out.len() as u64 == cap {
            return ControlFlow::Break(());
        }
        *counts.entry(cycle.len()).or_insert(0u64) += 1;
        out.push(cycle.to_vec());
        ControlFlow::Continue(())
    });
    if complete {
        Ok(out)
    } else {
        Err(Error::CapExceeded {
            cap,
            partial: Box::new(CycleSpectrum::from_counts(&counts, false)),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum RepeatReport {
    /// Two distinct cycles of the same length, as vertex sequences.
    Repeated {
        length: usize,
        first: Vec<usize>,
        second: Vec<usize>,
    },
    /// Every cycle length occurs once; the spectrum is the certificate.
    Distinct { spectrum: CycleSpectrum },
}

impl RepeatReport {
    pub fn has_repeat(&self) -> bool {
        matches!(self, RepeatReport::Repeated { .. })
    }
}

/// Stops at the first repeated length.
pub fn has_repeated_length(g: &Graph, cap: u64) -> Result<RepeatReport> {
    let mut first_of: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut counts = BTreeMap::new();
    let mut seen = 0u64;
    let mut witness = None;
    let mut capped = false;
    visit_cycles(g, |cycle| {
        if seen == cap {
            capped = true;
            return ControlFlow::Break(());
        }
        seen += 1;
        *counts.entry(cycle.len()).or_insert(0u64) += 1;
        if let Some(prev) = first_of.get(&cycle.len()) {
            witness = Some((cycle.len(), prev.clone(), cycle.to_vec()));
            return ControlFlow::Break(());
        }
        first_of.insert(cycle.len(), cycle.to_vec());
        ControlFlow::Continue(())
    });
    if let Some((length, first, second)) = witness {
        return Ok(RepeatReport::Repeated {
            length,
            first,
            second,
        });
    }
    if capped {
        return Err(Error::CapExceeded {
            cap,
            partial: Box::new(CycleSpectrum::from_counts(&counts, false)),
        });
    }
    Ok(RepeatReport::Distinct {
        spectrum: CycleSpectrum::from_counts(&counts, true),
    })
}

pub fn is_connected(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == g.n()
}

/// Articulation points by DFS low-points, in increasing order.
pub fn articulation_points(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0;
    for start in 0..n {
        if disc[start] != usize::MAX {
            continue;
        }
        disc[start] = timer;
        low[start] = timer;
        timer += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbour index)
        let mut stack = vec![(start, usize::MAX, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, parent, idx) = *top;
            if idx < g.degree(v) {
                top.2 += 1;
                let w = g.neighbors(v)[idx];
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == start {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if parent != start && low[v] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children >= 2 {
            is_cut[start] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}

/// Connected, at least three vertices, no cut vertex.
pub fn is_two_connected(g: &Graph) -> bool {
    g.n() >= 3 && is_connected(g) && articulation_points(g).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_has_one_cycle() {
        let s = enumerate_cycles(&Graph::cycle(3), DEFAULT_CAP).unwrap();
        assert_eq!(s.lengths, vec![3]);
        assert_eq!(s.cycle_count, 1);
        assert!(s.is_distinct());
    }

    #[test]
    fn k4_spectrum() {
        let s = enumerate_cycles(&Graph::complete(4), DEFAULT_CAP).unwrap();
        assert_eq!(s.lengths, vec![3, 3, 3, 3, 4, 4, 4]);
        assert_eq!(s.cycle_count, 7);
        assert_eq!(s.repeated, vec![3, 4]);
    }

    #[test]
    fn cap_is_enforced() {
        match enumerate_cycles(&Graph::complete(5), 5) {
            Err(Error::CapExceeded { cap, partial }) => {
                assert_eq!(cap, 5);
                assert_eq!(partial.cycle_count, 5);
                assert!(!partial.authoritative);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
        // K5 has exactly 37 cycles; a cap equal to the count is not exceeded.
        assert_eq!(enumerate_cycles(&Graph::complete(5), 37).unwrap().cycle_count, 37);
    }

    #[test]
    fn chorded_pentagon_is_repeat_free() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        match has_repeated_length(&g, DEFAULT_CAP).unwrap() {
            RepeatReport::Distinct { spectrum } => assert_eq!(spectrum.lengths, vec![3, 4, 5]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn k4_repeat_witness_is_two_triangles() {
        match has_repeated_length(&Graph::complete(4), DEFAULT_CAP).unwrap() {
            RepeatReport::Repeated {
                length,
                first,
                second,
            } => {
                assert_eq!(length, 3);
                assert_ne!(first, second);
                assert_eq!(first.len(), 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tree_has_empty_spectrum() {
        match has_repeated_length(&Graph::path(6), DEFAULT_CAP).unwrap() {
            RepeatReport::Distinct { spectrum } => {
                assert!(spectrum.lengths.is_empty());
                assert_eq!(spectrum.cycle_count, 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn two_connectivity() {
        assert!(is_two_connected(&Graph::cycle(4)));
        assert!(!is_two_connected(&Graph::path(4)));
        assert!(is_two_connected(&Graph::complete(4)));
        // Two triangles sharing vertex 2.
        let bowtie = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(articulation_points(&bowtie), vec![2]);
        assert!(!is_two_connected(&bowtie));
        assert!(!is_two_connected(&Graph::from_edges(4, [(0, 1), (1, 2), (2, 0)]).unwrap()));
    }
}
