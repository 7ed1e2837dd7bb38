//! Hamilton cycle plus chords at Sidon positions.
//!
//! Vertices are `v_0..v_{n-1}` on the cycle `v_0 v_1 ... v_{n-1} v_0`. For
//! chord positions `1 = a_1 < a_2 < ... < a_k = n - 1` the graph adds the
//! chords `v_0 v_{a_i}` for `1 < i < k`. Every cycle uses two edges at
//! `v_0`, so the cycle lengths are exactly `a_j - a_i + 2`, and distinct
//! differences give distinct lengths.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sidon::{prime_power, singer_difference_set, MAX_FIELD_ORDER};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordedCycleGraph {
    n: usize,
    chord_positions: Vec<usize>,
    graph: Graph,
}

/// One line of the spectrum certificate: the cycle through chords at
/// positions `a_i` and `a_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordCycle {
    pub length: usize,
    pub low: usize,
    pub high: usize,
}

impl ChordedCycleGraph {
    /// Validates the normalisation `a_1 = 1`, `a_k = n - 1`, strictly
    /// increasing positions.
    pub fn new(n: usize, chord_positions: Vec<usize>) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!("need at least 3 vertices, got {n}")));
        }
        if chord_positions.len() < 2
            || chord_positions[0] != 1
            || *chord_positions.last().unwrap() != n - 1
            || chord_positions.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::InvalidInput(format!(
                "chord positions must increase from 1 to {}: {chord_positions:?}",
                n - 1
            )));
        }
        let cycle = (0..n).map(|i| (i, (i + 1) % n));
        let k = chord_positions.len();
        let chords = chord_positions[1..k - 1].iter().map(|&a| (0, a));
        let graph = Graph::from_edges(n, cycle.chain(chords))?;
        Ok(ChordedCycleGraph {
            n,
            chord_positions,
            graph,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chord_positions(&self) -> &[usize] {
        &self.chord_positions
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn has_distinct_differences(&self) -> bool {
        distinct_differences(&self.chord_positions)
    }

    /// Cycles indexed by their chord pair, sorted by length.
    pub fn chord_cycles(&self) -> Vec<ChordCycle> {
        let a = &self.chord_positions;
        let mut out: Vec<ChordCycle> = (0..a.len())
            .flat_map(|j| {
                (0..j).map(move |i| ChordCycle {
                    length: a[j] - a[i] + 2,
                    low: a[i],
                    high: a[j],
                })
            })
            .collect();
        out.sort_by_key(|c| (c.length, c.low));
        out
    }
}

fn distinct_differences(a: &[usize]) -> bool {
    let mut seen = std::collections::HashSet::new();
    (0..a.len()).all(|j| (0..j).all(|i| seen.insert(a[j] - a[i])))
}

/// `{ a_j - a_i + 2 : i < j }` as a sorted multiset.
pub fn cycle_lengths_closed_form(g: &ChordedCycleGraph) -> Vec<usize> {
    let mut lengths: Vec<usize> = g.chord_cycles().into_iter().map(|c| c.length).collect();
    lengths.sort_unstable();
    lengths
}

/// Chord positions from the Singer set for `q`, rotated so the unique pair
/// with difference `-1 (mod v)` lands on `{v - 1, 0}`, then shifted by one.
pub fn bcfy_positions(q: u64) -> Result<Vec<usize>> {
    let d = singer_difference_set(q)?;
    let v = d.v;
    let mut pair = None;
    'search: for &x in &d.elements {
        for &y in &d.elements {
            if (x + 1) % v == y {
                pair = Some((x, y));
                break 'search;
            }
        }
    }
    let (_, y) = pair.expect("a perfect difference set realises every nonzero difference");
    let mut positions: Vec<usize> = d
        .elements
        .iter()
        .map(|&x| ((x + v - y) % v + 1) as usize)
        .collect();
    positions.sort_unstable();
    Ok(positions)
}

/// The extremal graph on `q^2 + q + 2` vertices with `q + 1` chord positions.
pub fn bcfy_construct(q: u64) -> Result<ChordedCycleGraph> {
    let positions = bcfy_positions(q)?;
    let n = (q * q + q + 2) as usize;
    ChordedCycleGraph::new(n, positions)
}

/// Fits the construction to an arbitrary order `n >= 8`: build it for the
/// largest prime power `q` with `q^2 + q + 2 <= n`, then lengthen the last arc
/// so the top position becomes `n - 1`. Stretching can only collide the
/// differences that involve the top position; if it does, the largest
/// interior chord is dropped until the differences are distinct again.
pub fn bcfy_for_order(n: usize) -> Result<ChordedCycleGraph> {
    if n < 8 {
        return Err(Error::TooSmall(n));
    }
    let q = (2..=MAX_FIELD_ORDER)
        .filter(|&q| prime_power(q).is_some() && (q * q + q + 2) as usize <= n)
        .max()
        .expect("q = 2 fits every n >= 8");
    let mut positions = bcfy_positions(q)?;
    *positions.last_mut().unwrap() = n - 1;
    while !distinct_differences(&positions) {
        let k = positions.len();
        positions.remove(k - 2);
    }
    ChordedCycleGraph::new(n, positions)
}
