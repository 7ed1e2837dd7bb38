//! Simple undirected graphs with stable vertex ids and edge-indexed bitsets.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected simple graph on vertices `0..n`.
///
/// Edges are stored once as `(min, max)` pairs in sorted order, so an edge's
/// position in [`Graph::edges`] is a stable edge id for the lifetime of the
/// graph. Adjacency lists are sorted by vertex id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "GraphJson", try_from = "GraphJson")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph, rejecting loops, duplicate edges and out-of-range ids.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({a}, {b}) has a vertex outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidInput(format!("loop at vertex {a}")));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &list {
            adj[a].push(b);
            adj[b].push(a);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            adj,
        })
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Graph::from_edges(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_id(a, b).is_some()
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).ok()
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    /// Subgraph on the same vertex set keeping only the edges in `set`.
    pub fn edge_subgraph(&self, set: &EdgeSet) -> Graph {
        Graph::from_edges(self.n, set.iter().map(|id| self.edges[id])).expect("subgraph of a simple graph")
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Graph::from_edges(self.n, self.edges.iter().map(|&(a, b)| (perm[a], perm[b])))
            .expect("permutation preserves simplicity")
    }

    /// Edge ids along a vertex walk, or `None` if two consecutive vertices
    /// are not adjacent.
    pub fn walk_edges(&self, walk: &[usize]) -> Option<Vec<usize>> {
        walk.windows(2).map(|w| self.edge_id(w[0], w[1])).collect()
    }

    /// Edge set of a closed vertex walk `c[0], ..., c[k-1], c[0]`.
    pub fn cycle_edges(&self, cycle: &[usize]) -> Option<EdgeSet> {
        let mut set = EdgeSet::new(self.edge_count());
        for t in 0..cycle.len() {
            set.insert(self.edge_id(cycle[t], cycle[(t + 1) % cycle.len()])?);
        }
        Some(set)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            let _ = writeln!(out, "  {v};");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  {a} -- {b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let parsed: GraphJson = serde_json::from_str(s)?;
        Graph::try_from(parsed)
    }

    /// Reads the undirected subset of DOT this crate writes: `a -- b` edge
    /// statements and bare vertex statements. Vertex ids must be integers.
    pub fn from_dot_str(s: &str) -> Result<Self> {
        let body = match (s.find('{'), s.rfind('}')) {
            (Some(open), Some(close)) if open < close => &s[open + 1..close],
            _ => return Err(Error::InvalidInput("DOT input has no graph body".into())),
        };
        let parse_id = |tok: &str| -> Result<usize> {
            let tok = tok.trim().trim_matches('"');
            let tok = tok.split('[').next().unwrap_or("").trim();
            tok.parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("DOT vertex id `{tok}` is not an integer")))
        };
        let mut max_id: Option<usize> = None;
        let mut edges = Vec::new();
        for stmt in body.split([';', '\n']) {
            let stmt = stmt.trim();
            if stmt.is_empty() || stmt.starts_with("//") || stmt.starts_with('#') {
                continue;
            }
            if stmt.contains("->") {
                return Err(Error::InvalidInput("directed DOT edges are not supported".into()));
            }
            let ids = stmt
                .split("--")
                .map(parse_id)
                .collect::<Result<Vec<_>>>()?;
            for &v in &ids {
                max_id = Some(max_id.map_or(v, |m| m.max(v)));
            }
            edges.extend(ids.windows(2).map(|w| (w[0], w[1])));
        }
        Graph::from_edges(max_id.map_or(0, |m| m + 1), edges)
    }
}

/// Wire format: `{"n": 4, "edges": [[0,1],[1,2],...]}` with 0-based ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        g.to_json()
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(value: GraphJson) -> Result<Self> {
        Graph::from_edges(value.n, value.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

/// Fixed-capacity bitset over the edge ids of one graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet {
    words: Vec<u64>,
}

impl EdgeSet {
    pub fn new(capacity: usize) -> Self {
        EdgeSet {
            words: vec![0; capacity.div_ceil(64)],
        }
    }

    pub fn from_ids(capacity: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut set = EdgeSet::new(capacity);
        for id in ids {
            set.insert(id);
        }
        set
    }

    pub fn insert(&mut self, id: usize) {
        self.words[id / 64] |= 1 << (id % 64);
    }

    pub fn remove(&mut self, id: usize) {
        self.words[id / 64] &= !(1 << (id % 64));
    }

    pub fn contains(&self, id: usize) -> bool {
        self.words[id / 64] >> (id % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        self.zip(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &EdgeSet) -> EdgeSet {
        self.zip(other, |a, b| a ^ b)
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &EdgeSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }

    fn zip(&self, other: &EdgeSet, op: impl Fn(u64, u64) -> u64) -> EdgeSet {
        debug_assert_eq!(self.words.len(), other.words.len());
        EdgeSet {
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn edge_ids_are_sorted_positions() {
        let g = Graph::from_edges(4, [(2, 3), (1, 0), (0, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (2, 3)]);
        assert_eq!(g.edge_id(3, 2), Some(2));
        assert_eq!(g.edge_id(1, 3), None);
        assert_eq!(g.neighbors(0), &[1, 2]);
    }

    #[test]
    fn dot_import_reads_export() {
        let g = Graph::complete(4);
        assert_eq!(Graph::from_dot_str(&g.to_dot()).unwrap(), g);
        let chain = Graph::from_dot_str("graph { 0 -- 1 -- 2; 2 -- 0 }").unwrap();
        assert_eq!(chain, Graph::cycle(3));
        assert!(Graph::from_dot_str("digraph { 0 -> 1 }").is_err());
    }

    #[test]
    fn edge_set_ops() {
        let a = EdgeSet::from_ids(130, [0, 5, 64, 129]);
        let b = EdgeSet::from_ids(130, [5, 64, 100]);
        assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), vec![5, 64]);
        assert_eq!(a.symmetric_difference(&b).iter().collect::<Vec<_>>(), vec![0, 100, 129]);
        assert_eq!(a.union(&b).len(), 5);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!a.is_subset(&b));
    }
}
