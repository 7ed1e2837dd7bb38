use std::collections::VecDeque;

use serde::Serialize;

use crate::cycles::is_two_connected;
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};

/// Ear decomposition rooted at a fixed edge `uv`, with the vertex order it
/// induces.
///
/// `ears[0]` is the path `P_0 = u x_1 ... x_a v` closing the initial cycle
/// with `uv`. For `i >= 1`, `ears[i]` runs from its left endpoint `l_i` to
/// its right endpoint `r_i`, and `l_i` precedes `r_i`. Ears are chosen with
/// the smallest left endpoint, then the smallest right endpoint, then the
/// lexicographically least inner-vertex ids. Inner vertices of `P_i` are
/// inserted into the order directly after `l_i`.
#[derive(Debug, Clone, Serialize)]
pub struct EarDecomposition {
    #[serde(skip)]
    graph: Graph,
    u: usize,
    v: usize,
    ears: Vec<Vec<usize>>,
    /// Vertices from first to last in the order.
    order: Vec<usize>,
    #[serde(skip)]
    rank: Vec<usize>,
    /// Index of the ear that introduced each vertex (the minimum `i` with
    /// the vertex on `P_i`).
    #[serde(skip)]
    intro: Vec<usize>,
}

impl EarDecomposition {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root_edge(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn ears(&self) -> &[Vec<usize>] {
        &self.ears
    }

    pub fn ear(&self, i: usize) -> &[usize] {
        &self.ears[i]
    }

    /// `s = e(G) - n`, the number of ears after `P_0`.
    pub fn s(&self) -> usize {
        self.ears.len() - 1
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn precedes(&self, x: usize, y: usize) -> bool {
        self.rank[x] < self.rank[y]
    }

    pub fn intro(&self, x: usize) -> usize {
        self.intro[x]
    }

    pub fn left(&self, i: usize) -> usize {
        self.ears[i][0]
    }

    pub fn right(&self, i: usize) -> usize {
        *self.ears[i].last().unwrap()
    }

    /// Edges of `P_i`.
    pub fn ear_edges(&self, i: usize) -> EdgeSet {
        let ids = self.graph.walk_edges(&self.ears[i]).expect("ears are walks");
        EdgeSet::from_ids(self.graph.edge_count(), ids)
    }
}

/// Decomposes a 2-connected graph starting from the edge `(u, v)`. The
/// initial cycle is the shortest cycle through `uv`, ties broken by the
/// lexicographically least vertex sequence from `u` to `v`.
pub fn ear_decompose(g: &Graph, (u, v): (usize, usize)) -> Result<EarDecomposition> {
    if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
        return Err(Error::MissingEdge(u, v));
    }
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    let n = g.n();
    let root = g.edge_id(u, v).unwrap();

    let p0 = least_shortest_path(g, u, v, root).ok_or(Error::NotTwoConnected)?;
    let mut in_tree = vec![false; n];
    let mut used = EdgeSet::new(g.edge_count());
    used.insert(root);
    for &x in &p0 {
        in_tree[x] = true;
    }
    for id in g.walk_edges(&p0).unwrap() {
        used.insert(id);
    }
    let mut order = p0.clone();
    let mut intro = vec![usize::MAX; n];
    for &x in &p0 {
        intro[x] = 0;
    }
    let mut ears = vec![p0];

    while used.len() < g.edge_count() {
        let mut rank = vec![usize::MAX; n];
        for (r, &x) in order.iter().enumerate() {
            rank[x] = r;
        }
        let ear = next_ear(g, &order, &rank, &in_tree, &used).ok_or(Error::NotTwoConnected)?;
        let index = ears.len();
        let left = ear[0];
        let inner = &ear[1..ear.len() - 1];
        let at = rank[left] + 1;
        order.splice(at..at, inner.iter().copied());
        for &x in inner {
            in_tree[x] = true;
            intro[x] = index;
        }
        for id in g.walk_edges(&ear).unwrap() {
            used.insert(id);
        }
        ears.push(ear);
    }

    let mut rank = vec![usize::MAX; n];
    for (r, &x) in order.iter().enumerate() {
        rank[x] = r;
    }
    Ok(EarDecomposition {
        graph: g.clone(),
        u,
        v,
        ears,
        order,
        rank,
        intro,
    })
}

/// Lexicographically least among shortest `u`-`v` paths avoiding edge
/// `skip`.
fn least_shortest_path(g: &Graph, u: usize, v: usize, skip: usize) -> Option<Vec<usize>> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[v] = 0;
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if dist[y] == usize::MAX && g.edge_id(x, y) != Some(skip) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    if dist[u] == usize::MAX {
        return None;
    }
    let mut path = vec![u];
    let mut cur = u;
    while cur != v {
        cur = *g
            .neighbors(cur)
            .iter()
            .find(|&&y| dist[y] + 1 == dist[cur] && g.edge_id(cur, y) != Some(skip))?;
        path.push(cur);
    }
    Some(path)
}

/// The next ear: minimal left endpoint, then minimal right endpoint, then
/// lexicographically least inner vertices.
fn next_ear(g: &Graph, order: &[usize], rank: &[usize], in_tree: &[bool], used: &EdgeSet) -> Option<Vec<usize>> {
    for &left in order {
        let mut best_right: Option<usize> = None;
        let mut consider = |r: usize| {
            if best_right.is_none_or(|b| rank[r] < rank[b]) {
                best_right = Some(r);
            }
        };
        let mut outside_start = Vec::new();
        for &w in g.neighbors(left) {
            if in_tree[w] {
                if !used.contains(g.edge_id(left, w).unwrap()) {
                    consider(w);
                }
            } else {
                outside_start.push(w);
            }
        }
        if !outside_start.is_empty() {
            for r in attachments(g, in_tree, &outside_start, &[]) {
                if r != left {
                    consider(r);
                }
            }
        }
        let Some(right) = best_right else { continue };
        if g.has_edge(left, right) && !used.contains(g.edge_id(left, right).unwrap()) {
            return Some(vec![left, right]);
        }
        return Some(least_ear_through_outside(g, in_tree, left, right));
    }
    None
}

/// Tree vertices adjacent to the part of the outside reachable from
/// `starts` without entering `blocked`.
fn attachments(g: &Graph, in_tree: &[bool], starts: &[usize], blocked: &[usize]) -> Vec<usize> {
    let n = g.n();
    let mut seen = vec![false; n];
    for &b in blocked {
        seen[b] = true;
    }
    let mut stack: Vec<usize> = Vec::new();
    for &s in starts {
        if !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    let mut hits = vec![false; n];
    while let Some(x) = stack.pop() {
        for &y in g.neighbors(x) {
            if in_tree[y] {
                hits[y] = true;
            } else if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    (0..n).filter(|&y| hits[y]).collect()
}

/// Greedy construction of the lexicographically least inner sequence of an
/// ear from `left` to `right` through vertices outside the current graph:
/// stop as soon as the last inner vertex sees `right`, otherwise extend by
/// the smallest neighbour from which `right` is still reachable.
fn least_ear_through_outside(g: &Graph, in_tree: &[bool], left: usize, right: usize) -> Vec<usize> {
    let mut path = vec![left];
    let mut placed: Vec<usize> = Vec::new();
    let mut cur = left;
    loop {
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .filter(|&z| !in_tree[z] && !placed.contains(&z))
            .find(|&z| {
                let mut blocked = placed.clone();
                blocked.push(z);
                g.neighbors(z).contains(&right) || {
                    let onward: Vec<usize> = g
                        .neighbors(z)
                        .iter()
                        .copied()
                        .filter(|&y| !in_tree[y] && !blocked.contains(&y))
                        .collect();
                    attachments(g, in_tree, &onward, &blocked).contains(&right)
                }
            })
            .expect("right endpoint was found reachable");
        path.push(next);
        placed.push(next);
        if g.neighbors(next).contains(&right) {
            path.push(right);
            return path;
        }
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let d = ear_decompose(&Graph::cycle(3), (0, 1)).unwrap();
        assert_eq!(d.s(), 0);
        assert_eq!(d.ears(), &[vec![0, 2, 1]]);
        assert_eq!(d.order(), &[0, 2, 1]);
    }

    #[test]
    fn k4_has_two_later_ears() {
        let g = Graph::complete(4);
        let d = ear_decompose(&g, (0, 1)).unwrap();
        assert_eq!(d.s(), g.edge_count() - g.n());
        assert_eq!(d.ears()[0], vec![0, 2, 1]);
        // Left endpoint 0 first; the smallest right endpoint reachable is 2
        // through vertex 3.
        assert_eq!(d.ears()[1], vec![0, 3, 2]);
        assert_eq!(d.ears()[2], vec![3, 1]);
        assert_eq!(d.order(), &[0, 3, 2, 1]);
    }

    #[test]
    fn errors() {
        assert!(matches!(ear_decompose(&Graph::path(4), (0, 1)), Err(Error::NotTwoConnected)));
        assert!(matches!(ear_decompose(&Graph::cycle(4), (0, 2)), Err(Error::MissingEdge(0, 2))));
    }
}
