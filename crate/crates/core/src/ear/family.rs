use std::collections::HashMap;

use serde::Serialize;

use super::decompose::EarDecomposition;
use crate::graph::{EdgeSet, Graph};

/// One `(u, v)`-path `f_i = uLl_i + P_i + r_iRv`.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyPath {
    pub vertices: Vec<usize>,
    /// Position of `l_i` in `vertices` (0 for `f_0`).
    pub left_at: usize,
    /// Position of `r_i` in `vertices` (last for `f_0`).
    pub right_at: usize,
    #[serde(skip)]
    pub edges: EdgeSet,
    #[serde(skip)]
    pos: Vec<usize>,
}

impl FamilyPath {
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() < 2
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        match self.pos[x] {
            usize::MAX => None,
            p => Some(p),
        }
    }

    pub fn contains_vertex(&self, x: usize) -> bool {
        self.pos[x] != usize::MAX
    }

    /// Vertices from position `from` to `to` inclusive.
    pub fn segment(&self, from: usize, to: usize) -> &[usize] {
        &self.vertices[from..=to]
    }
}

/// The trees `L` and `R` and the family `f_0..f_s` of a decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct PathFamily {
    #[serde(flatten)]
    decomposition: EarDecomposition,
    /// Parent of each vertex in `L` (rooted at `u`).
    l_parent: Vec<Option<usize>>,
    /// Parent of each vertex in `R` (rooted at `v`).
    r_parent: Vec<Option<usize>>,
    paths: Vec<FamilyPath>,
    #[serde(skip)]
    ear_edges: Vec<EdgeSet>,
    #[serde(skip)]
    by_vertices: HashMap<Vec<usize>, usize>,
}

/// Builds `L`, `R` and every `f_i`.
pub fn build_family(d: EarDecomposition) -> PathFamily {
    let g = d.graph();
    let n = g.n();
    let mut l_parent = vec![None; n];
    let mut r_parent = vec![None; n];
    let p0 = d.ear(0);
    for t in 1..p0.len() {
        l_parent[p0[t]] = Some(p0[t - 1]);
        r_parent[p0[t - 1]] = Some(p0[t]);
    }
    for ear in &d.ears()[1..] {
        let b = ear.len() - 1;
        for t in 1..b {
            l_parent[ear[t]] = Some(ear[t - 1]);
            r_parent[ear[t]] = Some(ear[t + 1]);
        }
    }

    let root_path = |parent: &[Option<usize>], mut x: usize| {
        let mut walk = vec![x];
        while let Some(p) = parent[x] {
            walk.push(p);
            x = p;
        }
        walk
    };

    let mut paths = Vec::with_capacity(d.ears().len());
    for (i, ear) in d.ears().iter().enumerate() {
        let (vertices, left_at, right_at) = if i == 0 {
            (ear.clone(), 0, ear.len() - 1)
        } else {
            let mut vertices = root_path(&l_parent, ear[0]);
            vertices.reverse();
            let left_at = vertices.len() - 1;
            vertices.extend_from_slice(&ear[1..]);
            let right_at = vertices.len() - 1;
            vertices.extend(root_path(&r_parent, *ear.last().unwrap()).into_iter().skip(1));
            (vertices, left_at, right_at)
        };
        paths.push(make_path(g, vertices, left_at, right_at));
    }
    let ear_edges = (0..paths.len()).map(|i| d.ear_edges(i)).collect();
    let by_vertices = paths
        .iter()
        .enumerate()
        .map(|(i, p)| (p.vertices.clone(), i))
        .collect();
    PathFamily {
        decomposition: d,
        l_parent,
        r_parent,
        paths,
        ear_edges,
        by_vertices,
    }
}

fn make_path(g: &Graph, vertices: Vec<usize>, left_at: usize, right_at: usize) -> FamilyPath {
    let mut pos = vec![usize::MAX; g.n()];
    for (p, &x) in vertices.iter().enumerate() {
        pos[x] = p;
    }
    let ids = g.walk_edges(&vertices).expect("family paths are walks in G");
    FamilyPath {
        edges: EdgeSet::from_ids(g.edge_count(), ids),
        vertices,
        left_at,
        right_at,
        pos,
    }
}

impl PathFamily {
    pub fn decomposition(&self) -> &EarDecomposition {
        &self.decomposition
    }

    pub fn graph(&self) -> &Graph {
        self.decomposition.graph()
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn path(&self, i: usize) -> &FamilyPath {
        &self.paths[i]
    }

    pub fn paths(&self) -> &[FamilyPath] {
        &self.paths
    }

    /// Edges of the ear `P_i`.
    pub fn ear_edges(&self, i: usize) -> &EdgeSet {
        &self.ear_edges[i]
    }

    pub fn l_parent(&self, x: usize) -> Option<usize> {
        self.l_parent[x]
    }

    pub fn r_parent(&self, x: usize) -> Option<usize> {
        self.r_parent[x]
    }

    /// Index of the family path with exactly this vertex sequence.
    pub fn find(&self, vertices: &[usize]) -> Option<usize> {
        self.by_vertices.get(vertices).copied()
    }

    pub fn rank(&self, x: usize) -> usize {
        self.decomposition.rank(x)
    }

    /// Edges of `L` as `(parent, child)` pairs.
    pub fn l_edges(&self) -> EdgeSet {
        self.tree_edges(&self.l_parent)
    }

    pub fn r_edges(&self) -> EdgeSet {
        self.tree_edges(&self.r_parent)
    }

    fn tree_edges(&self, parent: &[Option<usize>]) -> EdgeSet {
        let g = self.graph();
        let mut set = EdgeSet::new(g.edge_count());
        for (x, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                set.insert(g.edge_id(x, p).unwrap());
            }
        }
        set
    }

    /// `L_i`: edges of `uLl_i`.
    pub fn l_part(&self, i: usize) -> EdgeSet {
        let p = &self.paths[i];
        self.edges_between(p, 0, if i == 0 { 0 } else { p.left_at })
    }

    /// `R_i`: edges of `r_iRv`.
    pub fn r_part(&self, i: usize) -> EdgeSet {
        let p = &self.paths[i];
        let last = p.vertices.len() - 1;
        self.edges_between(p, if i == 0 { last } else { p.right_at }, last)
    }

    /// Edges of `f_i` lying in the tree `L` on the `u` side: `L_i` plus `P_i`
    /// without its last edge (all of `P_0` for `f_0`).
    pub fn l_portion(&self, i: usize) -> EdgeSet {
        let p = &self.paths[i];
        let end = if i == 0 { p.vertices.len() - 1 } else { p.right_at - 1 };
        self.edges_between(p, 0, end)
    }

    /// Edges of `f_i` lying in `R` on the `v` side: `P_i` without its first
    /// edge plus `R_i` (all of `P_0` for `f_0`).
    pub fn r_portion(&self, i: usize) -> EdgeSet {
        let p = &self.paths[i];
        let last = p.vertices.len() - 1;
        let start = if i == 0 { 0 } else { p.left_at + 1 };
        self.edges_between(p, start, last)
    }

    /// Edge set of the subpath of `p` between two positions.
    pub fn edges_between(&self, p: &FamilyPath, from: usize, to: usize) -> EdgeSet {
        let g = self.graph();
        let mut set = EdgeSet::new(g.edge_count());
        if from < to {
            for id in g.walk_edges(&p.vertices[from..=to]).unwrap() {
                set.insert(id);
            }
        }
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ear::ear_decompose;

    #[test]
    fn single_cycle_family() {
        let d = ear_decompose(&Graph::cycle(5), (0, 1)).unwrap();
        let fam = build_family(d);
        assert_eq!(fam.len(), 1);
        assert_eq!(fam.path(0).vertices, vec![0, 4, 3, 2, 1]);
    }

    #[test]
    fn k4_paths() {
        let fam = build_family(ear_decompose(&Graph::complete(4), (0, 1)).unwrap());
        // P_1 = 0 3 2, P_2 = 3 1
        assert_eq!(fam.path(1).vertices, vec![0, 3, 2, 1]);
        assert_eq!(fam.path(2).vertices, vec![0, 3, 1]);
        assert_eq!(fam.find(&[0, 3, 1]), Some(2));
        assert_eq!(fam.l_parent(3), Some(0));
        assert_eq!(fam.r_parent(3), Some(2));
        assert_eq!(fam.l_edges().len(), 3);
        assert_eq!(fam.r_edges().len(), 3);
    }
}
