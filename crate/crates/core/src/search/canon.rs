//! Exact canonical labelling of graphs on at most 16 vertices by
//! individualisation and refinement, pruned with automorphisms found along
//! the way.

/// Largest order the canonical form supports.
pub const MAX_CANON_N: usize = 16;

/// A graph on `k ≤ 16` vertices stored as adjacency bit rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallGraph {
    pub k: usize,
    pub adj: [u16; MAX_CANON_N],
}

impl SmallGraph {
    pub fn new(k: usize) -> Self {
        assert!(k <= MAX_CANON_N);
        SmallGraph {
            k,
            adj: [0; MAX_CANON_N],
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.k].iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.k {
            for b in a + 1..self.k {
                if self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn relabel(&self, lab: &[usize]) -> SmallGraph {
        let mut g = SmallGraph::new(self.k);
        for (a, b) in self.edges() {
            g.add_edge(lab[a], lab[b]);
        }
        g
    }

    /// Upper triangle read row by row, most significant bit first.
    fn code(&self, lab: &[usize]) -> u128 {
        let mut inv = [0usize; MAX_CANON_N];
        for v in 0..self.k {
            inv[lab[v]] = v;
        }
        let mut code = 0u128;
        for i in 0..self.k {
            for j in i + 1..self.k {
                code = code << 1 | self.has_edge(inv[i], inv[j]) as u128;
            }
        }
        code
    }
}

type Partition = Vec<Vec<usize>>;

/// Splits cells by neighbour counts into every other cell until stable.
/// Fragments are ordered by count, so the result commutes with relabelling.
fn refine(g: &SmallGraph, mut p: Partition) -> Partition {
    loop {
        let mut changed = false;
        let mut w = 0;
        while w < p.len() {
            let splitter: u16 = p[w].iter().fold(0, |m, &v| m | 1 << v);
            let mut next = Vec::with_capacity(p.len());
            for cell in &p {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> =
                    cell.iter().map(|&v| ((g.adj[v] & splitter).count_ones(), v)).collect();
                keyed.sort_unstable();
                let mut start = 0;
                for t in 1..=keyed.len() {
                    if t == keyed.len() || keyed[t].0 != keyed[start].0 {
                        next.push(keyed[start..t].iter().map(|&(_, v)| v).collect());
                        start = t;
                    }
                }
            }
            if next.len() != p.len() {
                changed = true;
            }
            p = next;
            w += 1;
        }
        if !changed {
            return p;
        }
    }
}

fn individualise(p: &Partition, cell: usize, v: usize) -> Partition {
    let mut out = Vec::with_capacity(p.len() + 1);
    for (i, c) in p.iter().enumerate() {
        if i == cell {
            out.push(vec![v]);
            out.push(c.iter().copied().filter(|&x| x != v).collect());
        } else {
            out.push(c.clone());
        }
    }
    out
}

struct Search<'a> {
    g: &'a SmallGraph,
    best: Option<(u128, Vec<usize>)>,
    /// Automorphisms found so far, as vertex maps.
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn leaf_labels(p: &Partition, k: usize) -> Vec<usize> {
        let mut lab = vec![0; k];
        for (i, c) in p.iter().enumerate() {
            lab[c[0]] = i;
        }
        lab
    }

    fn visit(&mut self, p: Partition, fixed: &mut Vec<usize>) {
        let Some(cell) = p.iter().position(|c| c.len() > 1) else {
            let lab = Self::leaf_labels(&p, self.g.k);
            let code = self.g.code(&lab);
            match &self.best {
                Some((b, blab)) if *b == code => {
                    // Two leaves with the same code differ by an automorphism.
                    let mut inv = vec![0; self.g.k];
                    for (v, &l) in lab.iter().enumerate() {
                        inv[l] = v;
                    }
                    let auto: Vec<usize> = blab.iter().map(|&l| inv[l]).collect();
                    if auto.iter().enumerate().any(|(v, &w)| v != w) {
                        self.autos.push(auto);
                    }
                }
                Some((b, _)) if *b > code => {}
                _ => self.best = Some((code, lab)),
            }
            return;
        };
        let members = p[cell].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &members {
            if explored.iter().any(|&w| self.same_orbit(fixed, w, v)) {
                continue;
            }
            explored.push(v);
            fixed.push(v);
            let child = refine(self.g, individualise(&p, cell, v));
            self.visit(child, fixed);
            fixed.pop();
        }
    }

    /// Whether some product of known automorphisms fixing `fixed` pointwise
    /// maps `a` to `b`.
    fn same_orbit(&self, fixed: &[usize], a: usize, b: usize) -> bool {
        let k = self.g.k;
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for auto in &self.autos {
            if fixed.iter().all(|&f| auto[f] == f) {
                for (v, &w) in auto.iter().enumerate() {
                    let (x, y) = (find(&mut parent, v), find(&mut parent, w));
                    parent[x] = y;
                }
            }
        }
        find(&mut parent, a) == find(&mut parent, b)
    }
}

/// Canonical code and the graph relabelled into canonical position.
/// Isomorphic graphs, and only those, get equal codes.
pub fn canonical_form(g: &SmallGraph) -> (u128, SmallGraph) {
    if g.k == 0 {
        return (0, *g);
    }
    let start = refine(g, vec![(0..g.k).collect()]);
    let mut s = Search {
        g,
        best: None,
        autos: Vec::new(),
    };
    s.visit(start, &mut Vec::new());
    let (code, lab) = s.best.unwrap();
    (code, g.relabel(&lab))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn from(k: usize, edges: &[(usize, usize)]) -> SmallGraph {
        let mut g = SmallGraph::new(k);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    fn shuffled(g: &SmallGraph, rng: &mut ChaCha8Rng) -> SmallGraph {
        let mut perm: Vec<usize> = (0..g.k).collect();
        perm.shuffle(rng);
        g.relabel(&perm)
    }

    #[test]
    fn relabelling_keeps_the_code() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let star = from(12, &(1..12).map(|v| (0, v)).collect::<Vec<_>>());
        let petersen = from(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        );
        let mut cube = SmallGraph::new(16);
        for v in 0..16 {
            for b in 0..4 {
                cube.adj[v] |= 1 << (v ^ 1 << b);
            }
        }
        for g in [star, petersen, cube] {
            let (code, canon) = canonical_form(&g);
            assert_eq!(canon.edge_count(), g.edge_count());
            for _ in 0..20 {
                let h = shuffled(&g, &mut rng);
                assert_eq!(canonical_form(&h), (code, canon));
            }
        }
    }

    #[test]
    fn separates_non_isomorphic() {
        // C6 and two triangles joined by an edge... both 2-regular-ish
        // cases that degree sequences alone cannot tell apart.
        let c6 = from(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let prism = from(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]);
        let k33 = from(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]);
        let tri = from(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert_ne!(canonical_form(&c6).0, canonical_form(&tri).0);
        assert_ne!(canonical_form(&prism).0, canonical_form(&k33).0);
    }

    /// Brute force over all labelled graphs on 5 vertices: the number of
    /// distinct codes is the number of isomorphism classes, 34.
    #[test]
    fn counts_graphs_on_five_vertices() {
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        let mut codes = std::collections::BTreeSet::new();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            codes.insert(canonical_form(&from(5, &edges)).0);
        }
        assert_eq!(codes.len(), 34);
    }
}
