use serde::Serialize;

use super::family::PathFamily;
use crate::graph::EdgeSet;

/// A maximal stretch where `f_i` and `f_j` use different edges between two
/// common vertices. Together the two sides form one cycle of `f_i Δ f_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub start: usize,
    pub end: usize,
    /// Positions of `start` and `end` in `f_i`.
    pub i_span: (usize, usize),
    /// Positions of `start` and `end` in `f_j`.
    pub j_span: (usize, usize),
}

/// How two family paths differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairStructure {
    pub i: usize,
    pub j: usize,
    pub divergences: Vec<Divergence>,
}

impl PairStructure {
    /// Endpoints of the divergences in order, each listed once. These are
    /// the vertices with at least three neighbours in `f_i ∪ f_j ∪ {uv}`.
    pub fn splitting_vertices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::with_capacity(2 * self.divergences.len());
        for d in &self.divergences {
            if out.last() != Some(&d.start) {
                out.push(d.start);
            }
            out.push(d.end);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.divergences.len()
    }
}

/// Walks `f_i` and `f_j` together and records every divergence. Common
/// vertices appear in the same order on both paths since each path climbs
/// the vertex order.
pub fn pair_structure(fam: &PathFamily, i: usize, j: usize) -> PairStructure {
    let fi = fam.path(i);
    let fj = fam.path(j);
    let common: Vec<(usize, usize, usize)> = fi
        .vertices
        .iter()
        .enumerate()
        .filter_map(|(pi, &x)| fj.position(x).map(|pj| (x, pi, pj)))
        .collect();
    let mut divergences = Vec::new();
    for w in common.windows(2) {
        let (x, pi, pj) = w[0];
        let (y, qi, qj) = w[1];
        debug_assert!(qj > pj, "family paths must climb the order");
        if qi == pi + 1 && qj == pj + 1 {
            continue;
        }
        divergences.push(Divergence {
            start: x,
            end: y,
            i_span: (pi, qi),
            j_span: (pj, qj),
        });
    }
    PairStructure { i, j, divergences }
}

/// Splitting vertices of `f_i ∪ f_j` sorted by the vertex order.
pub fn splitting_vertices(fam: &PathFamily, i: usize, j: usize) -> Vec<usize> {
    pair_structure(fam, i, j).splitting_vertices()
}

/// A subpath `f_i[from..=to]` given by positions on `f_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Subpath {
    pub path: usize,
    pub start: usize,
    pub end: usize,
    pub from: usize,
    pub to: usize,
}

/// Subpaths of `f_i \ f_j`, one per cycle of `f_i Δ f_j`. When the two
/// cycles touch at a single vertex their `f_i` sides still count as two
/// subpaths.
pub fn difference_components(fam: &PathFamily, i: usize, j: usize) -> Vec<Subpath> {
    pair_structure(fam, i, j)
        .divergences
        .iter()
        .map(|d| Subpath {
            path: i,
            start: d.start,
            end: d.end,
            from: d.i_span.0,
            to: d.i_span.1,
        })
        .collect()
}

/// The component of `f_i \ f_j` carrying edges of `P_i`, when exactly one
/// component does.
pub fn primary_segment(fam: &PathFamily, i: usize, j: usize) -> Option<Subpath> {
    let mut hits = difference_components(fam, i, j)
        .into_iter()
        .filter(|s| fam.edges_between(fam.path(i), s.from, s.to).intersects(fam.ear_edges(i)));
    let first = hits.next()?;
    hits.next().is_none().then_some(first)
}

/// Pair type. Splitting vertices satisfy `a ≺ b ⪯ c ≺ d` for type I and
/// `a ≺ b ≺ c ≺ d` for type II.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum PairKind {
    TypeI {
        /// Index `k` with `f_k = uf_jc ∪ cf_iv`, if present in the family.
        base: Option<usize>,
        a: usize,
        b: usize,
        c: usize,
        d: usize,
    },
    TypeII {
        base: usize,
        /// The member whose primary segment against the base starts first.
        first: usize,
        a: usize,
        b: usize,
        c: usize,
        d: usize,
    },
    Normal,
}

impl PairKind {
    pub fn name(&self) -> &'static str {
        match self {
            PairKind::TypeI { .. } => "type-I",
            PairKind::TypeII { .. } => "type-II",
            PairKind::Normal => "normal",
        }
    }
}

/// Classification of `{f_i, f_j}`, normalised to `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairClassification {
    pub i: usize,
    pub j: usize,
    pub kind: PairKind,
    pub splitting: Vec<usize>,
    pub ps_ij: Option<Subpath>,
    pub ps_ji: Option<Subpath>,
}

/// Crossing data if `f_l` is a crossing path of `{f_i, f_j}`: returns
/// `(first, a, b, c, d)`.
pub fn crossing(fam: &PathFamily, i: usize, j: usize, l: usize) -> Option<(usize, usize, usize, usize, usize)> {
    let si = primary_segment(fam, i, l)?;
    let sj = primary_segment(fam, j, l)?;
    let r = |x: usize| fam.rank(x);
    let (ai, ci) = (si.start, si.end);
    let (bj, dj) = (sj.start, sj.end);
    if r(ai) < r(bj) && r(bj) < r(ci) && r(ci) < r(dj) {
        Some((i, ai, bj, ci, dj))
    } else if r(bj) < r(ai) && r(ai) < r(dj) && r(dj) < r(ci) {
        Some((j, bj, ai, dj, ci))
    } else {
        None
    }
}

pub fn classify_pair(fam: &PathFamily, i: usize, j: usize) -> PairClassification {
    assert_ne!(i, j, "a pair needs two distinct paths");
    let (i, j) = (i.min(j), i.max(j));
    let st = pair_structure(fam, i, j);
    let splitting = st.splitting_vertices();
    let ps_ij = primary_segment(fam, i, j);
    let ps_ji = primary_segment(fam, j, i);
    let kind = if st.cycle_count() == 2 {
        let (first, second) = (st.divergences[0], st.divergences[1]);
        let c = second.start;
        let fi = fam.path(i);
        let fj = fam.path(j);
        let mut candidate = fj.vertices[..=second.j_span.0].to_vec();
        candidate.extend_from_slice(&fi.vertices[second.i_span.0 + 1..]);
        PairKind::TypeI {
            base: fam.find(&candidate),
            a: first.start,
            b: first.end,
            c,
            d: second.end,
        }
    } else {
        (0..fam.len())
            .filter(|&l| l != i && l != j)
            .find_map(|l| crossing(fam, i, j, l).map(|x| (l, x)))
            .map_or(PairKind::Normal, |(base, (first, a, b, c, d))| PairKind::TypeII {
                base,
                first,
                a,
                b,
                c,
                d,
            })
    };
    PairClassification {
        i,
        j,
        kind,
        splitting,
        ps_ij,
        ps_ji,
    }
}

/// Classification of every pair `i < j`, in lexicographic order.
pub fn classify_all(fam: &PathFamily) -> Vec<PairClassification> {
    use rayon::prelude::*;
    let pairs: Vec<(usize, usize)> = (0..fam.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    let mut out: Vec<PairClassification> = pairs.par_iter().map(|&(i, j)| classify_pair(fam, i, j)).collect();
    out.sort_by_key(|c| (c.i, c.j));
    out
}

/// `E(f_i) Δ E(f_j)`.
pub fn symmetric_difference(fam: &PathFamily, i: usize, j: usize) -> EdgeSet {
    fam.path(i).edges.symmetric_difference(&fam.path(j).edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::bcfy_construct;
    use crate::ear::{build_family, ear_decompose};
    use crate::graph::Graph;

    #[test]
    fn single_detour_has_two_splitting_vertices() {
        // Square 0-1-2-3 with a detour 1-4-2.
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 2)]).unwrap();
        let fam = build_family(ear_decompose(&g, (0, 3)).unwrap());
        assert_eq!(fam.len(), 2);
        let sv = splitting_vertices(&fam, 0, 1);
        assert_eq!(sv, vec![1, 2]);
        let c = classify_pair(&fam, 1, 0);
        assert_eq!((c.i, c.j), (0, 1));
        assert_eq!(c.kind, PairKind::Normal);
    }

    #[test]
    fn bcfy_q3_pairs() {
        let g = bcfy_construct(3).unwrap();
        let fam = build_family(ear_decompose(g.graph(), (0, 1)).unwrap());
        assert_eq!(fam.len(), 3);
        for c in classify_all(&fam) {
            assert!(matches!(c.splitting.len(), 2..=4));
            assert!(c.ps_ij.is_some() && c.ps_ji.is_some());
        }
        assert_eq!(splitting_vertices(&fam, 1, 2).len(), 2);
    }
}
