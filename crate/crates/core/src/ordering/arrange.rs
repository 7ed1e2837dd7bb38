use serde::Serialize;

use super::degree::DegreeProfile;
use super::separator::SeparatorFamily;
use crate::ear::{pair_structure, PathFamily};
use crate::graph::EdgeSet;

/// Edges of the tree path from `from` up to the ancestor `to`, following
/// `parent`; `None` when `to` is not an ancestor.
pub(crate) fn climb(
    fam: &PathFamily,
    parent: impl Fn(usize) -> Option<usize>,
    from: usize,
    to: usize,
) -> Option<Vec<usize>> {
    let g = fam.graph();
    let mut out = Vec::new();
    let mut x = from;
    while x != to {
        let p = parent(x)?;
        out.push(g.edge_id(x, p).unwrap());
        x = p;
    }
    Some(out)
}

/// `LS(f_a, f_b)`: the first splitting vertex of two distinct paths.
pub fn first_split(fam: &PathFamily, a: usize, b: usize) -> usize {
    let st = pair_structure(fam, a, b);
    st.divergences.first().expect("distinct family paths differ").start
}

/// `RS(f_a, f_b)`: the last splitting vertex.
pub fn last_split(fam: &PathFamily, a: usize, b: usize) -> usize {
    let st = pair_structure(fam, a, b);
    st.divergences.last().expect("distinct family paths differ").end
}

/// High-degree edges split into the subtrees `L_P` (hanging from `u0` in
/// `L`) and `R_P` (hanging from `v0` in `R`).
#[derive(Debug, Clone, Serialize)]
pub struct HighTrees {
    pub l_tree: Vec<usize>,
    pub r_tree: Vec<usize>,
    /// Leaf edges of `l_tree`.
    pub l_leaves: Vec<usize>,
    pub r_leaves: Vec<usize>,
    /// Edges with `d(e) ≥ γ` that fit neither tree.
    pub unplaced: Vec<usize>,
}

impl HighTrees {
    pub fn transforming(&self) -> impl Iterator<Item = usize> + '_ {
        self.l_leaves.iter().chain(&self.r_leaves).copied()
    }
}

/// One side of the construction: candidate edges are tree edges lying in
/// the given portion of every member containing them; the tree keeps the
/// candidates whose whole climb to the root vertex is made of candidates.
fn side(
    fam: &PathFamily,
    sep: &SeparatorFamily,
    high: &[usize],
    parent: &dyn Fn(usize) -> Option<usize>,
    portion: &dyn Fn(usize) -> EdgeSet,
    root: usize,
    exclude: &EdgeSet,
) -> (Vec<usize>, Vec<usize>) {
    let g = fam.graph();
    let portions: Vec<(usize, EdgeSet)> = sep.paths.iter().map(|&p| (p, portion(p))).collect();
    let mut cand = EdgeSet::new(g.edge_count());
    for &e in high {
        if exclude.contains(e) {
            continue;
        }
        let (a, b) = g.edge(e);
        let tree_edge = parent(a) == Some(b) || parent(b) == Some(a);
        let fits = portions
            .iter()
            .all(|(p, por)| !fam.path(*p).edges.contains(e) || por.contains(e));
        if tree_edge && fits {
            cand.insert(e);
        }
    }
    let child = |e: usize| {
        let (a, b) = g.edge(e);
        if parent(a) == Some(b) {
            a
        } else {
            b
        }
    };
    let tree: Vec<usize> = cand
        .iter()
        .filter(|&e| {
            let (a, b) = g.edge(e);
            let top = a + b - child(e);
            climb(fam, parent, top, root).is_some_and(|up| up.iter().all(|&x| cand.contains(x)))
        })
        .collect();
    let tree_set = EdgeSet::from_ids(g.edge_count(), tree.iter().copied());
    let leaves = tree
        .iter()
        .copied()
        .filter(|&e| {
            let c = child(e);
            !g.neighbors(c).iter().any(|&w| {
                parent(w) == Some(c) && tree_set.contains(g.edge_id(c, w).unwrap())
            })
        })
        .collect();
    (tree, leaves)
}

pub fn high_trees(fam: &PathFamily, sep: &SeparatorFamily, prof: &DegreeProfile) -> HighTrees {
    let high: Vec<usize> = prof.high().collect();
    let m = fam.graph().edge_count();
    let (l_tree, l_leaves) = side(
        fam,
        sep,
        &high,
        &|x| fam.l_parent(x),
        &|p| fam.l_portion(p),
        sep.u0,
        &EdgeSet::new(m),
    );
    let taken = EdgeSet::from_ids(m, l_tree.iter().copied());
    let (r_tree, r_leaves) = side(
        fam,
        sep,
        &high,
        &|x| fam.r_parent(x),
        &|p| fam.r_portion(p),
        sep.v0,
        &taken,
    );
    let placed = taken.union(&EdgeSet::from_ids(m, r_tree.iter().copied()));
    let unplaced = high.into_iter().filter(|&e| !placed.contains(e)).collect();
    HighTrees {
        l_tree,
        r_tree,
        l_leaves,
        r_leaves,
        unplaced,
    }
}

/// Filter sizes of one pass of the ordering loop.
#[derive(Debug, Clone, Serialize)]
pub struct Step {
    pub x: usize,
    pub y: usize,
    pub candidates: [usize; 5],
    pub picked: usize,
}

/// An arrangement `g_1, g_2, ...` of a separator family with its fences
/// and intervals. Positions are 0-based.
#[derive(Debug, Clone, Serialize)]
pub struct OrderedFamily {
    pub arrangement: Vec<usize>,
    pub trees: HighTrees,
    /// Positions of fences, increasing.
    pub fences: Vec<usize>,
    /// Half-open position ranges, nonempty, covering the arrangement.
    pub intervals: Vec<(usize, usize)>,
    pub steps: Vec<Step>,
}

impl OrderedFamily {
    pub fn len(&self) -> usize {
        self.arrangement.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrangement.is_empty()
    }

    /// Interval holding position `j`.
    pub fn interval_of(&self, j: usize) -> usize {
        self.intervals.partition_point(|&(_, end)| end <= j)
    }
}

fn contains_all(fam: &PathFamily, p: usize, edges: &[usize]) -> bool {
    edges.iter().all(|&e| fam.path(p).edges.contains(e))
}

/// Orders the members: each pass keeps the paths sharing the longest
/// prefix with the previous pick, then the longest suffix, then prefers
/// paths with a transforming edge of `L_P` past `x`, then of `R_P` before
/// `y`, and takes the smallest index among the survivors.
pub fn order_paths(fam: &PathFamily, sep: &SeparatorFamily, prof: &DegreeProfile) -> OrderedFamily {
    let trees = high_trees(fam, sep, prof);
    let g = fam.graph();
    let rank = |x: usize| fam.rank(x);
    let mut left: Vec<usize> = sep.paths.clone();
    let mut arrangement: Vec<usize> = Vec::with_capacity(left.len());
    let mut steps = Vec::with_capacity(left.len());
    while !left.is_empty() {
        let total = left.len();
        let (x, y, s2, s1_len) = match arrangement.last() {
            None => (sep.u0, sep.v0, left.clone(), total),
            Some(&prev) => {
                let x = left
                    .iter()
                    .map(|&f| first_split(fam, prev, f))
                    .max_by_key(|&w| rank(w))
                    .unwrap();
                let lx = climb(fam, |w| fam.l_parent(w), x, sep.u0).expect("shared prefixes run through u0");
                let s1: Vec<usize> = left.iter().copied().filter(|&f| contains_all(fam, f, &lx)).collect();
                let y = s1
                    .iter()
                    .map(|&f| last_split(fam, prev, f))
                    .min_by_key(|&w| rank(w))
                    .unwrap();
                let ry = climb(fam, |w| fam.r_parent(w), y, sep.v0).expect("shared suffixes run through v0");
                let s2: Vec<usize> = s1.iter().copied().filter(|&f| contains_all(fam, f, &ry)).collect();
                (x, y, s2, s1.len())
            }
        };
        let after_x = |e: usize| {
            let (a, b) = g.edge(e);
            rank(a) >= rank(x) && rank(b) >= rank(x)
        };
        let before_y = |e: usize| {
            let (a, b) = g.edge(e);
            rank(a) <= rank(y) && rank(b) <= rank(y)
        };
        let narrow = |from: &[usize], leaves: &[usize], ok: &dyn Fn(usize) -> bool| -> Vec<usize> {
            let kept: Vec<usize> = from
                .iter()
                .copied()
                .filter(|&f| leaves.iter().any(|&e| ok(e) && fam.path(f).edges.contains(e)))
                .collect();
            if kept.is_empty() {
                from.to_vec()
            } else {
                kept
            }
        };
        let s3 = narrow(&s2, &trees.l_leaves, &after_x);
        let s4 = narrow(&s3, &trees.r_leaves, &before_y);
        let picked = *s4.iter().min().expect("the filters never empty the pool");
        steps.push(Step {
            x,
            y,
            candidates: [total, s1_len, s2.len(), s3.len(), s4.len()],
            picked,
        });
        arrangement.push(picked);
        left.retain(|&f| f != picked);
    }
    let fences = fences(fam, &arrangement, &trees);
    let intervals = intervals(&fences, arrangement.len());
    OrderedFamily {
        arrangement,
        trees,
        fences,
        intervals,
        steps,
    }
}

/// Positions of the first member containing each transforming edge.
pub fn fences(fam: &PathFamily, arrangement: &[usize], trees: &HighTrees) -> Vec<usize> {
    let mut out: Vec<usize> = trees
        .transforming()
        .filter_map(|e| arrangement.iter().position(|&p| fam.path(p).edges.contains(e)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Splits `0..len` at every fence; a fence at position 0 opens the first
/// interval rather than closing an empty one.
pub fn intervals(fences: &[usize], len: usize) -> Vec<(usize, usize)> {
    let mut cuts = vec![0];
    cuts.extend(fences.iter().copied().filter(|&f| f > 0 && f < len));
    cuts.push(len);
    cuts.dedup();
    cuts.windows(2).filter(|w| w[0] < w[1]).map(|w| (w[0], w[1])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::bcfy_construct;
    use crate::ear::{build_family, ear_decompose};
    use crate::graph::Graph;
    use crate::ordering::{degree_profile, separator};

    #[test]
    fn interval_cuts() {
        assert_eq!(intervals(&[], 4), vec![(0, 4)]);
        assert_eq!(intervals(&[0, 2], 4), vec![(0, 2), (2, 4)]);
        assert_eq!(intervals(&[1, 3], 4), vec![(0, 1), (1, 3), (3, 4)]);
        assert!(intervals(&[], 0).is_empty());
    }

    #[test]
    fn single_path() {
        let g = bcfy_construct(3).unwrap();
        let fam = build_family(ear_decompose(g.graph(), (0, 1)).unwrap());
        let sep = separator(&fam, &[2]).unwrap();
        let ord = order_paths(&fam, &sep, &degree_profile(&fam, &sep));
        assert_eq!(ord.arrangement, vec![2]);
        assert_eq!(ord.intervals, vec![(0, 1)]);
    }

    /// Two paths: the first pass takes the smaller index since nothing
    /// distinguishes them, and the second is forced.
    #[test]
    fn two_paths_by_hand() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 2)]).unwrap();
        let fam = build_family(ear_decompose(&g, (0, 3)).unwrap());
        let sep = separator(&fam, &[1, 0]).unwrap();
        let prof = degree_profile(&fam, &sep);
        let ord = order_paths(&fam, &sep, &prof);
        assert_eq!(ord.arrangement, vec![0, 1]);
        assert_eq!(ord.steps[1].x, 1);
        assert_eq!(ord.steps[1].y, 2);
        // With γ = 1 every varying edge is high; each path's detour edges
        // sit on one side, so transforming edges exist.
        let prof = prof.with_band(g.n(), Some(1.0), Some(1.0)).unwrap();
        let ord = order_paths(&fam, &sep, &prof);
        assert!(ord.trees.unplaced.is_empty());
        assert!(!ord.fences.is_empty());
    }
}
