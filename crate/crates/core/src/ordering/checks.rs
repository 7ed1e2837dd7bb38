//! Checks on an arrangement, recomputed from the definitions rather than
//! from the bookkeeping of the ordering loop.

use super::arrange::{climb, first_split, last_split, OrderedFamily};
use super::degree::DegreeProfile;
use super::separator::SeparatorFamily;
use crate::ear::{classify_pair, Check, CheckReport, PairKind, PathFamily};
use crate::graph::EdgeSet;

/// Properties every arrangement satisfies.
pub fn check_arrangement(
    fam: &PathFamily,
    sep: &SeparatorFamily,
    prof: &DegreeProfile,
    ord: &OrderedFamily,
) -> CheckReport {
    CheckReport {
        checks: vec![
            check_permutation(sep, ord),
            check_trees(fam, sep, ord),
            check_shared_prefixes(fam, sep, ord),
            check_split_order(fam, ord),
            check_transforming_ties(fam, ord),
            check_fences(fam, ord),
            check_intervals(ord, prof),
        ],
    }
}

fn check_permutation(sep: &SeparatorFamily, ord: &OrderedFamily) -> Check {
    let mut c = Check::new("arrangement-is-permutation");
    let mut sorted = ord.arrangement.clone();
    sorted.sort_unstable();
    c.assert(sorted == sep.paths, || format!("{:?} is not a permutation of {:?}", ord.arrangement, sep.paths));
    c
}

/// Both trees hang from their roots inside `L` and `R`, share no edge, and
/// each member meets at most one leaf edge of each.
fn check_trees(fam: &PathFamily, sep: &SeparatorFamily, ord: &OrderedFamily) -> Check {
    let mut c = Check::new("high-trees-are-rooted-subtrees");
    let g = fam.graph();
    let m = g.edge_count();
    let l = EdgeSet::from_ids(m, ord.trees.l_tree.iter().copied());
    let r = EdgeSet::from_ids(m, ord.trees.r_tree.iter().copied());
    c.assert(!l.intersects(&r), || "L_P and R_P share an edge".into());
    type Side<'a> = (&'a EdgeSet, &'a [usize], &'a dyn Fn(usize) -> Option<usize>, usize, &'a str);
    let sides: [Side; 2] = [
        (&l, &ord.trees.l_leaves, &|x| fam.l_parent(x), sep.u0, "L"),
        (&r, &ord.trees.r_leaves, &|x| fam.r_parent(x), sep.v0, "R"),
    ];
    for (tree, leaves, parent, root, name) in sides {
        for e in tree.iter() {
            let (a, b) = g.edge(e);
            let lower = if parent(a) == Some(b) { Some(a) } else if parent(b) == Some(a) { Some(b) } else { None };
            let rooted = lower
                .and_then(|x| climb(fam, parent, x, root))
                .is_some_and(|up| up.iter().all(|&t| tree.contains(t)));
            c.assert(rooted, || format!("edge {:?} of {name}_P does not hang from its root", g.edge(e)));
        }
        let leaf_set = EdgeSet::from_ids(m, leaves.iter().copied());
        for &p in &sep.paths {
            let k = fam.path(p).edges.intersection(&leaf_set).len();
            c.assert(k <= 1, || format!("f_{p} meets {k} leaf edges of {name}_P"));
        }
    }
    c
}

/// Whenever `g_j` and `g_l` both contain `u0 L w`, so does every path
/// arranged between them.
fn check_shared_prefixes(fam: &PathFamily, sep: &SeparatorFamily, ord: &OrderedFamily) -> Check {
    let mut c = Check::new("shared-prefixes-are-consecutive");
    for w in 0..fam.graph().n() {
        let Some(path) = climb(fam, |x| fam.l_parent(x), w, sep.u0) else {
            continue;
        };
        let has: Vec<bool> = ord
            .arrangement
            .iter()
            .map(|&p| path.iter().all(|&e| fam.path(p).edges.contains(e)))
            .collect();
        let p = has.len();
        let mut seen_before = vec![false; p + 1];
        for k in 0..p {
            seen_before[k + 1] = seen_before[k] || has[k];
        }
        let mut seen_after = vec![false; p + 1];
        for k in (0..p).rev() {
            seen_after[k] = seen_after[k + 1] || has[k];
        }
        for k in 0..p {
            c.assert(has[k] || !(seen_before[k] && seen_after[k + 1]), || {
                format!("g_{} misses u0 L {w} held on both sides", k + 1)
            });
        }
    }
    c
}

/// For `j < k`: `LS(g_{j-1}, g_j) ⪰ LS(g_{j-1}, g_k)`, and on equality
/// `RS(g_{j-1}, g_j) ⪯ RS(g_{j-1}, g_k)`.
fn check_split_order(fam: &PathFamily, ord: &OrderedFamily) -> Check {
    let mut c = Check::new("split-vertices-are-greedy");
    let a = &ord.arrangement;
    let r = |x: usize| fam.rank(x);
    for j in 1..a.len() {
        let ls_j = first_split(fam, a[j - 1], a[j]);
        let rs_j = last_split(fam, a[j - 1], a[j]);
        for k in j + 1..a.len() {
            let ls_k = first_split(fam, a[j - 1], a[k]);
            let rs_k = last_split(fam, a[j - 1], a[k]);
            c.assert(r(ls_j) >= r(ls_k), || format!("position {j}: LS {ls_j} precedes LS {ls_k} of position {k}"));
            if ls_j == ls_k {
                c.assert(r(rs_j) <= r(rs_k), || format!("position {j}: RS {rs_j} follows RS {rs_k} of position {k}"));
            }
        }
    }
    c
}

/// Under equal `LS` and `RS` against `g_{j-1}`: a `g_j` without an `L_P`
/// leaf forces `g_k` to have none, and an `R_P` leaf on `g_k` alone forces
/// an `L_P` leaf on `g_j` alone.
fn check_transforming_ties(fam: &PathFamily, ord: &OrderedFamily) -> Check {
    let mut c = Check::new("transforming-edge-ties");
    let a = &ord.arrangement;
    let has = |p: usize, leaves: &[usize]| leaves.iter().any(|&e| fam.path(p).edges.contains(e));
    let (ll, rl) = (&ord.trees.l_leaves, &ord.trees.r_leaves);
    for j in 1..a.len() {
        let key = |k: usize| (first_split(fam, a[j - 1], a[k]), last_split(fam, a[j - 1], a[k]));
        let kj = key(j);
        for k in j + 1..a.len() {
            if key(k) != kj {
                continue;
            }
            if !has(a[j], ll) {
                c.assert(!has(a[k], ll), || format!("positions {j},{k}: only the later one has an L_P leaf"));
            }
            if has(a[k], rl) && !has(a[j], rl) {
                c.assert(has(a[j], ll) && !has(a[k], ll), || {
                    format!("positions {j},{k}: R_P leaf on the later one is not compensated")
                });
            }
        }
    }
    c
}

fn check_fences(fam: &PathFamily, ord: &OrderedFamily) -> Check {
    let mut c = Check::new("fences-are-first-containers");
    let mut expected = Vec::new();
    let mut seen = EdgeSet::new(fam.graph().edge_count());
    for (j, &p) in ord.arrangement.iter().enumerate() {
        let fresh = ord.trees.transforming().any(|e| !seen.contains(e) && fam.path(p).edges.contains(e));
        if fresh {
            expected.push(j);
        }
        seen = seen.union(&fam.path(p).edges);
    }
    c.assert(expected == ord.fences, || format!("fences {:?}, first containers {expected:?}", ord.fences));
    c
}

fn check_intervals(ord: &OrderedFamily, prof: &DegreeProfile) -> Check {
    let mut c = Check::new("interval-partition");
    let mut at = 0;
    for &(s, e) in &ord.intervals {
        c.assert(s == at && s < e, || format!("interval [{s}, {e}) does not continue at {at}"));
        at = e;
    }
    c.assert(at == ord.len(), || format!("intervals stop at {at} of {}", ord.len()));
    for &(s, _) in ord.intervals.iter().skip(1) {
        c.assert(ord.fences.contains(&s), || format!("interval starting at {s} has no fence"));
    }
    let bound = 2.0 * ord.len() as f64 / prof.gamma + 1.0;
    let count = ord.intervals.len();
    c.assert(count as f64 <= bound, || format!("{count} intervals exceed 2|P|/γ + 1 = {bound:.3}"));
    c
}

/// Statements that need a pruned family: an edge in `L_k ∩ R_l` has degree
/// at most `2 n^{1/4}`, and every edge with `d(e) ≥ γ > 2 n^{1/4}` lands in
/// one of the two trees.
pub fn check_pruned(fam: &PathFamily, sep: &SeparatorFamily, prof: &DegreeProfile, ord: &OrderedFamily) -> CheckReport {
    let n = fam.graph().n() as f64;
    let cap = 2.0 * n.powf(0.25);
    let mut mixed = Check::new("mixed-edges-have-low-degree");
    let l_parts: Vec<EdgeSet> = sep.paths.iter().map(|&p| fam.l_part(p)).collect();
    let r_parts: Vec<EdgeSet> = sep.paths.iter().map(|&p| fam.r_part(p)).collect();
    for e in sep.varying.iter() {
        let in_l = l_parts.iter().any(|s| s.contains(e));
        let in_r = r_parts.iter().any(|s| s.contains(e));
        if in_l && in_r {
            let d = prof.d(e);
            mixed.assert(d as f64 <= cap, || format!("edge {:?} in some L_k and R_l has d = {d}", fam.graph().edge(e)));
        }
    }
    let mut placed = Check::new("high-edges-form-two-trees");
    if prof.gamma > cap {
        for &e in &ord.trees.unplaced {
            placed.assert(false, || format!("edge {:?} with d = {} fits neither tree", fam.graph().edge(e), prof.d(e)));
        }
        placed.checked += prof.high().count() - ord.trees.unplaced.len();
    }
    CheckReport {
        checks: vec![mixed, placed],
    }
}

/// Type-I and type-II pairs inside `subset`, as `(i, j, kind)`.
pub(crate) fn special_pairs(fam: &PathFamily, subset: &[usize]) -> Vec<(usize, usize, PairKind)> {
    let mut out = Vec::new();
    for (x, &i) in subset.iter().enumerate() {
        for &j in &subset[x + 1..] {
            let kind = classify_pair(fam, i, j).kind;
            if !matches!(kind, PairKind::Normal) {
                out.push((i.min(j), i.max(j), kind));
            }
        }
    }
    out
}
