//! Structural checks over a path family. Every check records how many
//! instances it examined and describes each failure.

use serde::Serialize;

use super::family::PathFamily;
use super::feasible::FeasibilityIndex;
use super::membership::{ab_membership, mn_membership, AbClass, MnClass};
use super::pairs::{classify_all, crossing, pair_structure, PairClassification, PairKind};
use crate::graph::{EdgeSet, Graph};

/// Failures kept per check; the count is always exact.
const MAX_RECORDED: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub checked: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl Check {
    pub(crate) fn new(name: &'static str) -> Self {
        Check {
            name,
            checked: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    pub(crate) fn assert(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_RECORDED {
                self.failures.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// Checks that hold for every 2-connected graph.
pub fn check_structure(fam: &PathFamily) -> CheckReport {
    let classes = classify_all(fam);
    let checks = vec![
        check_ears(fam),
        check_ancestor_order(fam),
        check_tree_parts_acyclic(fam),
        check_ear_not_inside(fam),
        check_paths_climb(fam),
        check_difference_cycles(fam),
        check_splitting_vertices(fam),
        check_type_i(fam, &classes),
        check_ear_covered_by_pair(fam, &classes),
        check_ear_covered_by_triple(fam, &classes),
        check_type_ii(fam, &classes),
        check_trichotomy(fam, &classes),
    ];
    CheckReport { checks }
}

/// Checks that rely on the graph having few cycles: the feasible-tuple
/// counts, the `W` total, and membership of the remaining paths in the
/// `M/N` and `A/B` sets.
pub fn check_few_cycles(fam: &PathFamily, index: &FeasibilityIndex) -> CheckReport {
    let n = fam.graph().n();
    let classes = classify_all(fam);
    let mut triples = Check::new("feasible-triples-at-most-n");
    triples.assert(index.triples.len() <= n, || format!("{} feasible triples, n = {n}", index.triples.len()));
    let mut quads = Check::new("feasible-quadruples-at-most-4n");
    quads.assert(index.quadruples.len() <= 4 * n, || {
        format!("{} feasible quadruples, n = {n}", index.quadruples.len())
    });
    let mut w = Check::new("w-total-at-most-51n");
    let total = index.w_total();
    w.assert(total <= 51 * n, || format!("sum |W| = {total}, n = {n}"));

    let mut mn = Check::new("infeasible-triple-lies-in-m-or-n");
    let mut ab = Check::new("outside-w-lies-in-a-or-b");
    let mut degenerate = Check::new("type-i-pair-with-base-is-feasible");
    for c in &classes {
        match c.kind {
            PairKind::TypeI { base, .. } => {
                if let Some(k) = base {
                    degenerate.assert(index.is_feasible_triple(c.i, c.j, k), || {
                        format!("({}, {}) with base {k}", c.i, c.j)
                    });
                }
                for l in (0..fam.len()).filter(|&l| l != c.i && l != c.j && Some(l) != base) {
                    if !index.is_feasible_triple(c.i, c.j, l) {
                        let class = mn_membership(fam, c.i, c.j, l).expect("pair is type-I");
                        mn.assert(class != MnClass::Neither, || format!("pair ({}, {}), path {l}", c.i, c.j));
                    }
                }
            }
            PairKind::TypeII { base, .. } => {
                let wij = index.w_set(c.i, c.j);
                for l in (0..fam.len()).filter(|&l| l != c.i && l != c.j && l != base) {
                    if !wij.contains(&l) {
                        let class = ab_membership(fam, c.i, c.j, l).expect("pair is type-II");
                        ab.assert(class != AbClass::Neither, || format!("pair ({}, {}), path {l}", c.i, c.j));
                    }
                }
            }
            PairKind::Normal => {}
        }
    }
    CheckReport {
        checks: vec![triples, quads, w, degenerate, mn, ab],
    }
}

/// Whether some ear of the current graph joins `x` and `r`: an unused edge
/// `xr`, or a path from `x` to `r` through vertices not yet placed.
fn ear_exists(g: &Graph, placed: &[bool], used: &EdgeSet, x: usize, r: usize) -> bool {
    if let Some(id) = g.edge_id(x, r) {
        if !used.contains(id) {
            return true;
        }
    }
    let mut seen = vec![false; g.n()];
    let mut stack: Vec<usize> = g.neighbors(x).iter().copied().filter(|&y| !placed[y]).collect();
    for &y in &stack {
        seen[y] = true;
    }
    while let Some(y) = stack.pop() {
        for &z in g.neighbors(y) {
            if z == r {
                return true;
            }
            if !placed[z] && !seen[z] {
                seen[z] = true;
                stack.push(z);
            }
        }
    }
    false
}

fn check_ears(fam: &PathFamily) -> Check {
    let mut c = Check::new("ear-decomposition");
    let d = fam.decomposition();
    let g = d.graph();
    let (u, v) = d.root_edge();
    let n = g.n();
    c.assert(d.s() + n == g.edge_count(), || {
        format!("s = {} but e - n = {}", d.s(), g.edge_count() - n)
    });
    let p0 = d.ear(0);
    c.assert(p0[0] == u && *p0.last().unwrap() == v && p0.len() >= 3, || {
        format!("P_0 = {p0:?} does not close a cycle with {u}{v}")
    });

    let mut placed = vec![false; n];
    let mut used = EdgeSet::new(g.edge_count());
    used.insert(g.edge_id(u, v).unwrap());
    let add = |ear: &[usize], placed: &mut [bool], used: &mut EdgeSet| -> bool {
        let mut fresh = true;
        for &x in ear {
            placed[x] = true;
        }
        for id in g.walk_edges(ear).unwrap() {
            fresh &= !used.contains(id);
            used.insert(id);
        }
        fresh
    };
    let fresh = add(p0, &mut placed, &mut used);
    c.assert(fresh, || "P_0 repeats an edge".into());

    for i in 1..=d.s() {
        let ear = d.ear(i);
        let (l, r) = (ear[0], *ear.last().unwrap());
        let inner = &ear[1..ear.len() - 1];
        c.assert(placed[l] && placed[r] && inner.iter().all(|&y| !placed[y]), || {
            format!("P_{i} = {ear:?} is not an ear of G_{}", i - 1)
        });
        c.assert(d.precedes(l, r), || format!("P_{i}: left endpoint {l} does not precede {r}"));
        // Nothing with a smaller left endpoint, or the same left endpoint
        // and a smaller right endpoint, was available.
        let candidates: Vec<usize> = (0..n).filter(|&x| placed[x]).collect();
        let mut better = None;
        'scan: for &x in &candidates {
            for &y in &candidates {
                if x == y || !d.precedes(x, y) {
                    continue;
                }
                let smaller = d.precedes(x, l) || (x == l && d.precedes(y, r));
                if smaller && ear_exists(g, &placed, &used, x, y) {
                    better = Some((x, y));
                    break 'scan;
                }
            }
        }
        c.assert(better.is_none(), || format!("P_{i}: an ear {better:?} is smaller than ({l}, {r})"));
        // Inner vertices follow l_i directly among vertices of G_i.
        let local: Vec<usize> = d
            .order()
            .iter()
            .copied()
            .filter(|&x| placed[x] || inner.contains(&x))
            .collect();
        let at = local.iter().position(|&x| x == l).unwrap();
        c.assert(local[at + 1..at + 1 + inner.len()] == *inner, || {
            format!("P_{i}: inner vertices not inserted after {l}")
        });
        let fresh = add(ear, &mut placed, &mut used);
        c.assert(fresh, || format!("P_{i} reuses an edge"));
    }
    c.assert(used.len() == g.edge_count(), || "ears do not cover every edge".into());
    c
}

fn check_ancestor_order(fam: &PathFamily) -> Check {
    let mut c = Check::new("ancestor-intro-order");
    let d = fam.decomposition();
    let n = fam.graph().n();
    for y in 0..n {
        let mut on_l = vec![y];
        let mut z = y;
        while let Some(p) = fam.l_parent(z) {
            on_l.push(p);
            z = p;
        }
        let mut on_r = vec![y];
        let mut z = y;
        while let Some(p) = fam.r_parent(z) {
            on_r.push(p);
            z = p;
        }
        for x in on_l.into_iter().chain(on_r) {
            c.assert(d.intro(x) <= d.intro(y), || {
                format!("{x} is above {y} but enters later ({} > {})", d.intro(x), d.intro(y))
            });
        }
    }
    c
}

/// Whether an edge set is a forest, by union-find.
fn is_forest(g: &Graph, edges: &EdgeSet) -> bool {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for id in edges.iter() {
        let (a, b) = g.edge(id);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

fn check_tree_parts_acyclic(fam: &PathFamily) -> Check {
    let mut c = Check::new("tree-parts-acyclic");
    let g = fam.graph();
    c.assert(is_forest(g, &fam.l_edges()) && fam.l_edges().len() + 1 == g.n(), || {
        "L is not a spanning tree".into()
    });
    c.assert(is_forest(g, &fam.r_edges()) && fam.r_edges().len() + 1 == g.n(), || {
        "R is not a spanning tree".into()
    });
    for i in 1..fam.len() {
        let li = fam.l_part(i);
        for j in 1..fam.len() {
            c.assert(is_forest(g, &li.union(&fam.r_part(j))), || format!("L_{i} ∪ R_{j} has a cycle"));
        }
    }
    c
}

fn check_ear_not_inside(fam: &PathFamily) -> Check {
    let mut c = Check::new("ear-not-inside-other-path");
    for i in 0..fam.len() {
        for j in (0..fam.len()).filter(|&j| j != i) {
            c.assert(!fam.ear_edges(i).is_subset(&fam.path(j).edges), || format!("P_{i} ⊆ f_{j}"));
        }
    }
    c
}

fn check_paths_climb(fam: &PathFamily) -> Check {
    let mut c = Check::new("paths-climb-order");
    let (u, v) = fam.decomposition().root_edge();
    for (i, p) in fam.paths().iter().enumerate() {
        let ends = p.vertices[0] == u && *p.vertices.last().unwrap() == v;
        let climbs = p.vertices.windows(2).all(|w| fam.rank(w[0]) < fam.rank(w[1]));
        c.assert(ends && climbs, || format!("f_{i} = {:?}", p.vertices));
    }
    c
}

/// Cyclomatic number of an edge set: `|E| - |V| + components`.
fn cyclomatic(g: &Graph, edges: &EdgeSet) -> usize {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut extra = 0;
    for id in edges.iter() {
        let (a, b) = g.edge(id);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            extra += 1;
        } else {
            parent[ra] = rb;
        }
    }
    extra
}

fn check_difference_cycles(fam: &PathFamily) -> Check {
    let mut c = Check::new("difference-cycles");
    let g = fam.graph();
    for j in 0..fam.len() {
        for i in 0..j {
            let st = pair_structure(fam, i, j);
            let sym = fam.path(i).edges.symmetric_difference(&fam.path(j).edges);
            let t = st.cycle_count();
            c.assert(cyclomatic(g, &sym) == t && (t == 1 || t == 2), || {
                format!("f_{i} Δ f_{j}: {t} divergences, cyclomatic {}", cyclomatic(g, &sym))
            });
            // Every difference edge lies on exactly one divergence.
            let mut covered = EdgeSet::new(g.edge_count());
            let mut touches_i = 0;
            let mut touches_j = 0;
            for d in &st.divergences {
                let side_i = fam.edges_between(fam.path(i), d.i_span.0, d.i_span.1);
                let side_j = fam.edges_between(fam.path(j), d.j_span.0, d.j_span.1);
                let cycle = side_i.union(&side_j);
                covered = covered.union(&cycle);
                let hits_i = cycle.intersects(fam.ear_edges(i));
                let hits_j = cycle.intersects(fam.ear_edges(j));
                touches_i += usize::from(hits_i);
                touches_j += usize::from(hits_j);
                c.assert(hits_i || hits_j, || {
                    format!("f_{i} Δ f_{j}: cycle at {}..{} misses both ears", d.start, d.end)
                });
            }
            c.assert(covered == sym, || format!("f_{i} Δ f_{j} not covered by its divergences"));
            c.assert(touches_i <= 1 && touches_j <= 1, || {
                format!("f_{i} Δ f_{j}: an ear meets two cycles")
            });
        }
    }
    c
}

fn check_splitting_vertices(fam: &PathFamily) -> Check {
    let mut c = Check::new("splitting-vertices");
    let g = fam.graph();
    let (u, v) = fam.decomposition().root_edge();
    for j in 0..fam.len() {
        for i in 0..j {
            let mut union = fam.path(i).edges.union(&fam.path(j).edges);
            union.insert(g.edge_id(u, v).unwrap());
            let mut deg = vec![0usize; g.n()];
            for id in union.iter() {
                let (a, b) = g.edge(id);
                deg[a] += 1;
                deg[b] += 1;
            }
            let mut oracle: Vec<usize> = (0..g.n()).filter(|&x| deg[x] >= 3).collect();
            oracle.sort_by_key(|&x| fam.rank(x));
            let got = pair_structure(fam, i, j).splitting_vertices();
            c.assert(got == oracle && matches!(got.len(), 2..=4), || {
                format!("({i}, {j}): splitting {got:?}, degree oracle {oracle:?}")
            });
        }
    }
    c
}

fn contains_on(fam: &PathFamily, set: &EdgeSet, p: usize, from: usize, to: usize) -> bool {
    let path = fam.path(p);
    match (path.position(from), path.position(to)) {
        (Some(a), Some(b)) if a <= b => set.is_subset(&fam.edges_between(path, a, b)),
        _ => false,
    }
}

fn is_inner(ear: &[usize], x: usize) -> bool {
    ear[1..ear.len() - 1].contains(&x)
}

fn check_type_i(fam: &PathFamily, classes: &[PairClassification]) -> Check {
    let mut c = Check::new("type-i-base");
    let d = fam.decomposition();
    for pc in classes {
        let PairKind::TypeI { base, a, b, c: cc, d: dd } = pc.kind else {
            continue;
        };
        let (i, j) = (pc.i, pc.j);
        let ok_ears = contains_on(fam, fam.ear_edges(i), i, a, b) && contains_on(fam, fam.ear_edges(j), j, cc, dd);
        let ok_base = base.is_some_and(|k| k < i && is_inner(d.ear(k), b) && is_inner(d.ear(k), cc));
        let ordered = fam.rank(a) < fam.rank(b) && fam.rank(b) <= fam.rank(cc) && fam.rank(cc) < fam.rank(dd);
        c.assert(ok_ears && ok_base && ordered, || {
            format!("({i}, {j}): base {base:?}, splitting {a} {b} {cc} {dd}")
        });
    }
    c
}

fn check_ear_covered_by_pair(fam: &PathFamily, classes: &[PairClassification]) -> Check {
    let mut c = Check::new("ear-covered-by-pair");
    let m = fam.len();
    for pc in classes {
        let (i, j) = (pc.i, pc.j);
        let union = fam.path(i).edges.union(&fam.path(j).edges);
        for l in (0..m).filter(|&l| l != i && l != j) {
            if fam.ear_edges(l).is_subset(&union) {
                let ok = matches!(pc.kind, PairKind::TypeI { base: Some(k), .. } if k == l);
                c.assert(ok, || format!("P_{l} ⊆ f_{i} ∪ f_{j} but the pair is {}", pc.kind.name()));
            }
        }
    }
    c
}

fn check_ear_covered_by_triple(fam: &PathFamily, classes: &[PairClassification]) -> Check {
    let mut c = Check::new("ear-covered-by-triple");
    let m = fam.len();
    let kind = |a: usize, b: usize| &classes.iter().find(|x| x.i == a.min(b) && x.j == a.max(b)).unwrap().kind;
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let union = fam.path(i).edges.union(&fam.path(j).edges).union(&fam.path(k).edges);
                for l in (0..m).filter(|&l| l != i && l != j && l != k) {
                    if !fam.ear_edges(l).is_subset(&union) {
                        continue;
                    }
                    let ok = [(i, j), (i, k), (j, k)].into_iter().any(|(a, b)| {
                        let pair = fam.path(a).edges.union(&fam.path(b).edges);
                        fam.ear_edges(l).is_subset(&pair)
                            && matches!(kind(a, b), PairKind::TypeI { base: Some(x), .. } if *x == l)
                    });
                    c.assert(ok, || format!("P_{l} ⊆ f_{i} ∪ f_{j} ∪ f_{k} without a covering pair"));
                }
            }
        }
    }
    c
}

fn check_type_ii(fam: &PathFamily, classes: &[PairClassification]) -> Check {
    let mut c = Check::new("type-ii-structure");
    for pc in classes {
        let PairKind::TypeII { base: k, first, a, b, c: cc, d } = pc.kind else {
            continue;
        };
        let second = if first == pc.i { pc.j } else { pc.i };
        let (fp, fq, fk) = (fam.path(first), fam.path(second), fam.path(k));
        let splice = |outer: &super::family::FamilyPath, inner: &super::family::FamilyPath, x: usize, y: usize| {
            let mut out = outer.vertices[..=outer.position(x).unwrap()].to_vec();
            out.extend_from_slice(&inner.vertices[inner.position(x).unwrap() + 1..=inner.position(y).unwrap()]);
            out.extend_from_slice(&outer.vertices[outer.position(y).unwrap() + 1..]);
            out
        };
        let shape_p = splice(fk, fp, a, cc) == fp.vertices;
        let shape_q = splice(fk, fq, b, d) == fq.vertices;
        let kb = fk.position(b).unwrap();
        let kc = fk.position(cc).unwrap();
        let middle = fam.edges_between(fk, kb, kc).intersects(fam.ear_edges(k));
        let disjoint = fp.vertices[fp.position(a).unwrap()..=fp.position(cc).unwrap()]
            .iter()
            .all(|&z| !(fq.position(z).is_some_and(|p| p >= fq.position(b).unwrap() && p <= fq.position(d).unwrap())));
        let kind = |a: usize, b: usize| &classes.iter().find(|x| x.i == a.min(b) && x.j == a.max(b)).unwrap().kind;
        let not_type_i = !matches!(kind(first, k), PairKind::TypeI { .. }) && !matches!(kind(second, k), PairKind::TypeI { .. });
        c.assert(shape_p && shape_q && middle && disjoint && not_type_i, || {
            format!(
                "({}, {}) base {k}: shapes {shape_p}/{shape_q}, base ear between b and c {middle}, \
                 disjoint {disjoint}, no type-I with base {not_type_i}",
                pc.i, pc.j
            )
        });
    }
    c
}

fn check_trichotomy(fam: &PathFamily, classes: &[PairClassification]) -> Check {
    let mut c = Check::new("classification-trichotomy");
    let g = fam.graph();
    let m = fam.len();
    c.assert(classes.len() == m * (m - 1) / 2, || "not every pair classified".into());
    for pc in classes {
        let (i, j) = (pc.i, pc.j);
        let sym = fam.path(i).edges.symmetric_difference(&fam.path(j).edges);
        let two_cycles = cyclomatic(g, &sym) == 2;
        let crossers: Vec<usize> = (0..m)
            .filter(|&l| l != i && l != j && crossing(fam, i, j, l).is_some())
            .collect();
        let ok = match pc.kind {
            PairKind::TypeI { .. } => two_cycles,
            PairKind::TypeII { base, .. } => !two_cycles && crossers.first() == Some(&base),
            PairKind::Normal => !two_cycles && crossers.is_empty(),
        };
        c.assert(ok, || format!("({i}, {j}) classified {} with crossing paths {crossers:?}", pc.kind.name()));
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::bcfy_construct;
    use crate::ear::{build_family, ear_decompose};

    #[test]
    fn chorded_families_pass() {
        for q in [2, 3, 4] {
            let g = bcfy_construct(q).unwrap();
            let fam = build_family(ear_decompose(g.graph(), (0, 1)).unwrap());
            let report = check_structure(&fam);
            assert!(report.passed(), "{:#?}", report.failures().collect::<Vec<_>>());
            let index = FeasibilityIndex::build(&fam, u64::MAX).unwrap();
            let cond = check_few_cycles(&fam, &index);
            assert!(cond.passed(), "{:#?}", cond.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn k4_structure() {
        let fam = build_family(ear_decompose(&Graph::complete(4), (0, 1)).unwrap());
        let report = check_structure(&fam);
        assert!(report.passed(), "{:#?}", report.failures().collect::<Vec<_>>());
    }
}
