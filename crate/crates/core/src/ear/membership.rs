use serde::Serialize;

use super::family::{FamilyPath, PathFamily};
use super::pairs::{classify_pair, pair_structure, primary_segment, PairKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MnClass {
    M,
    N,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AbClass {
    A,
    B,
    Neither,
}

/// Endpoints of `f_l \ (f_i ∪ f_j)` when it is a single nonempty subpath.
fn single_detour(fam: &PathFamily, l: usize, i: usize, j: usize) -> Option<(usize, usize)> {
    let fl = fam.path(l);
    let covered = fam.path(i).edges.union(&fam.path(j).edges);
    let g = fam.graph();
    let outside: Vec<bool> = fl
        .vertices
        .windows(2)
        .map(|w| !covered.contains(g.edge_id(w[0], w[1]).unwrap()))
        .collect();
    let first = outside.iter().position(|&o| o)?;
    let last = outside.iter().rposition(|&o| o)?;
    outside[first..=last]
        .iter()
        .all(|&o| o)
        .then(|| (fl.vertices[first], fl.vertices[last + 1]))
}

/// Whether `p` and `q` contain the same subpath from `from` to `to`.
fn share_subpath(p: &FamilyPath, q: &FamilyPath, from: usize, to: usize) -> bool {
    match (p.position(from), p.position(to), q.position(from), q.position(to)) {
        (Some(a), Some(b), Some(c), Some(d)) => p.vertices[a..=b] == q.vertices[c..=d],
        _ => false,
    }
}

fn on_segment(p: &FamilyPath, from: usize, to: usize, x: usize) -> bool {
    match (p.position(from), p.position(to), p.position(x)) {
        (Some(a), Some(b), Some(c)) => a <= c && c <= b,
        _ => false,
    }
}

fn wrong(i: usize, j: usize, expected: &'static str, found: &PairKind) -> Error {
    Error::WrongPairType {
        i,
        j,
        expected,
        found: found.name(),
    }
}

/// Membership of `f_l` in the sets `M_ij` and `N_ij` of a type-I pair.
/// With splitting vertices `a ≺ b ⪯ c ≺ d`, `f_l` is in `M_ij` when
/// `f_l \ (f_i ∪ f_j)` is one path `x f_l y` with `y ⪯ c`, `f_l` follows
/// `f_i` (equivalently the base) from `c` to `v`, and either
/// `x ⪯ a ≺ b ⪯ y` or both ends lie on one side of the first cycle.
/// `N_ij` is the mirror image around the second cycle.
pub fn mn_membership(fam: &PathFamily, i: usize, j: usize, l: usize) -> Result<MnClass> {
    let c = classify_pair(fam, i, j);
    let (i, j) = (c.i, c.j);
    let PairKind::TypeI { base, a, b, c: cc, d } = c.kind else {
        return Err(wrong(i, j, "type-I", &c.kind));
    };
    if l == i || l == j || Some(l) == base {
        return Ok(MnClass::Neither);
    }
    let Some((x, y)) = single_detour(fam, l, i, j) else {
        return Ok(MnClass::Neither);
    };
    let r = |z: usize| fam.rank(z);
    let (fi, fj, fl) = (fam.path(i), fam.path(j), fam.path(l));
    let (u, v) = fam.decomposition().root_edge();
    let same_side = |s: usize, t: usize| {
        (on_segment(fi, s, t, x) && on_segment(fi, s, t, y)) || (on_segment(fj, s, t, x) && on_segment(fj, s, t, y))
    };

    if r(y) <= r(cc)
        && share_subpath(fl, fi, cc, v)
        && ((r(x) <= r(a) && r(b) <= r(y)) || same_side(a, b))
    {
        return Ok(MnClass::M);
    }
    if r(b) <= r(x)
        && share_subpath(fl, fj, u, b)
        && ((r(x) <= r(cc) && r(d) <= r(y)) || same_side(cc, d))
    {
        return Ok(MnClass::N);
    }
    Ok(MnClass::Neither)
}

/// Membership of `f_l` in `A_ij` / `B_ij` of a type-II pair with base
/// `f_k`: `f_l` leaves `f_i` at `x` and rejoins at `y`, both on
/// `ps(i, k)`, with the detour internally disjoint from `f_k ∪ f_j`
/// (`B_ij` swaps the roles of `i` and `j`).
pub fn ab_membership(fam: &PathFamily, i: usize, j: usize, l: usize) -> Result<AbClass> {
    let c = classify_pair(fam, i, j);
    let (i, j) = (c.i, c.j);
    let PairKind::TypeII { base: k, .. } = c.kind else {
        return Err(wrong(i, j, "type-II", &c.kind));
    };
    if l == i || l == j || l == k {
        return Ok(AbClass::Neither);
    }
    if detours_inside(fam, l, i, k, j) {
        return Ok(AbClass::A);
    }
    if detours_inside(fam, l, j, k, i) {
        return Ok(AbClass::B);
    }
    Ok(AbClass::Neither)
}

/// `f_l = u f_p x ∪ x f_l y ∪ y f_p v` with `x, y` on `ps(p, k)` and
/// `x f_l y` internally disjoint from `f_k ∪ f_other`.
fn detours_inside(fam: &PathFamily, l: usize, p: usize, k: usize, other: usize) -> bool {
    let st = pair_structure(fam, l, p);
    let [div] = st.divergences[..] else {
        return false;
    };
    let Some(ps) = primary_segment(fam, p, k) else {
        return false;
    };
    let fp = fam.path(p);
    let on_ps = |z: usize| on_segment(fp, ps.start, ps.end, z);
    if !on_ps(div.start) || !on_ps(div.end) {
        return false;
    }
    let fl = fam.path(l);
    let (fk, fo) = (fam.path(k), fam.path(other));
    fl.vertices[div.i_span.0 + 1..div.i_span.1]
        .iter()
        .all(|&z| !fk.contains_vertex(z) && !fo.contains_vertex(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::bcfy_construct;
    use crate::ear::{build_family, ear_decompose};

    #[test]
    fn wrong_pair_type() {
        let g = bcfy_construct(3).unwrap();
        let fam = build_family(ear_decompose(g.graph(), (0, 1)).unwrap());
        for i in 0..fam.len() {
            for j in i + 1..fam.len() {
                let kind = classify_pair(&fam, i, j).kind;
                let mn = mn_membership(&fam, i, j, 0);
                let ab = ab_membership(&fam, i, j, 0);
                assert_eq!(mn.is_ok(), matches!(kind, PairKind::TypeI { .. }));
                assert_eq!(ab.is_ok(), matches!(kind, PairKind::TypeII { .. }));
            }
        }
    }
}
