use serde::Serialize;

use crate::ear::PathFamily;
use crate::error::{Error, Result};
use crate::graph::EdgeSet;

/// A subset of the family together with the two vertices that confine
/// every difference between its members.
#[derive(Debug, Clone, Serialize)]
pub struct SeparatorFamily {
    pub paths: Vec<usize>,
    pub u0: usize,
    pub v0: usize,
    /// Edges lying on some member but not on all of them.
    #[serde(skip)]
    pub varying: EdgeSet,
}

impl SeparatorFamily {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn varying_edges(&self) -> Vec<usize> {
        self.varying.iter().collect()
    }
}

/// Separator of `subset`: `u0` ends the longest prefix shared by every
/// member and `v0` starts the longest shared suffix. A single path has no
/// varying edges and gets `u0 = v0 = u`.
pub fn separator(fam: &PathFamily, subset: &[usize]) -> Result<SeparatorFamily> {
    let mut paths = subset.to_vec();
    paths.sort_unstable();
    paths.dedup();
    if paths.is_empty() {
        return Err(Error::InvalidInput("separator of an empty subset".into()));
    }
    if let Some(&bad) = paths.iter().find(|&&p| p >= fam.len()) {
        return Err(Error::OutOfRange {
            what: "path index",
            value: bad as u64,
            max: fam.len() as u64 - 1,
        });
    }
    let m = fam.graph().edge_count();
    let (u, _) = fam.decomposition().root_edge();
    if paths.len() == 1 {
        return Ok(SeparatorFamily {
            paths,
            u0: u,
            v0: u,
            varying: EdgeSet::new(m),
        });
    }

    let first = &fam.path(paths[0]).vertices;
    let mut prefix = first.len();
    let mut suffix = first.len();
    let mut union = EdgeSet::new(m);
    let mut common = fam.path(paths[0]).edges.clone();
    for &p in &paths {
        let vs = &fam.path(p).vertices;
        prefix = prefix.min(first.iter().zip(vs).take_while(|(a, b)| a == b).count());
        suffix = suffix.min(first.iter().rev().zip(vs.iter().rev()).take_while(|(a, b)| a == b).count());
        union = union.union(&fam.path(p).edges);
        common = common.intersection(&fam.path(p).edges);
    }
    Ok(SeparatorFamily {
        paths,
        u0: first[prefix - 1],
        v0: first[first.len() - suffix],
        varying: union.difference(&common),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::bcfy_construct;
    use crate::ear::{build_family, ear_decompose};
    use crate::graph::Graph;

    fn square_with_detour() -> PathFamily {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 2)]).unwrap();
        build_family(ear_decompose(&g, (0, 3)).unwrap())
    }

    #[test]
    fn singleton_has_nothing_varying() {
        let fam = square_with_detour();
        let sep = separator(&fam, &[1]).unwrap();
        assert!(sep.varying.is_empty());
        assert_eq!(sep.u0, sep.v0);
    }

    #[test]
    fn detour_endpoints_separate() {
        let fam = square_with_detour();
        let sep = separator(&fam, &[0, 1]).unwrap();
        assert_eq!((sep.u0, sep.v0), (1, 2));
        assert_eq!(sep.varying.len(), 3);
    }

    #[test]
    fn rejects_bad_subsets() {
        let fam = square_with_detour();
        assert!(separator(&fam, &[]).is_err());
        assert!(separator(&fam, &[7]).is_err());
    }

    /// Among all pairs of common vertices whose spans cover the varying
    /// edges, the chosen one has the smallest union of spans.
    #[test]
    fn chorded_separator_is_minimal() {
        let g = bcfy_construct(3).unwrap();
        let fam = build_family(ear_decompose(g.graph(), (0, 1)).unwrap());
        let all: Vec<usize> = (0..fam.len()).collect();
        let subsets = [all.clone(), vec![0, 1], vec![1, 2], vec![0, 2]];
        for subset in subsets {
            let sep = separator(&fam, &subset).unwrap();
            let span = |x: usize, y: usize| -> Option<EdgeSet> {
                let mut acc = EdgeSet::new(g.graph().edge_count());
                for &p in &subset {
                    let fp = fam.path(p);
                    let (a, b) = (fp.position(x)?, fp.position(y)?);
                    if a > b {
                        return None;
                    }
                    acc = acc.union(&fam.edges_between(fp, a, b));
                }
                Some(acc)
            };
            let chosen = span(sep.u0, sep.v0).unwrap();
            assert!(sep.varying.is_subset(&chosen));
            let n = g.graph().n();
            for x in 0..n {
                for y in 0..n {
                    if let Some(s) = span(x, y) {
                        if sep.varying.is_subset(&s) {
                            assert!(chosen.is_subset(&s), "{x},{y} beats the separator");
                        }
                    }
                }
            }
        }
    }
}
