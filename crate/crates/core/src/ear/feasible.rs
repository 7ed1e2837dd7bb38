use std::collections::BTreeSet;
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;

use super::family::PathFamily;
use crate::cycles::visit_cycles;
use crate::error::{Error, Result};
use crate::graph::EdgeSet;

/// Edges of `P_α` outside every other member of `tuple`.
fn private_edges(fam: &PathFamily, tuple: &[usize], alpha: usize) -> EdgeSet {
    let mut others = EdgeSet::new(fam.graph().edge_count());
    for &b in tuple {
        if b != alpha {
            others = others.union(&fam.path(b).edges);
        }
    }
    fam.ear_edges(alpha).difference(&others)
}

/// A cycle inside `{uv} ∪ f_α ∪ ...` over `tuple` that, for every member
/// `α` with private ear edges, uses at least one of them.
pub fn feasible_cycle(fam: &PathFamily, tuple: &[usize]) -> Option<Vec<usize>> {
    let g = fam.graph();
    let (u, v) = fam.decomposition().root_edge();
    let mut union = EdgeSet::new(g.edge_count());
    union.insert(g.edge_id(u, v).unwrap());
    for &a in tuple {
        union = union.union(&fam.path(a).edges);
    }
    let required: Vec<EdgeSet> = tuple
        .iter()
        .map(|&a| private_edges(fam, tuple, a))
        .filter(|x| !x.is_empty())
        .collect();

    // Work in the subgraph spanned by the union, keeping the original edge
    // ids through `local_to_global`.
    let sub = g.edge_subgraph(&union);
    let local_to_global: Vec<usize> = sub
        .edges()
        .iter()
        .map(|&(x, y)| g.edge_id(x, y).unwrap())
        .collect();
    let mut witness = None;
    visit_cycles(&sub, |cycle| {
        let mut ids = EdgeSet::new(g.edge_count());
        for t in 0..cycle.len() {
            let local = sub.edge_id(cycle[t], cycle[(t + 1) % cycle.len()]).unwrap();
            ids.insert(local_to_global[local]);
        }
        if required.iter().all(|r| r.intersects(&ids)) {
            witness = Some(cycle.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    witness
}

/// Witness 3-feasible cycle for distinct `i, j, l`.
pub fn feasible_triple(fam: &PathFamily, i: usize, j: usize, l: usize) -> Result<Option<Vec<usize>>> {
    distinct(&[i, j, l], fam.len())?;
    Ok(feasible_cycle(fam, &[i, j, l]))
}

/// Witness 4-feasible cycle for distinct `i, j, k, l`.
pub fn feasible_quadruple(fam: &PathFamily, i: usize, j: usize, k: usize, l: usize) -> Result<Option<Vec<usize>>> {
    distinct(&[i, j, k, l], fam.len())?;
    Ok(feasible_cycle(fam, &[i, j, k, l]))
}

fn distinct(tuple: &[usize], len: usize) -> Result<()> {
    if let Some(&bad) = tuple.iter().find(|&&x| x >= len) {
        return Err(Error::OutOfRange {
            what: "path index",
            value: bad as u64,
            max: len.saturating_sub(1) as u64,
        });
    }
    let set: BTreeSet<_> = tuple.iter().collect();
    if set.len() != tuple.len() {
        return Err(Error::InvalidInput(format!("indices must be distinct: {tuple:?}")));
    }
    Ok(())
}

/// All feasible triples and quadruples of a family, sorted.
#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityIndex {
    pub triples: Vec<[usize; 3]>,
    pub quadruples: Vec<[usize; 4]>,
    #[serde(skip)]
    family_len: usize,
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, t| acc * (n - t) as u64 / (t + 1) as u64)
}

impl FeasibilityIndex {
    /// Tests every triple and quadruple. Refuses when that is more than
    /// `budget` tuples.
    pub fn build(fam: &PathFamily, budget: u64) -> Result<Self> {
        let m = fam.len();
        if binomial(m, 3) + binomial(m, 4) > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        let mut triples = Vec::new();
        let mut quads = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    triples.push([a, b, c]);
                    for d in c + 1..m {
                        quads.push([a, b, c, d]);
                    }
                }
            }
        }
        let triples: Vec<[usize; 3]> = triples
            .into_par_iter()
            .filter(|t| feasible_cycle(fam, t).is_some())
            .collect();
        let quadruples: Vec<[usize; 4]> = quads
            .into_par_iter()
            .filter(|t| feasible_cycle(fam, t).is_some())
            .collect();
        Ok(FeasibilityIndex {
            triples,
            quadruples,
            family_len: m,
        })
    }

    pub fn is_feasible_triple(&self, i: usize, j: usize, l: usize) -> bool {
        let mut t = [i, j, l];
        t.sort_unstable();
        self.triples.binary_search(&t).is_ok()
    }

    /// `W_ij`: indices `l` such that `{i, j, l}` is feasible or lies in a
    /// feasible quadruple.
    pub fn w_set(&self, i: usize, j: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for t in &self.triples {
            if t.contains(&i) && t.contains(&j) {
                out.extend(t.iter().filter(|&&x| x != i && x != j));
            }
        }
        for q in &self.quadruples {
            if q.contains(&i) && q.contains(&j) {
                out.extend(q.iter().filter(|&&x| x != i && x != j));
            }
        }
        out
    }

    /// `Σ |W_ij|` over all pairs.
    pub fn w_total(&self) -> usize {
        let m = self.family_len;
        (0..m)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .map(|(i, j)| self.w_set(i, j).len())
            .sum()
    }

    /// Number of sets `W_jk` containing each index.
    pub fn w_membership(&self) -> Vec<usize> {
        let m = self.family_len;
        let mut counts = vec![0; m];
        for j in 0..m {
            for i in 0..j {
                for l in self.w_set(i, j) {
                    counts[l] += 1;
                }
            }
        }
        counts
    }
}

/// `W_ij` computed directly.
pub fn w_set(fam: &PathFamily, i: usize, j: usize, budget: u64) -> Result<BTreeSet<usize>> {
    distinct(&[i, j], fam.len())?;
    let m = fam.len();
    if (m as u64).saturating_mul(m as u64) > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    let mut out = BTreeSet::new();
    for l in (0..m).filter(|&l| l != i && l != j) {
        if feasible_cycle(fam, &[i, j, l]).is_some()
            || (0..m)
                .filter(|&k| k != i && k != j && k != l)
                .any(|k| feasible_cycle(fam, &[i, j, k, l]).is_some())
        {
            out.insert(l);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::bcfy_construct;
    use crate::ear::{build_family, ear_decompose};

    #[test]
    fn guards() {
        let g = bcfy_construct(3).unwrap();
        let fam = build_family(ear_decompose(g.graph(), (0, 1)).unwrap());
        assert!(feasible_triple(&fam, 0, 0, 1).is_err());
        assert!(feasible_quadruple(&fam, 0, 1, 2, 3).is_err());
    }

    #[test]
    fn witnesses_meet_every_private_set() {
        let g = bcfy_construct(4).unwrap();
        let fam = build_family(ear_decompose(g.graph(), (0, 1)).unwrap());
        let idx = FeasibilityIndex::build(&fam, u64::MAX).unwrap();
        for t in &idx.triples {
            let c = feasible_cycle(&fam, t).unwrap();
            let edges = fam.graph().cycle_edges(&c).unwrap();
            for &a in t {
                let p = private_edges(&fam, t, a);
                assert!(p.is_empty() || p.intersects(&edges));
            }
        }
        for i in 0..fam.len() {
            for j in i + 1..fam.len() {
                assert_eq!(idx.w_set(i, j), w_set(&fam, i, j, u64::MAX).unwrap());
            }
        }
    }
}
