use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::arrange::OrderedFamily;
use super::checks::special_pairs;
use super::degree::DegreeProfile;
use crate::cycles::list_cycles;
use crate::ear::{classify_pair, FeasibilityIndex, PairKind, PathFamily};
use crate::error::Result;
use crate::log2;

/// A pair of arrangement positions `j < k` counted by the audit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PhiPair {
    pub j: usize,
    pub k: usize,
    /// `|E(g_j) Δ E(g_k)|`.
    pub difference: usize,
    /// Length of the unique cycle of `g_j Δ g_k`, if there is exactly one.
    pub cycle_length: Option<usize>,
}

/// Sums of `δ(e, g_j, g_k)` over the normal pairs in one interval whose
/// positions are between `β` and `√(βγ)` apart.
#[derive(Debug, Clone, Serialize)]
pub struct CountingAudit {
    pub phi: Vec<PhiPair>,
    /// Summed pair by pair: `Σ |g_j Δ g_k|`.
    pub sigma_pairs: usize,
    /// Summed edge by edge: `Σ_e #{pairs separated by e}`.
    pub sigma_edges: usize,
    /// Sum of the enumerated cycle lengths.
    pub sigma_cycles: usize,
    /// Pairs whose difference is not a single cycle.
    pub non_cycles: usize,
    /// Nonzero per-edge sums by edge id.
    pub per_edge: BTreeMap<usize, usize>,
    pub diagnostics: AuditDiagnostics,
}

impl CountingAudit {
    pub fn consistent(&self) -> bool {
        self.sigma_pairs == self.sigma_edges && self.non_cycles == 0 && self.sigma_cycles == self.sigma_pairs
    }
}

/// Both sides of the two estimates on `Σ`, for plotting; nothing here is
/// asserted.
#[derive(Debug, Clone, Serialize)]
pub struct AuditDiagnostics {
    pub phi_count: usize,
    /// `1 + 2 + ... + |Φ|`.
    pub triangular: usize,
    pub half_square: f64,
    /// Whether the cycles of `Φ` have pairwise distinct lengths.
    pub distinct_lengths: bool,
    pub max_edge_sum: usize,
    /// `Σ_{r=β}^{√(βγ)} r + 6βγ/√log n`.
    pub edge_sum_bound: f64,
    pub high_edges: usize,
    pub band_edges: usize,
    pub low_edges: usize,
    /// Largest sum over edges with `d(e) ≥ γ` or `d(e) ≤ β`.
    pub max_outside_band: usize,
}

fn span(prof: &DegreeProfile) -> (f64, f64) {
    (prof.beta, (prof.beta * prof.gamma).sqrt())
}

pub fn counting_audit(fam: &PathFamily, ord: &OrderedFamily, prof: &DegreeProfile, cap: u64) -> Result<CountingAudit> {
    let a = &ord.arrangement;
    let (lo, hi) = span(prof);
    let mut candidates = Vec::new();
    for &(s, e) in &ord.intervals {
        for j in s..e {
            for k in j + 1..e {
                let gap = (k - j) as f64;
                if lo <= gap && gap <= hi {
                    candidates.push((j, k));
                }
            }
        }
    }
    let g = fam.graph();
    let phi: Vec<PhiPair> = candidates
        .par_iter()
        .filter(|&&(j, k)| matches!(classify_pair(fam, a[j], a[k]).kind, PairKind::Normal))
        .map(|&(j, k)| {
            let diff = fam.path(a[j]).edges.symmetric_difference(&fam.path(a[k]).edges);
            let cycles = list_cycles(&g.edge_subgraph(&diff), cap)?;
            Ok(PhiPair {
                j,
                k,
                difference: diff.len(),
                cycle_length: (cycles.len() == 1).then(|| cycles[0].len()),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let sigma_pairs = phi.iter().map(|p| p.difference).sum();
    let per_edge: BTreeMap<usize, usize> = (0..g.edge_count())
        .into_par_iter()
        .map(|e| {
            let t = phi
                .iter()
                .filter(|p| fam.path(a[p.j]).edges.contains(e) != fam.path(a[p.k]).edges.contains(e))
                .count();
            (e, t)
        })
        .filter(|&(_, t)| t > 0)
        .collect();
    let sigma_edges = per_edge.values().sum();
    let sigma_cycles = phi.iter().filter_map(|p| p.cycle_length).sum();
    let non_cycles = phi.iter().filter(|p| p.cycle_length.is_none()).count();

    let mut lengths: Vec<usize> = phi.iter().filter_map(|p| p.cycle_length).collect();
    lengths.sort_unstable();
    let distinct_lengths = lengths.windows(2).all(|w| w[0] != w[1]);
    let n = g.n() as f64;
    let r_sum: f64 = {
        let (b, t) = (lo.ceil() as usize, hi.floor() as usize);
        (b..=t).map(|r| r as f64).sum()
    };
    let (mut high, mut band, mut low) = (0, 0, 0);
    for &d in prof.degree.values() {
        let d = d as f64;
        if d >= prof.gamma {
            high += 1;
        } else if d <= prof.beta {
            low += 1;
        } else {
            band += 1;
        }
    }
    let max_outside_band = per_edge
        .iter()
        .filter(|(e, _)| {
            let d = prof.d(**e) as f64;
            d >= prof.gamma || d <= prof.beta
        })
        .map(|(_, &t)| t)
        .max()
        .unwrap_or(0);
    let m = phi.len();
    let diagnostics = AuditDiagnostics {
        phi_count: m,
        triangular: m * (m + 1) / 2,
        half_square: (m * m) as f64 / 2.0,
        distinct_lengths,
        max_edge_sum: per_edge.values().copied().max().unwrap_or(0),
        edge_sum_bound: r_sum + 6.0 * prof.beta * prof.gamma / log2(n.max(2.0)).sqrt(),
        high_edges: high,
        band_edges: band,
        low_edges: low,
        max_outside_band,
    };
    Ok(CountingAudit {
        phi,
        sigma_pairs,
        sigma_edges,
        sigma_cycles,
        non_cycles,
        per_edge,
        diagnostics,
    })
}

/// Deletions needed to make the members containing one edge consecutive.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeConsecutiveness {
    pub edge: usize,
    pub d: usize,
    /// Minimum deletions after which, past the first container, no
    /// non-container is followed by a container.
    pub tail_deletions: usize,
    /// Minimum deletions after which at most one interval mixes containers
    /// and non-containers, and there the containers come first.
    pub interval_deletions: usize,
    pub within_2beta: bool,
    pub within_3beta: bool,
}

/// Cheapest way to make `has` read `true...true false...false` by deleting
/// entries.
fn prefix_cost(has: &[bool]) -> usize {
    let total_true = has.iter().filter(|&&h| h).count();
    let mut best = total_true;
    let (mut falses, mut trues) = (0, 0);
    for &h in has {
        if h {
            trues += 1;
        } else {
            falses += 1;
        }
        best = best.min(falses + total_true - trues);
    }
    best
}

/// For every edge with `d(e) ≥ γ`, the exact minimum number of deletions
/// for both consecutiveness conditions.
pub fn consecutiveness_report(fam: &PathFamily, ord: &OrderedFamily, prof: &DegreeProfile) -> Vec<EdgeConsecutiveness> {
    let a = &ord.arrangement;
    prof.high()
        .map(|e| {
            let has: Vec<bool> = a.iter().map(|&p| fam.path(p).edges.contains(e)).collect();
            let first = has.iter().position(|&h| h).unwrap_or(has.len());
            let tail = if first < has.len() { prefix_cost(&has[first + 1..]) } else { 0 };
            let mut pure_total = 0;
            let mut best_gain = 0;
            for &(s, t) in &ord.intervals {
                let part = &has[s..t];
                let c = part.iter().filter(|&&h| h).count();
                let pure = c.min(part.len() - c);
                pure_total += pure;
                best_gain = best_gain.max(pure - prefix_cost(part));
            }
            let interval = pure_total - best_gain;
            EdgeConsecutiveness {
                edge: e,
                d: prof.d(e),
                tail_deletions: tail,
                interval_deletions: interval,
                within_2beta: tail as f64 <= 2.0 * prof.beta,
                within_3beta: interval as f64 <= 3.0 * prof.beta,
            }
        })
        .collect()
}

/// Membership thresholds for pruning.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PruneThresholds {
    /// Drop a path lying in at least this many sets `W_jk`.
    pub w: f64,
    /// Drop a path lying in at least this many type-I or type-II pairs.
    pub t: f64,
}

impl PruneThresholds {
    /// `26 √n log n` and `n^{1/4}`.
    pub fn standard(n: usize) -> Self {
        let n = n as f64;
        PruneThresholds {
            w: 26.0 * n.sqrt() * log2(n),
            t: n.powf(0.25),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PruneReport {
    pub kept: Vec<usize>,
    pub removed: Vec<usize>,
    /// Per member of the input subset: `(path, W-set count, special-pair count)`.
    pub counts: Vec<(usize, usize, usize)>,
}

/// Removes every member of `subset` that lies in too many sets `W_jk`
/// (pairs taken inside `subset`) or in too many type-I/type-II pairs inside
/// `subset`. Feasibility is only computed when the `W` threshold is finite.
pub fn prune_paths(fam: &PathFamily, subset: &[usize], th: PruneThresholds, budget: u64) -> Result<PruneReport> {
    let index = if th.w.is_finite() {
        Some(FeasibilityIndex::build(fam, budget)?)
    } else {
        None
    };
    Ok(prune_with_index(fam, index.as_ref(), subset, th))
}

pub fn prune_with_index(
    fam: &PathFamily,
    index: Option<&FeasibilityIndex>,
    subset: &[usize],
    th: PruneThresholds,
) -> PruneReport {
    let mut members = subset.to_vec();
    members.sort_unstable();
    members.dedup();
    let mut w_count: BTreeMap<usize, usize> = members.iter().map(|&p| (p, 0)).collect();
    if let Some(index) = index {
        for (x, &i) in members.iter().enumerate() {
            for &j in &members[x + 1..] {
                for l in index.w_set(i, j) {
                    if let Some(c) = w_count.get_mut(&l) {
                        *c += 1;
                    }
                }
            }
        }
    }
    let mut t_count: BTreeMap<usize, usize> = members.iter().map(|&p| (p, 0)).collect();
    if th.t.is_finite() {
        for (i, j, _) in special_pairs(fam, &members) {
            *t_count.get_mut(&i).unwrap() += 1;
            *t_count.get_mut(&j).unwrap() += 1;
        }
    }
    let mut report = PruneReport {
        kept: Vec::new(),
        removed: Vec::new(),
        counts: Vec::new(),
    };
    for &p in &members {
        let (w, t) = (w_count[&p], t_count[&p]);
        report.counts.push((p, w, t));
        if w as f64 >= th.w || t as f64 >= th.t {
            report.removed.push(p);
        } else {
            report.kept.push(p);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_costs() {
        assert_eq!(prefix_cost(&[]), 0);
        assert_eq!(prefix_cost(&[true, true, false]), 0);
        assert_eq!(prefix_cost(&[false, true]), 1);
        assert_eq!(prefix_cost(&[true, false, true, false, true]), 2);
        assert_eq!(prefix_cost(&[false, false, true, true, true]), 2);
    }

    /// Exhaustive over deletion sets of short sequences.
    #[test]
    fn prefix_cost_matches_brute_force() {
        for len in 0..10usize {
            for mask in 0u32..1 << len {
                let has: Vec<bool> = (0..len).map(|i| mask >> i & 1 == 1).collect();
                let mut best = usize::MAX;
                for del in 0u32..1 << len {
                    let kept: Vec<bool> = (0..len).filter(|i| del >> i & 1 == 0).map(|i| has[i]).collect();
                    if kept.windows(2).all(|w| w[0] || !w[1]) {
                        best = best.min(del.count_ones() as usize);
                    }
                }
                assert_eq!(prefix_cost(&has), best, "{has:?}");
            }
        }
    }
}
