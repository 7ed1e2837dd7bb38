//! Ordering a subset of the path family so that the paths through any
//! heavily used edge sit nearly consecutively, and the counting audit run
//! over that order.

mod arrange;
mod audit;
mod checks;
mod degree;
mod separator;

use serde::Serialize;

pub use arrange::{fences, first_split, high_trees, intervals, last_split, order_paths, HighTrees, OrderedFamily, Step};
pub use audit::{
    consecutiveness_report, counting_audit, prune_paths, prune_with_index, AuditDiagnostics, CountingAudit,
    EdgeConsecutiveness, PhiPair, PruneReport, PruneThresholds,
};
pub use checks::{check_arrangement, check_pruned};
pub use degree::{band_count, degree_profile, BandChoice, DegreeProfile};
pub use separator::{separator, SeparatorFamily};

use crate::ear::{CheckReport, PathFamily};
use crate::error::Result;

/// Everything computed for one subset.
#[derive(Debug, Clone, Serialize)]
pub struct OrderingReport {
    pub separator: SeparatorFamily,
    pub profile: DegreeProfile,
    pub ordered: OrderedFamily,
    pub checks: CheckReport,
    pub audit: CountingAudit,
    pub consecutiveness: Vec<EdgeConsecutiveness>,
}

/// Separator, degrees, arrangement, checks and audit for `subset`, with an
/// optional explicit band.
pub fn run_ordering(
    fam: &PathFamily,
    subset: &[usize],
    beta: Option<f64>,
    gamma: Option<f64>,
    cap: u64,
) -> Result<OrderingReport> {
    let sep = separator(fam, subset)?;
    let profile = degree_profile(fam, &sep).with_band(fam.graph().n(), beta, gamma)?;
    let ordered = order_paths(fam, &sep, &profile);
    let checks = check_arrangement(fam, &sep, &profile, &ordered);
    let audit = counting_audit(fam, &ordered, &profile, cap)?;
    let consecutiveness = consecutiveness_report(fam, &ordered, &profile);
    Ok(OrderingReport {
        separator: sep,
        profile,
        ordered,
        checks,
        audit,
        consecutiveness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::bcfy_construct;
    use crate::cycles::DEFAULT_CAP;
    use crate::ear::{build_family, ear_decompose};

    #[test]
    fn chorded_families_order_cleanly() {
        for q in [2, 3, 4, 5] {
            let g = bcfy_construct(q).unwrap();
            let fam = build_family(ear_decompose(g.graph(), (0, 1)).unwrap());
            let all: Vec<usize> = (0..fam.len()).collect();
            for gamma in [None, Some(1.0), Some(2.0), Some(3.0)] {
                let beta = gamma.map(|g: f64| (g / 2.0).max(1.0));
                let rep = run_ordering(&fam, &all, beta, gamma, DEFAULT_CAP).unwrap();
                let bad: Vec<_> = rep.checks.failures().collect();
                assert!(bad.is_empty(), "q={q} γ={gamma:?}: {bad:?}");
                assert!(rep.audit.consistent(), "q={q}: {:?}", rep.audit);
                assert!(rep.audit.diagnostics.distinct_lengths);
            }
        }
    }

    #[test]
    fn empty_phi_has_zero_sigma() {
        let g = bcfy_construct(2).unwrap();
        let fam = build_family(ear_decompose(g.graph(), (0, 1)).unwrap());
        let rep = run_ordering(&fam, &[0], None, None, DEFAULT_CAP).unwrap();
        assert!(rep.audit.phi.is_empty());
        assert_eq!(rep.audit.sigma_pairs, 0);
        assert_eq!(rep.audit.sigma_edges, 0);
    }

    #[test]
    fn edge_on_first_path_only_needs_no_deletions() {
        let g = bcfy_construct(4).unwrap();
        let fam = build_family(ear_decompose(g.graph(), (0, 1)).unwrap());
        let all: Vec<usize> = (0..fam.len()).collect();
        let rep = run_ordering(&fam, &all, Some(1.0), Some(1.0), DEFAULT_CAP).unwrap();
        let first = rep.ordered.arrangement[0];
        for c in &rep.consecutiveness {
            let holders: Vec<usize> = rep
                .ordered
                .arrangement
                .iter()
                .filter(|&&p| fam.path(p).edges.contains(c.edge))
                .copied()
                .collect();
            if holders == [first] || holders.len() == all.len() {
                assert_eq!(c.tail_deletions, 0);
                assert_eq!(c.interval_deletions, 0);
            }
        }
    }

    #[test]
    fn prune_extremes() {
        let g = bcfy_construct(3).unwrap();
        let fam = build_family(ear_decompose(g.graph(), (0, 1)).unwrap());
        let all: Vec<usize> = (0..fam.len()).collect();
        let inf = PruneThresholds {
            w: f64::INFINITY,
            t: f64::INFINITY,
        };
        assert_eq!(prune_paths(&fam, &all, inf, 0).unwrap().kept, all);
        let zero = PruneThresholds { w: 0.0, t: 0.0 };
        assert!(prune_paths(&fam, &all, zero, u64::MAX).unwrap().kept.is_empty());
        assert!(prune_paths(&fam, &all, zero, 0).is_err());
    }
}
