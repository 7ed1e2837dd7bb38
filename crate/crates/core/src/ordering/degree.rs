use std::collections::BTreeMap;

use serde::Serialize;

use super::separator::SeparatorFamily;
use crate::ear::PathFamily;
use crate::error::{Error, Result};
use crate::log2;

/// Where the band `[β, γ]` came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum BandChoice {
    /// `[α_{j0-1}, α_{j0}]` with the fewest edges.
    Geometric { j0: usize },
    /// Too few vertices for a geometric band: `[1, |P|]`.
    Fallback,
    Explicit,
}

/// Edge degrees over the varying edges of a separator family, and the band
/// `[β, γ]` used by the ordering.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeProfile {
    /// Number of members containing each varying edge, by edge id.
    pub degree: BTreeMap<usize, usize>,
    pub beta: f64,
    pub gamma: f64,
    /// `A = ⌈log n / (4 log log n)⌉ - 2`.
    pub band_count: i64,
    /// `α_j = n^{1/4} (log n)^{j+1}` for `0 ≤ j ≤ A`.
    pub alphas: Vec<f64>,
    pub choice: BandChoice,
    /// Edges with `β ≤ d(e) ≤ γ`.
    pub in_band: usize,
}

impl DegreeProfile {
    pub fn d(&self, e: usize) -> usize {
        self.degree.get(&e).copied().unwrap_or(0)
    }

    /// Edges with `d(e) ≥ γ`.
    pub fn high(&self) -> impl Iterator<Item = usize> + '_ {
        self.degree
            .iter()
            .filter(|&(_, &d)| d as f64 >= self.gamma)
            .map(|(&e, _)| e)
    }

    fn count_in(&self, lo: f64, hi: f64) -> usize {
        self.degree
            .values()
            .filter(|&&d| lo <= d as f64 && d as f64 <= hi)
            .count()
    }

    /// Same degrees with the band replaced. A missing `γ` defaults to
    /// `β log n` and a missing `β` to `γ / log n`.
    pub fn with_band(mut self, n: usize, beta: Option<f64>, gamma: Option<f64>) -> Result<Self> {
        let ln = log2(n.max(2) as f64);
        let (beta, gamma) = match (beta, gamma) {
            (None, None) => return Ok(self),
            (Some(b), Some(g)) => (b, g),
            (Some(b), None) => (b, b * ln),
            (None, Some(g)) => (g / ln, g),
        };
        if !(beta > 0.0 && beta <= gamma && gamma.is_finite()) {
            return Err(Error::InvalidInput(format!("band needs 0 < beta <= gamma, got [{beta}, {gamma}]")));
        }
        self.beta = beta;
        self.gamma = gamma;
        self.choice = BandChoice::Explicit;
        self.in_band = self.count_in(beta, gamma);
        Ok(self)
    }
}

/// `A` for an `n`-vertex graph; negative for every desk-sized `n`.
pub fn band_count(n: usize) -> i64 {
    let ln = log2(n as f64);
    let lln = log2(ln);
    if lln.is_nan() || lln <= 0.0 {
        return -2;
    }
    (ln / (4.0 * lln)).ceil() as i64 - 2
}

pub fn degree_profile(fam: &PathFamily, sep: &SeparatorFamily) -> DegreeProfile {
    let mut degree = BTreeMap::new();
    for e in sep.varying.iter() {
        let d = sep.paths.iter().filter(|&&p| fam.path(p).edges.contains(e)).count();
        degree.insert(e, d);
    }
    let n = fam.graph().n();
    let a = band_count(n);
    let ln = log2(n as f64);
    let alphas: Vec<f64> = (0..=a.max(-1))
        .map(|j| (n as f64).powf(0.25) * ln.powi(j as i32 + 1))
        .collect();
    let mut profile = DegreeProfile {
        degree,
        beta: 1.0,
        gamma: sep.len().max(1) as f64,
        band_count: a,
        alphas,
        choice: BandChoice::Fallback,
        in_band: 0,
    };
    if a >= 1 {
        let j0 = (1..=a as usize)
            .min_by_key(|&j| (profile.count_in(profile.alphas[j - 1], profile.alphas[j]), j))
            .unwrap();
        profile.beta = profile.alphas[j0 - 1];
        profile.gamma = profile.alphas[j0];
        profile.choice = BandChoice::Geometric { j0 };
    }
    profile.in_band = profile.count_in(profile.beta, profile.gamma);
    profile
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::bcfy_construct;
    use crate::ear::{build_family, ear_decompose};
    use crate::ordering::separator;

    #[test]
    fn band_count_is_negative_at_desk_scale() {
        assert!(band_count(40) < 1);
        assert!(band_count(1 << 20) < 1);
        assert!(band_count(usize::MAX) >= 1);
    }

    #[test]
    fn degrees_count_containing_members() {
        let g = bcfy_construct(4).unwrap();
        let fam = build_family(ear_decompose(g.graph(), (0, 1)).unwrap());
        let all: Vec<usize> = (0..fam.len()).collect();
        let sep = separator(&fam, &all).unwrap();
        let prof = degree_profile(&fam, &sep);
        assert_eq!(prof.choice, BandChoice::Fallback);
        assert_eq!(prof.degree.len(), sep.varying.len());
        for (&e, &d) in &prof.degree {
            assert!((1..all.len()).contains(&d), "edge {e} has degree {d}");
        }
        let prof = prof.with_band(g.graph().n(), Some(2.0), None).unwrap();
        assert_eq!(prof.choice, BandChoice::Explicit);
        assert!((prof.gamma - 2.0 * log2(g.graph().n() as f64)).abs() < 1e-9);
    }

    #[test]
    fn rejects_inverted_band() {
        let g = bcfy_construct(3).unwrap();
        let fam = build_family(ear_decompose(g.graph(), (0, 1)).unwrap());
        let sep = separator(&fam, &[0, 1, 2]).unwrap();
        let prof = degree_profile(&fam, &sep);
        assert!(prof.with_band(14, Some(3.0), Some(2.0)).is_err());
    }
}
