//! Integer Sidon sets: predicates, exact maxima by branch-and-bound, and the
//! greedy (Mian-Chowla) baseline.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which collision-freeness a Sidon set must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// All sums `a_i + a_j` with `i < j` distinct.
    StrictSums,
    /// All differences `a_j - a_i` with `i < j` distinct (equivalently all
    /// sums with `i <= j` distinct).
    #[default]
    DistinctDifferences,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SidonSet {
    pub n: u64,
    pub convention: Convention,
    pub elements: Vec<u64>,
}

impl SidonSet {
    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

/// Default largest universe `max_sidon_exact` accepts.
pub const DEFAULT_MAX_N: u64 = 64;

/// `elements` must be sorted, distinct and positive.
pub fn is_sidon(elements: &[u64], convention: Convention) -> Result<bool> {
    if elements.first() == Some(&0) {
        return Err(Error::InvalidInput("Sidon elements must be positive".into()));
    }
    if elements.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "Sidon elements must be sorted and distinct".into(),
        ));
    }
    let mut seen = std::collections::HashSet::new();
    for (j, &b) in elements.iter().enumerate() {
        for &a in &elements[..j] {
            let key = match convention {
                Convention::StrictSums => a + b,
                Convention::DistinctDifferences => b - a,
            };
            if !seen.insert(key) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Collision bitmap for the chosen convention: differences live in
/// `1..n`, strict sums in `3..2n`.
struct Collisions {
    convention: Convention,
    used: Vec<bool>,
}

impl Collisions {
    fn new(n: u64, convention: Convention) -> Self {
        Collisions {
            convention,
            used: vec![false; 2 * n as usize + 1],
        }
    }

    fn key(&self, a: u64, b: u64) -> usize {
        match self.convention {
            Convention::StrictSums => (a + b) as usize,
            Convention::DistinctDifferences => b.abs_diff(a) as usize,
        }
    }

    /// Adds `x` against `set` if no collision arises; leaves state untouched
    /// otherwise.
    fn try_add(&mut self, set: &[u64], x: u64) -> bool {
        let mut added = Vec::with_capacity(set.len());
        for &a in set {
            let k = self.key(a, x);
            if self.used[k] || added.contains(&k) {
                for &k in &added {
                    self.used[k] = false;
                }
                return false;
            }
            self.used[k] = true;
            added.push(k);
        }
        true
    }

    fn remove(&mut self, set: &[u64], x: u64) {
        for &a in set {
            let k = self.key(a, x);
            self.used[k] = false;
        }
    }
}

/// Largest `k` with `C(k, 2) <= slots`.
fn counting_bound(slots: u64) -> usize {
    let mut k = 1u64;
    while (k + 1) * k / 2 <= slots {
        k += 1;
    }
    k as usize
}

/// Maximum Sidon subset of `{1..n}` under `convention`, lexicographically
/// least among maximum ones. Universes above `max_n` are refused; the search
/// also gives up after `node_budget` branch-and-bound nodes.
pub fn max_sidon_exact(n: u64, convention: Convention, max_n: u64, node_budget: u64) -> Result<SidonSet> {
    if n == 0 {
        return Err(Error::InvalidInput("universe must be at least 1".into()));
    }
    if n > max_n {
        return Err(Error::BudgetExceeded { budget: max_n });
    }
    // best[len] = maximum size within a universe of `len` consecutive
    // integers. Translation invariance lets the suffix after the current
    // largest element reuse smaller answers.
    let mut best = vec![0usize; n as usize + 1];
    let mut nodes = 0u64;
    let mut witness = Vec::new();
    for len in 1..=n {
        let slots = match convention {
            Convention::DistinctDifferences => len - 1,
            Convention::StrictSums => (2 * len).saturating_sub(3),
        };
        let cap = counting_bound(slots).min(len as usize);
        let mut search = Search {
            n: len,
            best_by_len: &best,
            cap,
            current: Vec::new(),
            collisions: Collisions::new(len, convention),
            best: Vec::new(),
            nodes: &mut nodes,
            budget: node_budget,
        };
        search.run()?;
        let found = search.best;
        best[len as usize] = found.len();
        witness = found;
    }
    Ok(SidonSet {
        n,
        convention,
        elements: witness,
    })
}

struct Search<'a> {
    n: u64,
    best_by_len: &'a [usize],
    cap: usize,
    current: Vec<u64>,
    collisions: Collisions,
    best: Vec<u64>,
    nodes: &'a mut u64,
    budget: u64,
}

impl Search<'_> {
    fn run(&mut self) -> Result<()> {
        // Element 1 can always be present in some maximum set (translate
        // down), and fixing it keeps the lexicographic tie-break.
        self.current.push(1);
        self.best = self.current.clone();
        self.descend(1)
    }

    fn descend(&mut self, last: u64) -> Result<()> {
        *self.nodes += 1;
        if *self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        if self.best.len() == self.cap {
            return Ok(());
        }
        for x in last + 1..=self.n {
            // Elements after x live in a window of n - x integers.
            let bound = self.current.len() + 1 + self.best_by_len[(self.n - x) as usize];
            if bound.min(self.cap) <= self.best.len() {
                // Later x only shrink the window.
                break;
            }
            if !self.collisions.try_add(&self.current, x) {
                continue;
            }
            self.current.push(x);
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            self.descend(x)?;
            self.current.pop();
            self.collisions.remove(&self.current, x);
            if self.best.len() == self.cap {
                break;
            }
        }
        Ok(())
    }
}

/// Greedy set: starting from 1, repeatedly add the smallest integer in
/// `1..=n` that keeps all differences distinct.
pub fn greedy_sidon(n: u64) -> SidonSet {
    let mut elements = Vec::new();
    let mut collisions = Collisions::new(n.max(1), Convention::DistinctDifferences);
    for x in 1..=n {
        if collisions.try_add(&elements, x) {
            elements.push(x);
        }
    }
    SidonSet {
        n,
        convention: Convention::DistinctDifferences,
        elements,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predicate_examples() {
        assert!(is_sidon(&[], Convention::StrictSums).unwrap());
        assert!(is_sidon(&[1, 2, 3], Convention::StrictSums).unwrap());
        assert!(!is_sidon(&[1, 2, 3], Convention::DistinctDifferences).unwrap());
        assert!(is_sidon(&[1, 2, 5, 7], Convention::DistinctDifferences).unwrap());
    }

    #[test]
    fn predicate_rejects_bad_input() {
        assert!(is_sidon(&[1, 1], Convention::StrictSums).is_err());
        assert!(is_sidon(&[3, 2], Convention::StrictSums).is_err());
        assert!(is_sidon(&[0, 2], Convention::StrictSums).is_err());
    }

    #[test]
    fn singleton_universe() {
        let s = max_sidon_exact(1, Convention::DistinctDifferences, DEFAULT_MAX_N, u64::MAX).unwrap();
        assert_eq!(s.elements, vec![1]);
    }

    #[test]
    fn universe_budget() {
        assert!(matches!(
            max_sidon_exact(65, Convention::DistinctDifferences, DEFAULT_MAX_N, u64::MAX),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            max_sidon_exact(30, Convention::DistinctDifferences, DEFAULT_MAX_N, 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn greedy_small() {
        assert_eq!(greedy_sidon(1).elements, vec![1]);
        assert_eq!(greedy_sidon(7).elements, vec![1, 2, 4]);
        assert_eq!(greedy_sidon(13).elements, vec![1, 2, 4, 8, 13]);
    }

    #[test]
    fn counting_bound_values() {
        assert_eq!(counting_bound(0), 1);
        assert_eq!(counting_bound(1), 2);
        assert_eq!(counting_bound(6), 4);
        assert_eq!(counting_bound(12), 5);
    }
}
