//! Ear decomposition from a fixed edge `uv`, the trees `L` and `R`, the
//! family of `(u, v)`-paths they induce, and the analysis of pairs, triples
//! and quadruples of those paths.

mod checks;
mod decompose;
mod family;
mod feasible;
mod membership;
mod pairs;

pub use checks::{check_few_cycles, check_structure, Check, CheckReport};
pub use decompose::{ear_decompose, EarDecomposition};
pub use family::{build_family, FamilyPath, PathFamily};
pub use feasible::{feasible_cycle, feasible_quadruple, feasible_triple, w_set, FeasibilityIndex};
pub use membership::{ab_membership, mn_membership, AbClass, MnClass};
pub use pairs::{
    classify_all, classify_pair, crossing, difference_components, pair_structure, primary_segment,
    splitting_vertices, symmetric_difference, Divergence, PairClassification, PairKind, PairStructure, Subpath,
};
