//! Graphs in which no two cycles have the same length.
//!
//! The crate builds the extremal Sidon-chord construction, enumerates cycle
//! spectra, decomposes 2-connected graphs into ears with the associated
//! family of `(u, v)`-paths, classifies path pairs, runs the path-ordering
//! and counting machinery over those families, and searches small orders
//! exhaustively.

pub mod certificate;
pub mod construct;
pub mod cycles;
pub mod ear;
pub mod error;
pub mod graph;
pub mod ordering;
pub mod random;
pub mod search;
pub mod sidon;

pub use error::{Error, Result};
pub use graph::{EdgeSet, Graph};

/// `log2`, the logarithm used by every bound in this crate.
pub fn log2(x: f64) -> f64 {
    x.log2()
}

/// Edge ceiling `n + sqrt(n) + 20 sqrt(n / log n)` for repeat-free
/// 2-connected graphs, checked on every certified graph.
pub fn refined_edge_bound(n: usize) -> f64 {
    let n = n as f64;
    if n < 2.0 {
        return f64::INFINITY;
    }
    n + n.sqrt() + 20.0 * (n / log2(n)).sqrt()
}
