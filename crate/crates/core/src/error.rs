use thiserror::Error;

use crate::cycles::CycleSpectrum;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("{what} = {value} is outside the supported range (max {max})")]
    OutOfRange {
        what: &'static str,
        value: u64,
        max: u64,
    },

    #[error("budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },

    /// The partial spectrum is kept so callers can still report it, flagged
    /// non-authoritative.
    #[error("cycle cap of {cap} exceeded")]
    CapExceeded {
        cap: u64,
        partial: Box<CycleSpectrum>,
    },

    #[error("order {0} is too small (need n >= 8)")]
    TooSmall(usize),

    #[error("graph is not 2-connected")]
    NotTwoConnected,

    #[error("edge ({0}, {1}) is not in the graph")]
    MissingEdge(usize, usize),

    #[error("pair ({i}, {j}) is {found}, expected {expected}")]
    WrongPairType {
        i: usize,
        j: usize,
        expected: &'static str,
        found: &'static str,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
