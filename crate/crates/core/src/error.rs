//! Error type shared across the library.

use thiserror::Error;

/// Everything that can go wrong when driving the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("chain must contain at least 2 spins, got n = {0}")]
    ChainTooSmall(usize),
    #[error("chain size n = {0} exceeds the supported maximum of 64 spins")]
    ChainTooLarge(usize),
    #[error("coupling strength must be positive, got j = {0}")]
    NonPositiveCoupling(f64),
    #[error("power-law exponent must be non-negative, got alpha = {0}")]
    NegativeAlpha(f64),
    #[error("truncation range must satisfy 1 <= r <= n-1, got r = {range} for n = {n}")]
    InvalidRange { range: usize, n: usize },
    #[error("spin index {index} is outside 1..={n}")]
    SpinIndexOutOfRange { index: usize, n: usize },
    #[error("coupling needs two distinct spins, got i = j = {0}")]
    CoincidentSpins(usize),
    #[error("configuration {bits:#x} sets bits beyond the {n}-spin chain")]
    ConfigOutOfRange { bits: u64, n: usize },
    #[error("block must start at index >= 1 and contain at least one spin")]
    InvalidBlock,
    #[error("block spins {start}..={end} do not fit in a chain of {n} spins")]
    BlockOutOfRange { start: usize, end: usize, n: usize },
    #[error("{what} is capped at {cap} spins, got {size}")]
    ResourceLimit {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("time grid must not be empty")]
    EmptyGrid,
    #[error("time grid must be strictly increasing")]
    NonMonotonicGrid,
    #[error("uniform grid needs t_max > 0, got {0}")]
    NonPositiveTMax(f64),
    #[error("uniform grid needs at least 2 steps, got {0}")]
    TooFewSteps(usize),
    #[error("relaxation time needs at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("frequency multiset must not be empty")]
    EmptyFrequencies,
    #[error("frequency {0} is not finite")]
    NonFiniteFrequency(f64),
    #[error("histogram needs at least one bin")]
    NoBins,
    #[error("histogram needs at least two strictly increasing bin edges")]
    InvalidEdges,
    #[error("frequency {value} lies outside the bin range [{lo}, {hi}]")]
    FrequencyOutOfBins { value: f64, lo: f64, hi: f64 },
}
