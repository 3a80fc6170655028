//! Quench dynamics of quantum coherence in a power-law Ising chain.
//!
//! Models a chain of `n` spins coupled by `J_ij = J / |i - j|^alpha`
//! (optionally truncated beyond a hard range), prepared in the
//! equal-weight superposition of all x-basis product states and evolved
//! under the diagonal interaction alone. Because every eigenstate is a
//! product state, reduced density matrices, coherence factors, relaxation
//! times and effective-frequency spectra all admit exact closed forms: no
//! state vector is ever materialized, and the factorized kernels reach
//! the full chain sizes of interest in milliseconds per curve.
//!
//! Brute-force enumeration paths are kept alongside the factorized ones
//! and serve as independent oracles in the test suite.
//!
//! Everything is generic over the floating-point scalar through
//! [`scalar::Scalar`]; the `*64` aliases below cover the common
//! double-precision case. Energies are expressed in units of `J` and
//! times in units of `1/J` unless a dimensionful `j` is supplied.

// negated float comparisons like `!(j > 0)` are deliberate NaN guards
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coherence;
pub mod error;
pub mod model;
pub mod scalar;
pub mod spectrum;

pub use coherence::{
    block_coherence, block_coherence_with_caps, initial_coherence, reduced_density_matrix,
    reduced_density_matrix_with_caps, series, series_with_caps, single_spin_brute,
    single_spin_brute_with_caps, single_spin_factorized, uniform_grid, CoherenceSeries, Method,
    Relaxation, ReducedDensityMatrix, Target,
};
pub use error::Error;
pub use model::{BlockSpec, CouplingModel, SpinConfig, Truncation};
pub use scalar::Scalar;
pub use spectrum::{
    effective_frequencies, effective_frequencies_with_caps, histogram, Bins, FrequencyHistogram,
    Normalization,
};

/// Size caps guarding the exponential enumeration paths.
///
/// The factorized kernels have no comparable limits; these only bound the
/// brute-force oracles and the materialized reduced density matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest chain the brute-force coherence paths will enumerate.
    pub brute_spins: usize,
    /// Largest block length for reduced density matrices and the
    /// difference-pattern coherence sum.
    pub block_len: usize,
    /// Largest chain for effective-frequency enumeration.
    pub spectrum_spins: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            brute_spins: 20,
            block_len: 12,
            spectrum_spins: 24,
        }
    }
}

/// Double-precision aliases for the common case.
pub type CouplingModel64 = model::CouplingModel<f64>;
pub type CoherenceSeries64 = coherence::CoherenceSeries<f64>;
pub type ReducedDensityMatrix64 = coherence::ReducedDensityMatrix<f64>;
pub type FrequencyHistogram64 = spectrum::FrequencyHistogram<f64>;
