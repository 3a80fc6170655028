//! Coupling law, spin configurations, and eigenenergies of the diagonal
//! Ising chain.
//!
//! The chain couples every pair of spins through a power law,
//! `J_ij = J / |i - j|^alpha`, optionally truncated beyond a hard range.
//! All its eigenstates are x-basis product states, so the eigenenergies
//! are plain signed sums over the coupling table.

use crate::error::Error;
use crate::scalar::{as_f64, Scalar};

/// Hard upper bound on the chain length; configurations live in a `u64`.
pub const MAX_SPINS: usize = 64;

/// Interaction tail handling: full power law or a hard range cutoff.
///
/// `Range(1)`, `Range(2)`, `Range(3)` correspond to the nearest,
/// next-nearest and next-next-nearest neighbour truncations; `Range(n-1)`
/// is indistinguishable from `Exact` on a chain of `n` spins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// Keep the interaction between every pair.
    Exact,
    /// Zero the coupling for pairs farther apart than `r` sites.
    Range(usize),
}

/// A power-law coupled Ising chain with open boundaries.
///
/// Spin indices are 1-based on the public surface ("the tenth ion" is
/// index 10); distances are `|i - j|` along the line. Energies carry the
/// units of `j`, times the units of `1/j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingModel<T> {
    n: usize,
    j: T,
    alpha: T,
    truncation: Truncation,
}

impl<T: Scalar> CouplingModel<T> {
    /// Validate and build a model. `n >= 2`, `j > 0`, `alpha >= 0`, and a
    /// range cutoff must satisfy `1 <= r <= n-1`.
    pub fn new(n: usize, j: T, alpha: T, truncation: Truncation) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::ChainTooSmall(n));
        }
        if n > MAX_SPINS {
            return Err(Error::ChainTooLarge(n));
        }
        if !(j > T::zero()) {
            return Err(Error::NonPositiveCoupling(as_f64(j)));
        }
        if !(alpha >= T::zero()) {
            return Err(Error::NegativeAlpha(as_f64(alpha)));
        }
        if let Truncation::Range(r) = truncation {
            if r < 1 || r > n - 1 {
                return Err(Error::InvalidRange { range: r, n });
            }
        }
        Ok(Self {
            n,
            j,
            alpha,
            truncation,
        })
    }

    /// Number of spins in the chain.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Base coupling strength `J`.
    pub fn j(&self) -> T {
        self.j
    }

    /// Power-law exponent; `alpha = 0` means uniform all-to-all coupling.
    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// Interaction truncation in force.
    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub(crate) fn check_spin(&self, index: usize) -> Result<(), Error> {
        if (1..=self.n).contains(&index) {
            Ok(())
        } else {
            Err(Error::SpinIndexOutOfRange { index, n: self.n })
        }
    }

    /// Coupling `J_ij` between two distinct spins, zero beyond a range
    /// cutoff. Symmetric in `(i, j)`.
    pub fn coupling(&self, i: usize, j: usize) -> Result<T, Error> {
        self.check_spin(i)?;
        self.check_spin(j)?;
        if i == j {
            return Err(Error::CoincidentSpins(i));
        }
        Ok(self.coupling_at_distance(i.abs_diff(j)))
    }

    /// Coupling at separation `d >= 1`.
    pub(crate) fn coupling_at_distance(&self, d: usize) -> T {
        debug_assert!(d >= 1);
        if let Truncation::Range(r) = self.truncation {
            if d > r {
                return T::zero();
            }
        }
        self.j / T::from_usize(d).expect("distance fits any float").powf(self.alpha)
    }

    /// Couplings indexed by separation; entry `d` holds the coupling at
    /// distance `d` (entry 0 is unused and zero).
    pub(crate) fn distance_table(&self) -> Vec<T> {
        (0..self.n)
            .map(|d| {
                if d == 0 {
                    T::zero()
                } else {
                    self.coupling_at_distance(d)
                }
            })
            .collect()
    }

    /// Eigenenergy of an x-basis product state:
    /// `E = sum_{i<j} J_ij s_i s_j` with `s_i = 2 sigma_i - 1`.
    ///
    /// Invariant under a global spin flip of the configuration.
    pub fn eigenenergy(&self, config: SpinConfig) -> Result<T, Error> {
        config.check_for(self.n)?;
        let table = self.distance_table();
        Ok(eigenenergy_with_table(&table, self.n, config))
    }
}

/// `sum_{i<j} J_ij s_i s_j` against a prebuilt distance table. Fixed loop
/// order (ascending i, then ascending j) keeps results bit-reproducible.
pub(crate) fn eigenenergy_with_table<T: Scalar>(table: &[T], n: usize, config: SpinConfig) -> T {
    let mut acc = T::zero();
    for i in 0..n {
        for k in (i + 1)..n {
            let jik = table[k - i];
            // s_i s_j = +1 exactly when the sigmas agree
            if config.bit(i) == config.bit(k) {
                acc += jik;
            } else {
                acc -= jik;
            }
        }
    }
    acc
}

/// An x-basis product configuration packed into a word: bit `i - 1` holds
/// `sigma_i` for the 1-based spin `i` (1 = x-up).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpinConfig(u64);

impl SpinConfig {
    /// Wrap a bit pattern; validity against a chain length is checked by
    /// the operations that consume it.
    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    /// Raw bit pattern.
    pub fn bits(self) -> u64 {
        self.0
    }

    /// `sigma_i` of the 1-based spin `i`.
    pub fn sigma(self, i: usize) -> u8 {
        debug_assert!(i >= 1);
        ((self.0 >> (i - 1)) & 1) as u8
    }

    /// Spin value `s_i = 2 sigma_i - 1`.
    pub fn spin(self, i: usize) -> i8 {
        if self.sigma(i) == 1 {
            1
        } else {
            -1
        }
    }

    /// Global spin flip on an `n`-spin chain.
    pub fn flipped(self, n: usize) -> Self {
        debug_assert!((1..=MAX_SPINS).contains(&n));
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Self(!self.0 & mask)
    }

    /// Internal 0-based bit access.
    pub(crate) fn bit(self, idx: usize) -> bool {
        (self.0 >> idx) & 1 == 1
    }

    pub(crate) fn check_for(self, n: usize) -> Result<(), Error> {
        if n < 64 && self.0 >> n != 0 {
            Err(Error::ConfigOutOfRange { bits: self.0, n })
        } else {
            Ok(())
        }
    }
}

/// A contiguous "inside" block of spins: 1-based start index and length.
/// Construction enforces `len >= 1`, so there is no empty case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[allow(clippy::len_without_is_empty)]
pub struct BlockSpec {
    start: usize,
    len: usize,
}

impl BlockSpec {
    pub fn new(start: usize, len: usize) -> Result<Self, Error> {
        if start < 1 || len < 1 {
            return Err(Error::InvalidBlock);
        }
        Ok(Self { start, len })
    }

    /// First inside spin (1-based).
    pub fn start(&self) -> usize {
        self.start
    }

    /// Number of inside spins.
    pub fn len(&self) -> usize {
        self.len
    }

    /// Last inside spin (1-based, inclusive).
    pub fn end(&self) -> usize {
        self.start + self.len - 1
    }

    /// Whether spin `i` belongs to the block.
    pub fn contains(&self, i: usize) -> bool {
        i >= self.start && i <= self.end()
    }

    pub(crate) fn check_for(&self, n: usize) -> Result<(), Error> {
        if self.end() > n {
            Err(Error::BlockOutOfRange {
                start: self.start,
                end: self.end(),
                n,
            })
        } else {
            Ok(())
        }
    }
}
