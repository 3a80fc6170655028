//! Effective-frequency enumeration and histograms for a single spin.
//!
//! Each outside sign vector contributes one phase `w = 2 sum_{i != j} J_ij s_i`
//! to the single-spin coherence sum; the shape of this spectrum decides
//! whether the spin relaxes (a smooth spread of many frequencies) or
//! oscillates forever (a few sharp values, as under truncation or uniform
//! coupling).

use crate::error::Error;
use crate::model::CouplingModel;
use crate::scalar::{as_f64, two, Scalar};
use crate::Caps;

/// All `2^(n-1)` effective frequencies of spin `j`, in outside-configuration
/// integer order (bit `b` of the word is the `b`-th remaining spin in
/// ascending index order, set bit = spin up).
///
/// Frequencies are enumerated, never sampled; the multiset is exactly
/// closed under negation because flipping every outside spin negates the
/// sum term by term.
pub fn effective_frequencies<T: Scalar>(
    model: &CouplingModel<T>,
    j: usize,
) -> Result<Vec<T>, Error> {
    effective_frequencies_with_caps(model, j, Caps::default())
}

/// [`effective_frequencies`] with an explicit size cap.
pub fn effective_frequencies_with_caps<T: Scalar>(
    model: &CouplingModel<T>,
    j: usize,
    caps: Caps,
) -> Result<Vec<T>, Error> {
    model.check_spin(j)?;
    let n = model.n();
    if n > caps.spectrum_spins {
        return Err(Error::ResourceLimit {
            what: "frequency enumeration",
            size: n,
            cap: caps.spectrum_spins,
        });
    }
    let couplings: Vec<T> = (1..=n)
        .filter(|&i| i != j)
        .map(|i| model.coupling_at_distance(i.abs_diff(j)))
        .collect();
    let m = n - 1;
    let mut freqs = Vec::with_capacity(1usize << m);
    for word in 0..(1u64 << m) {
        let mut sum = T::zero();
        for (b, &jij) in couplings.iter().enumerate() {
            if (word >> b) & 1 == 1 {
                sum += jij;
            } else {
                sum -= jij;
            }
        }
        freqs.push(two::<T>() * sum);
    }
    Ok(freqs)
}

/// How histogram bins are chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum Bins<T> {
    /// `count` uniform bins symmetric about 0, spanning the largest
    /// enumerated magnitude on both sides.
    Count(usize),
    /// Explicit strictly increasing edges; every value must fall inside
    /// `[first, last]`.
    Edges(Vec<T>),
}

/// How bin weights are scaled.
///
/// A histogram "normalized to one" can mean either convention, so both
/// are provided; unit-sum is the default everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Weights sum to 1 (counts divided by the total).
    UnitSum,
    /// Tallest bin equals 1 (counts divided by the max count).
    UnitMax,
}

/// A binned, normalized frequency distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyHistogram<T> {
    bin_edges: Vec<T>,
    counts: Vec<u64>,
    mass: Vec<T>,
    normalization: Normalization,
    total_count: usize,
}

/// Bin a frequency multiset. Bins are left-closed and right-open, the
/// final bin also closed on the right; values outside the edge span are
/// a contract violation.
pub fn histogram<T: Scalar>(
    freqs: &[T],
    bins: Bins<T>,
    normalization: Normalization,
) -> Result<FrequencyHistogram<T>, Error> {
    if freqs.is_empty() {
        return Err(Error::EmptyFrequencies);
    }
    if let Some(&bad) = freqs.iter().find(|f| !f.is_finite()) {
        return Err(Error::NonFiniteFrequency(as_f64(bad)));
    }

    let bin_edges: Vec<T> = match bins {
        Bins::Count(count) => {
            if count < 1 {
                return Err(Error::NoBins);
            }
            let mut span = freqs
                .iter()
                .fold(T::zero(), |acc, &x| acc.max(x.abs()));
            if span == T::zero() {
                span = T::one();
            }
            let denom = T::from_usize(count).expect("bin count fits any float");
            (0..=count)
                .map(|k| {
                    if k == count {
                        span
                    } else {
                        -span + two::<T>() * span * T::from_usize(k).expect("fits") / denom
                    }
                })
                .collect()
        }
        Bins::Edges(edges) => {
            if edges.len() < 2 || edges.windows(2).any(|w| !(w[1] > w[0])) {
                return Err(Error::InvalidEdges);
            }
            edges
        }
    };

    let n_bins = bin_edges.len() - 1;
    let lo = bin_edges[0];
    let hi = bin_edges[n_bins];
    let mut counts = vec![0u64; n_bins];
    for &x in freqs {
        if x < lo || x > hi {
            return Err(Error::FrequencyOutOfBins {
                value: as_f64(x),
                lo: as_f64(lo),
                hi: as_f64(hi),
            });
        }
        let upper = bin_edges.partition_point(|e| *e <= x);
        counts[(upper - 1).min(n_bins - 1)] += 1;
    }

    let mass: Vec<T> = match normalization {
        Normalization::UnitSum => {
            let total = T::from_usize(freqs.len()).expect("count fits any float");
            counts
                .iter()
                .map(|&c| T::from_u64(c).expect("count fits any float") / total)
                .collect()
        }
        Normalization::UnitMax => {
            let peak = *counts.iter().max().expect("at least one bin");
            let peak = T::from_u64(peak).expect("count fits any float");
            counts
                .iter()
                .map(|&c| T::from_u64(c).expect("count fits any float") / peak)
                .collect()
        }
    };

    Ok(FrequencyHistogram {
        bin_edges,
        counts,
        mass,
        normalization,
        total_count: freqs.len(),
    })
}

impl<T: Scalar> FrequencyHistogram<T> {
    /// Bin edges, one more than the number of bins.
    pub fn bin_edges(&self) -> &[T] {
        &self.bin_edges
    }

    /// Raw per-bin counts.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Normalized per-bin weights.
    pub fn mass(&self) -> &[T] {
        &self.mass
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// Number of binned frequencies.
    pub fn total_count(&self) -> usize {
        self.total_count
    }

    pub fn bin_count(&self) -> usize {
        self.mass.len()
    }
}
