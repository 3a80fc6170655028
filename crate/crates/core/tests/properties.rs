//! Property tests for the model, coherence, and spectrum invariants.

use lrising::{
    block_coherence, histogram, single_spin_factorized, spectrum, BlockSpec, Bins, CouplingModel,
    Method, Normalization, SpinConfig, Truncation,
};
use proptest::prelude::*;

fn arb_model() -> impl Strategy<Value = CouplingModel<f64>> {
    (2usize..=12, 0.0f64..=3.0, 0.1f64..=2.0).prop_flat_map(|(n, alpha, j)| {
        prop_oneof![
            Just(Truncation::Exact),
            (1usize..n).prop_map(Truncation::Range),
        ]
        .prop_map(move |tr| CouplingModel::new(n, j, alpha, tr).unwrap())
    })
}

fn mask(n: usize) -> u64 {
    (1u64 << n) - 1
}

proptest! {
    #[test]
    fn coupling_is_symmetric(m in arb_model()) {
        for i in 1..=m.n() {
            for j in 1..=m.n() {
                if i != j {
                    prop_assert_eq!(m.coupling(i, j).unwrap(), m.coupling(j, i).unwrap());
                }
            }
        }
    }

    #[test]
    fn full_range_matches_exact_bit_for_bit(
        n in 2usize..=16,
        alpha in 0.0f64..=3.0,
        j in 0.1f64..=2.0,
    ) {
        let exact = CouplingModel::new(n, j, alpha, Truncation::Exact).unwrap();
        let ranged = CouplingModel::new(n, j, alpha, Truncation::Range(n - 1)).unwrap();
        for i in 1..=n {
            for k in 1..=n {
                if i != k {
                    prop_assert_eq!(
                        exact.coupling(i, k).unwrap().to_bits(),
                        ranged.coupling(i, k).unwrap().to_bits()
                    );
                }
            }
        }
    }

    #[test]
    fn eigenenergy_is_flip_invariant(m in arb_model(), bits in any::<u64>()) {
        let config = SpinConfig::from_bits(bits & mask(m.n()));
        let flipped = config.flipped(m.n());
        prop_assert_eq!(
            m.eigenenergy(config).unwrap(),
            m.eigenenergy(flipped).unwrap()
        );
    }

    #[test]
    fn eigenenergy_is_bounded_by_total_coupling(m in arb_model(), bits in any::<u64>()) {
        let mut bound = 0.0;
        for i in 1..=m.n() {
            for k in (i + 1)..=m.n() {
                bound += m.coupling(i, k).unwrap();
            }
        }
        let e = m
            .eigenenergy(SpinConfig::from_bits(bits & mask(m.n())))
            .unwrap();
        prop_assert!(e.abs() <= bound * (1.0 + 1e-12) + 1e-12);
        // the all-up configuration saturates the bound exactly
        let all_up = m.eigenenergy(SpinConfig::from_bits(mask(m.n()))).unwrap();
        prop_assert_eq!(all_up, bound);
    }

    #[test]
    fn coupling_decreases_with_alpha(
        n in 3usize..=16,
        j in 0.1f64..=2.0,
        alphas in (0.0f64..=3.0, 0.0f64..=3.0),
        dist_frac in 0.0f64..1.0,
    ) {
        let (lo, hi) = if alphas.0 < alphas.1 { alphas } else { (alphas.1, alphas.0) };
        prop_assume!(hi - lo > 1e-9);
        let d = 2 + ((n - 3) as f64 * dist_frac) as usize; // separation in 2..=n-1
        let m_lo = CouplingModel::new(n, j, lo, Truncation::Exact).unwrap();
        let m_hi = CouplingModel::new(n, j, hi, Truncation::Exact).unwrap();
        prop_assert!(m_lo.coupling(1, 1 + d).unwrap() > m_hi.coupling(1, 1 + d).unwrap());
    }

    #[test]
    fn single_spin_coherence_stays_in_unit_interval(
        m in arb_model(),
        spin_frac in 0.0f64..1.0,
        t in -12.0f64..12.0,
    ) {
        let j = 1 + ((m.n() - 1) as f64 * spin_frac) as usize;
        let c = single_spin_factorized(&m, j, t).unwrap();
        prop_assert!((0.0..=1.0).contains(&c));
    }

    #[test]
    fn block_coherence_never_exceeds_initial(
        m in arb_model(),
        len in 1usize..=4,
        start_frac in 0.0f64..1.0,
        t in -12.0f64..12.0,
    ) {
        prop_assume!(m.n() >= len);
        let start = 1 + ((m.n() - len) as f64 * start_frac) as usize;
        let block = BlockSpec::new(start, len).unwrap();
        let c0 = (1u64 << len) as f64 - 1.0;
        let c = block_coherence(&m, block, t, Method::Factorized).unwrap();
        prop_assert!(c >= 0.0);
        prop_assert!(c <= c0 * (1.0 + 1e-12));
    }

    #[test]
    fn frequency_multiset_is_closed_under_negation(
        m in arb_model(),
        spin_frac in 0.0f64..1.0,
    ) {
        let j = 1 + ((m.n() - 1) as f64 * spin_frac) as usize;
        let freqs = spectrum::effective_frequencies(&m, j).unwrap();
        prop_assert_eq!(freqs.len(), 1usize << (m.n() - 1));
        let mut sorted = freqs.clone();
        sorted.sort_by(f64::total_cmp);
        let mut negated: Vec<f64> = freqs.iter().map(|&w| -w).collect();
        negated.sort_by(f64::total_cmp);
        prop_assert_eq!(sorted, negated);
    }

    #[test]
    fn histogram_is_order_independent(
        mut values in prop::collection::vec(-50.0f64..50.0, 1..40),
        bins in 1usize..12,
    ) {
        let forward = histogram(&values, Bins::Count(bins), Normalization::UnitSum).unwrap();
        values.reverse();
        let reversed = histogram(&values, Bins::Count(bins), Normalization::UnitSum).unwrap();
        prop_assert_eq!(forward, reversed);
    }

    #[test]
    fn histogram_mirrors_symmetric_input(
        half in prop::collection::vec(0.01f64..40.0, 1..20),
        bins in 0usize..6,
    ) {
        let bins = 2 * bins + 1; // odd, so zero sits at a bin centre
        let mut values: Vec<f64> = half.clone();
        values.extend(half.iter().map(|&v| -v));
        let h = histogram(&values, Bins::Count(bins), Normalization::UnitSum).unwrap();
        // skip draws where a value sits exactly on an interior edge: the
        // half-open convention breaks the mirror there
        let edges = h.bin_edges();
        let on_edge = values
            .iter()
            .any(|v| edges[1..edges.len() - 1].iter().any(|e| e == v));
        prop_assume!(!on_edge);
        for k in 0..h.bin_count() {
            prop_assert_eq!(h.mass()[k], h.mass()[h.bin_count() - 1 - k]);
        }
    }

    #[test]
    fn unit_max_histogram_peaks_at_one(
        values in prop::collection::vec(-50.0f64..50.0, 1..40),
        bins in 1usize..12,
    ) {
        let h = histogram(&values, Bins::Count(bins), Normalization::UnitMax).unwrap();
        let peak = h.mass().iter().fold(0.0f64, |a, &b| a.max(b));
        prop_assert_eq!(peak, 1.0);
    }

    #[test]
    fn unit_sum_histogram_sums_to_one(
        values in prop::collection::vec(-50.0f64..50.0, 1..40),
        bins in 1usize..12,
    ) {
        let h = histogram(&values, Bins::Count(bins), Normalization::UnitSum).unwrap();
        let total: f64 = h.mass().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }
}

/// Exhaustive flip symmetry over every configuration of a 12-spin chain.
#[test]
fn flip_symmetry_exhaustive_n12() {
    for truncation in [Truncation::Exact, Truncation::Range(3)] {
        let m = CouplingModel::new(12, 1.0, 1.3, truncation).unwrap();
        for bits in 0u64..(1 << 12) {
            let config = SpinConfig::from_bits(bits);
            assert_eq!(
                m.eigenenergy(config).unwrap(),
                m.eigenenergy(config.flipped(12)).unwrap(),
                "bits = {bits:#014b}"
            );
        }
    }
}
