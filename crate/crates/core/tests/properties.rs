//! Property tests for the crate's stated invariants.

use proptest::prelude::*;

use hypersurf_core::data::{iqr_filter, split, Dataset};
use hypersurf_core::linalg::Matrix;
use hypersurf_core::nn::{bce_cost, binary_accuracy};
use hypersurf_core::report::{COOL, WARM};
use hypersurf_core::rng::SplitMix64;
use hypersurf_core::sampler::{derive_trial_seed, sample_point, SearchSpace};

fn column_dataset(values: &[f64]) -> Dataset {
    let rows: Vec<Vec<f64>> = values.iter().map(|&v| vec![v]).collect();
    Dataset::new(
        Matrix::from_rows(&rows).unwrap(),
        vec![0; values.len()],
        vec!["v".into()],
    )
    .unwrap()
}

proptest! {
    #[test]
    fn bce_is_nonnegative_and_accuracy_is_a_percentage(
        pairs in prop::collection::vec((0.0f64..=1.0, 0u8..=1), 1..200)
    ) {
        let predictions: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let labels: Vec<u8> = pairs.iter().map(|p| p.1).collect();
        let cost = bce_cost(&predictions, &labels).unwrap();
        prop_assert!(cost >= 0.0 && cost.is_finite());
        let accuracy = binary_accuracy(&predictions, &labels).unwrap();
        prop_assert!((0.0..=100.0).contains(&accuracy));
    }

    #[test]
    fn iqr_second_pass_never_grows(
        values in prop::collection::vec(-1e3f64..1e3, 5..120),
        coefficient in 0.5f64..5.0
    ) {
        let ds = column_dataset(&values);
        if let Ok(once) = iqr_filter(&ds, coefficient, None) {
            if let Ok(twice) = iqr_filter(&once, coefficient, None) {
                prop_assert!(twice.len() <= once.len());
            }
        }
    }

    #[test]
    fn split_partitions_every_row(
        m in 20usize..200,
        fraction in 0.1f64..0.9,
        seed in any::<u64>()
    ) {
        // Unique feature values make rows identifiable across the split.
        let values: Vec<f64> = (0..m).map(|i| i as f64).collect();
        let rows: Vec<Vec<f64>> = values.iter().map(|&v| vec![v]).collect();
        let labels: Vec<u8> = (0..m).map(|i| (i % 2) as u8).collect();
        let ds = Dataset::new(Matrix::from_rows(&rows).unwrap(), labels, vec!["v".into()]).unwrap();
        if let Ok((train, val)) = split(&ds, fraction, seed) {
            prop_assert_eq!(train.len() + val.len(), m);
            let mut seen: Vec<i64> = Vec::new();
            for part in [&train, &val] {
                for r in 0..part.len() {
                    seen.push(part.features().get(r, 0) as i64);
                }
            }
            seen.sort_unstable();
            seen.dedup();
            prop_assert_eq!(seen.len(), m, "some row duplicated or lost");
        }
    }

    #[test]
    fn sampled_points_stay_in_bounds(
        lo in 0.0f64..8.0,
        span in 0.5f64..4.0,
        d_lo in 0.0f64..0.5,
        d_span in 0.1f64..0.5,
        seed in any::<u64>()
    ) {
        let space = SearchSpace::new((lo, lo + span), (d_lo, d_lo + d_span)).unwrap();
        let mut rng = SplitMix64::new(seed);
        let floor_lo = 2.0f64.powf(lo).floor() as u32;
        let floor_hi = 2.0f64.powf(lo + span).floor() as u32;
        for _ in 0..64 {
            let p = sample_point(&space, &mut rng);
            prop_assert!(p.hidden_units >= floor_lo.max(1) && p.hidden_units <= floor_hi);
            prop_assert!(p.dropout_rate >= d_lo && p.dropout_rate < d_lo + d_span);
        }
    }

    #[test]
    fn trial_seeds_never_collide_locally(master in any::<u64>(), index in 0u64..100_000) {
        prop_assert_ne!(derive_trial_seed(master, index), derive_trial_seed(master, index + 1));
        prop_assert_eq!(derive_trial_seed(master, index), derive_trial_seed(master, index));
    }

    #[test]
    fn color_interpolation_is_monotone(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let cooler = COOL.lerp(WARM, lo);
        let warmer = COOL.lerp(WARM, hi);
        // The warm stop has more red and less blue than the cool stop, so a
        // higher value can never look cooler on either channel.
        prop_assert!(warmer.0 >= cooler.0);
        prop_assert!(warmer.2 <= cooler.2);
    }
}
