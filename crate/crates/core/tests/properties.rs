mod common;

use std::collections::HashSet;

use cachediff::extraction::{decode_code, encode_integer, Alphabet};
use cachediff::oracle::{full_index_shuffle, full_index_sample, full_shuffle_sample, DEFAULT_MATERIALIZATION_CAP};
use cachediff::{sample_indices, sample_with_map, Mode, ScriptedSource, SparseIndexMap, SplitMix64};
use proptest::prelude::*;

use common::{is_bijection, random_script};

fn small_n_k() -> impl Strategy<Value = (u64, u64)> {
    (0u64..=12).prop_flat_map(|n| (Just(n), 0..=n))
}

proptest! {
    #[test]
    fn samples_are_distinct_and_in_range(n in 0u64..1 << 50, k_frac in 0.0f64..1.0, seed: u64) {
        let k = ((n as f64 * k_frac) as u64).min(500);
        let out = sample_indices(n, k, SplitMix64::new(seed), Mode::Pruned).unwrap();
        prop_assert_eq!(out.len() as u64, k);
        prop_assert!(out.iter().all(|&i| i < n));
        prop_assert_eq!(out.iter().collect::<HashSet<_>>().len() as u64, k);
    }

    #[test]
    fn modes_agree_and_bound_map_size(n in 1u64..1 << 40, k in 0u64..300, seed: u64) {
        let k = k.min(n);
        let (a, fm) = sample_with_map(n, k, SplitMix64::new(seed), Mode::Faithful).unwrap();
        let (b, pm) = sample_with_map(n, k, SplitMix64::new(seed), Mode::Pruned).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(fm.len() as u64 <= 2 * k);
        prop_assert!(pm.len() as u64 <= k);
    }

    #[test]
    fn every_faithful_swap_keeps_a_bijection((n, k) in small_n_k(), seed: u64) {
        let script = random_script(n, k, seed);
        let mut map = SparseIndexMap::new();
        let mut array: Vec<u64> = (0..n).collect();
        for (t, &j) in script.iter().enumerate() {
            let i = n - 1 - t as u64;
            let emitted = map.swap_step(i, j, Mode::Faithful);
            array.swap(i as usize, j as usize);
            prop_assert_eq!(emitted, array[i as usize]);
            prop_assert!(is_bijection(n, |x| map.resolve(x)));
            prop_assert!((0..n).all(|x| map.resolve(x) == array[x as usize]));
        }
    }

    #[test]
    fn pruned_map_agrees_on_unvisited_positions((n, k) in small_n_k(), seed: u64) {
        // Positions >= n-k are never read again in pruned mode; the rest must
        // match the materialized array.
        let script = random_script(n, k, seed);
        let (_, map) = sample_with_map(n, k, ScriptedSource::new(script.clone()), Mode::Pruned).unwrap();
        let arr = full_index_shuffle(n, k, ScriptedSource::new(script), DEFAULT_MATERIALIZATION_CAP).unwrap();
        prop_assert!((0..n - k).all(|x| map.resolve(x) == arr.index[x as usize]));
    }

    #[test]
    fn equivalence_chain((n, k) in small_n_k(), seed: u64) {
        let script = random_script(n, k, seed);
        let mut sparse = sample_indices(n, k, ScriptedSource::new(script.clone()), Mode::Faithful).unwrap();
        sparse.reverse();
        let arr = full_index_shuffle(n, k, ScriptedSource::new(script.clone()), DEFAULT_MATERIALIZATION_CAP).unwrap();
        prop_assert!(is_bijection(n, |x| arr.index[x as usize]));
        prop_assert_eq!(&sparse, &arr.selected().to_vec());
        let mut items: Vec<u64> = (0..n).collect();
        let shuffled = full_shuffle_sample(&mut items, k as usize, ScriptedSource::new(script)).unwrap();
        prop_assert_eq!(shuffled, sparse);
    }

    #[test]
    fn seeded_runs_are_reproducible(n in 1u64..10_000, seed: u64) {
        let k = n.min(50);
        prop_assert_eq!(
            sample_indices(n, k, SplitMix64::new(seed), Mode::Faithful).unwrap(),
            sample_indices(n, k, SplitMix64::new(seed), Mode::Faithful).unwrap()
        );
        let mut reversed = sample_indices(n, k, SplitMix64::new(seed), Mode::Pruned).unwrap();
        reversed.reverse();
        prop_assert_eq!(full_index_sample(n, k, SplitMix64::new(seed)).unwrap(), reversed);
    }

    #[test]
    fn codes_round_trip(v: u64, width in 1u32..8) {
        let alphabet = Alphabet::base36();
        let v = v % alphabet.capacity(width).unwrap();
        let code = encode_integer(v, &alphabet, width).unwrap();
        prop_assert_eq!(code.chars().count(), width as usize);
        prop_assert_eq!(decode_code(&code, &alphabet).unwrap(), v);
    }
}

#[test]
fn permutations_of_five_are_equally_likely() {
    let ordered = cachediff::oracle::enumerate_ordered_outcomes(5, 5).unwrap();
    assert_eq!(ordered.len(), 120);
    assert!(ordered.values().all(|&c| c == 1));
}

#[test]
fn seeded_runs_cover_every_index_ordering_for_tiny_n() {
    // With k = n = 3 every one of the 6 orderings should show up quickly.
    let mut seen = HashSet::new();
    for seed in 0..200 {
        seen.insert(sample_indices(3, 3, SplitMix64::new(seed), Mode::Pruned).unwrap());
    }
    assert_eq!(seen.len(), 6);
}

#[test]
fn repeated_meta_runs_pass_at_six_sigma() {
    use cachediff::statistics::{run_trials, uniformity_check};
    let passes = (0..20u64)
        .filter(|m| {
            let t = run_trials(20, 4, 10_000, m * 1_000_003).unwrap();
            assert!(t.is_conserved());
            uniformity_check(&t, 6.0).unwrap().pass
        })
        .count();
    assert!(passes >= 19, "{passes}/20");
}
