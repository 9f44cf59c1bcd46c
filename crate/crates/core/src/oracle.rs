//! Reference samplers used to cross-check the sparse sampler.
//!
//! * [`full_shuffle_sample`] runs the partial Fisher-Yates shuffle directly
//!   on an item array.
//! * [`full_index_sample`] does the same on a materialized `0..n` index array.
//! * [`enumerate_all_outcomes`] drives the sparse sampler through every
//!   possible decision sequence and tallies the exact outcome distribution.
//! * [`reservoir_sample`] is a streaming Algorithm R baseline for benchmarks.
//!
//! The array-based oracles return the selected tail in ascending position
//! order, which is the reverse of the sparse sampler's selection order.

use std::collections::BTreeMap;

use crate::error::{Result, SampleError};
use crate::rng::{RandomSource, ScriptedSource};
use crate::sampler::{sample_indices, Mode};

/// Largest `n` [`full_index_sample`] will materialize by default.
pub const DEFAULT_MATERIALIZATION_CAP: u64 = 1 << 31;

/// Upper bound on the number of decision sequences the enumerator will walk.
pub const ENUMERATION_GUARD: u64 = 10_000_000;

/// Shuffles the last `k` positions of `items` into place and returns them,
/// in ascending position order. The slice is mutated.
pub fn full_shuffle_sample<T: Clone, R: RandomSource>(
    items: &mut [T],
    k: usize,
    mut rng: R,
) -> Result<Vec<T>> {
    let n = items.len();
    SampleError::check_k(n as u64, k as u64)?;
    for i in (n - k..n).rev() {
        let j = rng.draw(0, i as u64)? as usize;
        items.swap(i, j);
    }
    Ok(items[n - k..].to_vec())
}

/// A materialized index array after `k` descending swap steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexShuffle {
    pub index: Vec<u64>,
    pub k: usize,
}

impl IndexShuffle {
    /// The selected tail `index[n-k..n]`, ascending by position.
    pub fn selected(&self) -> &[u64] {
        &self.index[self.index.len() - self.k..]
    }
}

/// Runs the index-array shuffle and keeps the whole array.
pub fn full_index_shuffle<R: RandomSource>(n: u64, k: u64, mut rng: R, cap: u64) -> Result<IndexShuffle> {
    SampleError::check_k(n, k)?;
    if n > cap {
        return Err(SampleError::capacity(format!(
            "refusing to materialize an index array of {n} entries (cap {cap})"
        )));
    }
    let len = usize::try_from(n).map_err(|_| SampleError::capacity("n does not fit in memory"))?;
    let k = k as usize;
    let mut index: Vec<u64> = (0..n).collect();
    for i in (len - k..len).rev() {
        let j = rng.draw(0, i as u64)? as usize;
        index.swap(i, j);
    }
    Ok(IndexShuffle { index, k })
}

/// Selects `k` of `n` indices with a fully materialized index array.
///
/// Refuses `n` above [`DEFAULT_MATERIALIZATION_CAP`]; use
/// [`full_index_sample_capped`] to change the cap.
pub fn full_index_sample<R: RandomSource>(n: u64, k: u64, rng: R) -> Result<Vec<u64>> {
    full_index_sample_capped(n, k, rng, DEFAULT_MATERIALIZATION_CAP)
}

pub fn full_index_sample_capped<R: RandomSource>(n: u64, k: u64, rng: R, cap: u64) -> Result<Vec<u64>> {
    let mut shuffle = full_index_shuffle(n, k, rng, cap)?;
    let n = shuffle.index.len();
    Ok(shuffle.index.split_off(n - shuffle.k))
}

/// `n * (n-1) * ... * (n-k+1)`, or `None` on overflow.
pub fn decision_sequence_count(n: u64, k: u64) -> Option<u64> {
    (0..k).try_fold(1u64, |acc, t| acc.checked_mul(n - t))
}

/// Calls `visit` with every decision sequence for a `k`-of-`n` run: the
/// `t`-th draw ranges over `0..=n-1-t`.
pub fn for_each_decision_sequence(n: u64, k: u64, mut visit: impl FnMut(&[u64]) -> Result<()>) -> Result<()> {
    SampleError::check_k(n, k)?;
    let total = decision_sequence_count(n, k).filter(|&c| c <= ENUMERATION_GUARD).ok_or_else(|| {
        SampleError::capacity(format!(
            "enumerating n={n}, k={k} exceeds the guard of {ENUMERATION_GUARD} decision sequences"
        ))
    })?;
    let k = k as usize;
    let mut digits = vec![0u64; k];
    for _ in 0..total {
        visit(&digits)?;
        // Odometer increment, last digit fastest.
        for t in (0..k).rev() {
            digits[t] += 1;
            if digits[t] <= n - 1 - t as u64 {
                break;
            }
            digits[t] = 0;
        }
    }
    Ok(())
}

/// Exact outcome distribution of the sparse sampler over all decision
/// sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeTally {
    pub n: u64,
    pub k: u64,
    /// Number of decision sequences walked.
    pub sequences: u64,
    /// Sorted sample to number of sequences producing it.
    pub subsets: BTreeMap<Vec<u64>, u64>,
    /// `index_counts[i]` = number of sequences whose sample contains `i`.
    pub index_counts: Vec<u64>,
}

impl OutcomeTally {
    /// True when every index is selected in exactly `k/n` of all sequences
    /// and every observed subset has the same count.
    pub fn is_exactly_uniform(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let per_index = self.sequences as u128 * self.k as u128;
        let index_ok = self.index_counts.iter().all(|&c| c as u128 * self.n as u128 == per_index);
        let mut counts = self.subsets.values();
        let first = counts.next().copied();
        let subset_ok = counts.all(|&c| Some(c) == first);
        index_ok && subset_ok && self.subsets.len() as u64 == binomial(self.n, self.k)
    }
}

/// `n choose k`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as u128 / (t + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Runs the sparse sampler once per decision sequence and tallies the
/// canonical (sorted) samples.
pub fn enumerate_all_outcomes(n: u64, k: u64) -> Result<OutcomeTally> {
    let mut subsets = BTreeMap::new();
    let mut index_counts = vec![0u64; n as usize];
    let mut sequences = 0u64;
    for_each_decision_sequence(n, k, |seq| {
        let mut sample = sample_indices(n, k, ScriptedSource::new(seq), Mode::Faithful)?;
        sample.sort_unstable();
        for &i in &sample {
            index_counts[i as usize] += 1;
        }
        *subsets.entry(sample).or_insert(0) += 1;
        sequences += 1;
        Ok(())
    })?;
    Ok(OutcomeTally { n, k, sequences, subsets, index_counts })
}

/// Like [`enumerate_all_outcomes`] but keyed by the ordered output.
pub fn enumerate_ordered_outcomes(n: u64, k: u64) -> Result<BTreeMap<Vec<u64>, u64>> {
    let mut ordered = BTreeMap::new();
    for_each_decision_sequence(n, k, |seq| {
        let sample = sample_indices(n, k, ScriptedSource::new(seq), Mode::Faithful)?;
        *ordered.entry(sample).or_insert(0) += 1;
        Ok(())
    })?;
    Ok(ordered)
}

/// Algorithm R: keeps a uniform `k`-subset of a stream of unknown length.
///
/// Item `t` (1-based, `t > k`) replaces a uniform reservoir slot with
/// probability `k/t`.
pub fn reservoir_sample<T, I, R>(stream: I, k: usize, mut rng: R) -> Result<Vec<T>>
where
    I: IntoIterator<Item = T>,
    R: RandomSource,
{
    let mut reservoir = Vec::with_capacity(k);
    let mut seen: u64 = 0;
    for item in stream {
        seen += 1;
        if reservoir.len() < k {
            reservoir.push(item);
            continue;
        }
        let j = rng.draw(0, seen - 1)?;
        if j < k as u64 {
            reservoir[j as usize] = item;
        }
    }
    if reservoir.len() < k {
        return Err(SampleError::invalid(format!(
            "stream yielded {} items, fewer than k={k}",
            reservoir.len()
        )));
    }
    Ok(reservoir)
}
