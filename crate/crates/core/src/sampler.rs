//! Sparse Fisher-Yates index sampling.
//!
//! A partial Fisher-Yates shuffle of the index array `0..n` only ever
//! touches `O(k)` positions when `k` draws are made. [`SparseIndexMap`]
//! stores just the positions whose value differs from the identity, so the
//! virtual array never has to be allocated: `k` distinct indices are drawn
//! from a population of up to `2^63 - 1` in expected `O(k)` time and space.
//!
//! Output is in selection order: the value emitted at step `t` is the one
//! swapped out of position `n - 1 - t`. A full index-array shuffle returns
//! the same values in ascending position order, i.e. reversed.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SampleError};
use crate::rng::RandomSource;

/// Whether a swap step records both exchanged positions or only the one that
/// can still be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Writes both `map[j]` and `map[i]`; at most `2k` entries after `k` steps.
    #[default]
    Faithful,
    /// Skips the `map[i]` write. The loop descends, so position `i` is never
    /// resolved again; at most `k` entries after `k` steps.
    Pruned,
}

impl std::str::FromStr for Mode {
    type Err = SampleError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "faithful" => Ok(Mode::Faithful),
            "pruned" => Ok(Mode::Pruned),
            other => Err(SampleError::invalid(format!("unknown mode `{other}`"))),
        }
    }
}

/// The non-identity entries of a virtual permutation of `0..n`.
///
/// An absent key `i` stands for `index[i] = i`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseIndexMap {
    entries: HashMap<u64, u64>,
}

impl SparseIndexMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(capacity: usize) -> Self {
        SparseIndexMap { entries: HashMap::with_capacity(capacity) }
    }

    /// Value at position `i` of the virtual array.
    #[inline]
    pub fn resolve(&self, i: u64) -> u64 {
        self.entries.get(&i).copied().unwrap_or(i)
    }

    /// Exchanges positions `i` and `j` (`j <= i`) and returns the value that
    /// was at `j`, which is the index selected by this step.
    #[inline]
    pub fn swap_step(&mut self, i: u64, j: u64, mode: Mode) -> u64 {
        debug_assert!(j <= i);
        let index_j = self.resolve(j);
        let index_i = self.resolve(i);
        if mode == Mode::Faithful {
            self.entries.insert(i, index_j);
        }
        self.entries.insert(j, index_i);
        index_j
    }

    /// Number of stored entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Raw stored entry for `i`, without the identity default.
    pub fn get(&self, i: u64) -> Option<u64> {
        self.entries.get(&i).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }
}

impl FromIterator<(u64, u64)> for SparseIndexMap {
    fn from_iter<T: IntoIterator<Item = (u64, u64)>>(iter: T) -> Self {
        SparseIndexMap { entries: iter.into_iter().collect() }
    }
}

fn reserve_for(k: u64, mode: Mode) -> usize {
    // Cap the up-front reservation; the map still grows on demand.
    let per_step = if mode == Mode::Faithful { 2 } else { 1 };
    usize::try_from(k.saturating_mul(per_step)).unwrap_or(usize::MAX).min(1 << 20)
}

/// Incremental sampler: each [`next_index`](Sampler::next_index) performs one
/// swap step and yields one selected index.
#[derive(Debug, Clone)]
pub struct Sampler<R> {
    n: u64,
    k: u64,
    emitted: u64,
    mode: Mode,
    map: SparseIndexMap,
    rng: R,
}

impl<R: RandomSource> Sampler<R> {
    /// Creates a sampler selecting `k` of `n` indices. Fails if `k > n`.
    pub fn new(n: u64, k: u64, rng: R, mode: Mode) -> Result<Self> {
        SampleError::check_k(n, k)?;
        Ok(Sampler { n, k, emitted: 0, mode, map: SparseIndexMap::with_capacity(reserve_for(k, mode)), rng })
    }

    /// Draws the next index, or `Ok(None)` once `k` indices have been emitted.
    pub fn next_index(&mut self) -> Result<Option<u64>> {
        if self.emitted == self.k {
            return Ok(None);
        }
        let i = self.n - 1 - self.emitted;
        let j = self.rng.draw(0, i)?;
        let picked = self.map.swap_step(i, j, self.mode);
        self.emitted += 1;
        Ok(Some(picked))
    }

    pub fn population(&self) -> u64 {
        self.n
    }

    pub fn sample_size(&self) -> u64 {
        self.k
    }

    /// Number of indices still to be emitted.
    pub fn remaining(&self) -> u64 {
        self.k - self.emitted
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn index_map(&self) -> &SparseIndexMap {
        &self.map
    }

    pub fn into_parts(self) -> (SparseIndexMap, R) {
        (self.map, self.rng)
    }
}

impl<R: RandomSource> Iterator for Sampler<R> {
    type Item = Result<u64>;

    fn next(&mut self) -> Option<Self::Item> {
        self.next_index().transpose()
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining()).unwrap_or(usize::MAX);
        (0, Some(r))
    }
}

/// Selects `k` distinct indices uniformly from `0..n`, in selection order.
pub fn sample_indices<R: RandomSource>(n: u64, k: u64, rng: R, mode: Mode) -> Result<Vec<u64>> {
    Ok(sample_with_map(n, k, rng, mode)?.0)
}

/// Like [`sample_indices`], also returning the final map for inspection.
pub fn sample_with_map<R: RandomSource>(
    n: u64,
    k: u64,
    rng: R,
    mode: Mode,
) -> Result<(Vec<u64>, SparseIndexMap)> {
    let mut sampler = Sampler::new(n, k, rng, mode)?;
    let mut out = Vec::with_capacity(reserve_for(k, Mode::Pruned));
    while let Some(v) = sampler.next_index()? {
        out.push(v);
    }
    Ok((out, sampler.into_parts().0))
}
