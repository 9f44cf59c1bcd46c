//! Bounded random integer sources.
//!
//! Every sampler in the crate draws through [`RandomSource::draw`], which
//! must return each integer of the inclusive range `[lo, hi]` with exactly
//! equal probability. [`SplitMix64`] is the seeded, portable source used by
//! the CLI and all reproducible runs; [`ScriptedSource`] replays a fixed
//! sequence of draws for trace tests and exhaustive enumeration.

use rand::RngCore;

use crate::error::{Result, SampleError};

/// A source of exactly-uniform bounded integers.
pub trait RandomSource {
    /// Returns an integer in the inclusive range `[lo, hi]`.
    ///
    /// Callers guarantee `lo <= hi`.
    fn draw(&mut self, lo: u64, hi: u64) -> Result<u64>;
}

impl<R: RandomSource + ?Sized> RandomSource for &mut R {
    fn draw(&mut self, lo: u64, hi: u64) -> Result<u64> {
        (**self).draw(lo, hi)
    }
}

impl<R: RandomSource + ?Sized> RandomSource for Box<R> {
    fn draw(&mut self, lo: u64, hi: u64) -> Result<u64> {
        (**self).draw(lo, hi)
    }
}

/// Maps raw 64-bit words onto `[lo, hi]` by rejection over the smallest
/// power-of-two envelope covering the span.
///
/// Each attempt masks the low bits of one word; words landing outside the
/// span are discarded. Fewer than two words are consumed on average.
pub fn bounded_by_rejection(lo: u64, hi: u64, mut next_word: impl FnMut() -> u64) -> u64 {
    debug_assert!(lo <= hi);
    let span = hi - lo;
    if span == u64::MAX {
        return next_word();
    }
    if span == 0 {
        return lo;
    }
    // All bits up to and including the highest set bit of `span`.
    let mask = u64::MAX >> span.leading_zeros();
    loop {
        let x = next_word() & mask;
        if x <= span {
            return lo + x;
        }
    }
}

/// SplitMix64 generator feeding the rejection layer.
///
/// The recurrence is fixed so that seeded output is identical across
/// platforms and implementations.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(Self::GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

impl RandomSource for SplitMix64 {
    fn draw(&mut self, lo: u64, hi: u64) -> Result<u64> {
        Ok(bounded_by_rejection(lo, hi, || self.next_u64()))
    }
}

/// Replays a caller-supplied sequence of draw results.
///
/// Each value is returned verbatim as the result of one `draw` call. A value
/// outside the requested range, or a draw after the script is exhausted, is
/// an error.
#[derive(Debug, Clone)]
pub struct ScriptedSource {
    script: Vec<u64>,
    pos: usize,
}

impl ScriptedSource {
    pub fn new(script: impl Into<Vec<u64>>) -> Self {
        ScriptedSource { script: script.into(), pos: 0 }
    }

    /// Number of draws consumed so far.
    pub fn consumed(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.script.len() - self.pos
    }
}

impl RandomSource for ScriptedSource {
    fn draw(&mut self, lo: u64, hi: u64) -> Result<u64> {
        let Some(&v) = self.script.get(self.pos) else {
            return Err(SampleError::Rng(format!(
                "scripted source exhausted after {} draws",
                self.pos
            )));
        };
        if v < lo || v > hi {
            return Err(SampleError::Rng(format!(
                "scripted draw #{} = {v} outside requested range [{lo}, {hi}]",
                self.pos
            )));
        }
        self.pos += 1;
        Ok(v)
    }
}

/// Adapts any [`rand::RngCore`] (for instance an OS-backed CSPRNG) to the
/// same rejection layer.
#[derive(Debug, Clone)]
pub struct RngAdapter<R>(pub R);

impl<R: RngCore> RandomSource for RngAdapter<R> {
    fn draw(&mut self, lo: u64, hi: u64) -> Result<u64> {
        Ok(bounded_by_rejection(lo, hi, || self.0.next_u64()))
    }
}

/// A fresh 64-bit seed from system entropy.
pub fn entropy_seed() -> u64 {
    rand::random()
}
