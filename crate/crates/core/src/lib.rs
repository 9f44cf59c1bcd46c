//! Uniform sampling of `k` distinct items from a known population of `n`
//! in expected `O(k)` time and `O(k)` space.
//!
//! The core idea is a partial Fisher-Yates shuffle over the index array
//! `0..n` in which only positions that differ from the identity are stored,
//! in a hash map. See [`sampler`] for the algorithm, [`oracle`] for the
//! array-based reference implementations it is checked against, and
//! [`statistics`] for exact and empirical uniformity checks.
//!
//! ```
//! use cachediff::{sample_indices, Mode, SplitMix64};
//!
//! let picked = sample_indices(1 << 40, 5, SplitMix64::new(7), Mode::Pruned).unwrap();
//! assert_eq!(picked.len(), 5);
//! ```

pub mod bench;
pub mod cli;
pub mod error;
pub mod extraction;
pub mod oracle;
pub mod rng;
pub mod sampler;
pub mod statistics;

pub use error::{Result, SampleError};
pub use rng::{RandomSource, RngAdapter, ScriptedSource, SplitMix64};
pub use sampler::{sample_indices, sample_with_map, Mode, Sampler, SparseIndexMap};
