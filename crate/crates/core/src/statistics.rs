//! Empirical and exact checks that every index is selected with
//! probability `k/n`.

use serde::Serialize;

use crate::error::{Result, SampleError};
use crate::oracle::enumerate_all_outcomes;
use crate::rng::SplitMix64;
use crate::sampler::{sample_indices, Mode};

/// Default per-index tolerance in binomial standard deviations.
pub const DEFAULT_SIGMA_BOUND: f64 = 6.0;

/// Per-index selection counts over repeated independent trials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialTally {
    pub n: u64,
    pub k: u64,
    pub trials: u64,
    pub counts: Vec<u64>,
}

impl TrialTally {
    /// Each trial contributes exactly `k` distinct indices.
    pub fn is_conserved(&self) -> bool {
        self.counts.iter().sum::<u64>() == self.k * self.trials && self.counts.iter().all(|&c| c <= self.trials)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniformityVerdict {
    pub pass: bool,
    pub worst_index: u64,
    pub worst_deviation_sigmas: f64,
    pub chi_square: f64,
    pub degrees_of_freedom: u64,
}

/// Runs `trials` independent samples; trial `t` is seeded with
/// `base_seed + t`.
pub fn run_trials(n: u64, k: u64, trials: u64, base_seed: u64) -> Result<TrialTally> {
    SampleError::check_k(n, k)?;
    if trials == 0 {
        return Err(SampleError::invalid("trial count must be positive"));
    }
    let len = usize::try_from(n)
        .ok()
        .filter(|&l| l <= 1 << 28)
        .ok_or_else(|| SampleError::capacity(format!("population {n} too large for a count array")))?;
    let mut counts = vec![0u64; len];
    for t in 0..trials {
        let rng = SplitMix64::new(base_seed.wrapping_add(t));
        for i in sample_indices(n, k, rng, Mode::Pruned)? {
            counts[i as usize] += 1;
        }
    }
    Ok(TrialTally { n, k, trials, counts })
}

/// Per-index binomial check of a tally against `p = k/n`.
///
/// Passes iff `max_i |counts[i]/T - p| <= sigma_bound * sqrt(p(1-p)/T)`.
/// The chi-square statistic is reported for diagnostics only: per-index
/// counts are negatively correlated under sampling without replacement.
pub fn uniformity_check(tally: &TrialTally, sigma_bound: f64) -> Result<UniformityVerdict> {
    if tally.trials == 0 {
        return Err(SampleError::invalid("tally has zero trials"));
    }
    if sigma_bound.is_nan() || sigma_bound <= 0.0 {
        return Err(SampleError::invalid("sigma bound must be positive"));
    }
    if tally.n == 0 || tally.counts.len() as u64 != tally.n {
        return Err(SampleError::invalid("tally counts do not match population"));
    }
    let t = tally.trials as f64;
    let p = tally.k as f64 / tally.n as f64;
    let var = p * (1.0 - p);
    let sigma = (var / t).sqrt();

    let mut worst_index = 0;
    let mut worst_abs = 0.0f64;
    let mut chi_square = 0.0;
    for (i, &c) in tally.counts.iter().enumerate() {
        let dev = (c as f64 / t - p).abs();
        if dev > worst_abs {
            worst_abs = dev;
            worst_index = i as u64;
        }
        if var > 0.0 {
            chi_square += (c as f64 - t * p).powi(2) / (t * var);
        }
    }
    // p in {0, 1}: every count is forced, any deviation is infinitely unlikely.
    let worst_deviation_sigmas = if sigma > 0.0 {
        worst_abs / sigma
    } else if worst_abs == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(UniformityVerdict {
        pass: worst_deviation_sigmas <= sigma_bound,
        worst_index,
        worst_deviation_sigmas,
        chi_square,
        degrees_of_freedom: tally.n - 1,
    })
}

/// Result of [`exact_check`], with the per-index counts kept for reporting.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactReport {
    pub n: u64,
    pub k: u64,
    pub sequences: u64,
    pub index_counts: Vec<u64>,
    pub distinct_subsets: u64,
    pub verdict: UniformityVerdict,
}

/// Exhaustive check: every index in exactly `k/n` of all decision sequences
/// and every `k`-subset with the same count. No tolerance.
pub fn exact_check(n: u64, k: u64) -> Result<ExactReport> {
    let tally = enumerate_all_outcomes(n, k)?;
    let expected = tally.sequences as u128 * k as u128;
    let mut worst_index = 0;
    let mut worst = 0u128;
    for (i, &c) in tally.index_counts.iter().enumerate() {
        let dev = (c as u128 * n as u128).abs_diff(expected);
        if dev > worst {
            worst = dev;
            worst_index = i as u64;
        }
    }
    let chi_square = if n > 0 && k > 0 && k < n {
        let t = tally.sequences as f64;
        let p = k as f64 / n as f64;
        tally.index_counts.iter().map(|&c| (c as f64 - t * p).powi(2) / (t * p * (1.0 - p))).sum()
    } else {
        0.0
    };
    let worst_deviation_sigmas = if worst == 0 { 0.0 } else { f64::INFINITY };
    let verdict = UniformityVerdict {
        pass: tally.is_exactly_uniform(),
        worst_index,
        worst_deviation_sigmas,
        chi_square,
        degrees_of_freedom: n.saturating_sub(1),
    };
    Ok(ExactReport {
        n,
        k,
        sequences: tally.sequences,
        distinct_subsets: tally.subsets.len() as u64,
        index_counts: tally.index_counts,
        verdict,
    })
}
