//! Timing harness comparing the sparse sampler against the array-based and
//! streaming baselines.
//!
//! Each cell reports the median wall-clock time over its repetitions and the
//! peak number of storage slots the method touched: map entries for the
//! sparse sampler, `n` for the array methods, `k` for the reservoir.

use std::fmt::{self, Write as _};
use std::hint::black_box;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Result, SampleError};
use crate::oracle::{full_index_sample, full_shuffle_sample, reservoir_sample, DEFAULT_MATERIALIZATION_CAP};
use crate::rng::SplitMix64;
use crate::sampler::{sample_with_map, Mode};

pub const DEFAULT_REPETITIONS: u32 = 7;

/// Largest population the streaming reservoir baseline will walk.
pub const STREAM_CAP: u64 = DEFAULT_MATERIALIZATION_CAP;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    CachediffFaithful,
    CachediffPruned,
    FullIndex,
    FullShuffle,
    Reservoir,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::CachediffFaithful,
        Method::CachediffPruned,
        Method::FullIndex,
        Method::FullShuffle,
        Method::Reservoir,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::CachediffFaithful => "cachediff_faithful",
            Method::CachediffPruned => "cachediff_pruned",
            Method::FullIndex => "full_index",
            Method::FullShuffle => "full_shuffle",
            Method::Reservoir => "reservoir",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = SampleError;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| SampleError::invalid(format!("unknown bench method `{s}`")))
    }
}

/// One benchmark cell. Skipped cells carry a reason instead of measurements.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub method: Method,
    pub n: u64,
    pub k: u64,
    pub repetitions: u32,
    pub median_elapsed: Option<Duration>,
    pub peak_entries: Option<u64>,
    pub skipped: Option<String>,
}

impl BenchRecord {
    pub fn is_skipped(&self) -> bool {
        self.skipped.is_some()
    }
}

fn run_once(method: Method, n: u64, k: u64, seed: u64) -> Result<u64> {
    let rng = SplitMix64::new(seed);
    let peak = match method {
        Method::CachediffFaithful | Method::CachediffPruned => {
            let mode = if method == Method::CachediffFaithful { Mode::Faithful } else { Mode::Pruned };
            let (out, map) = sample_with_map(n, k, rng, mode)?;
            black_box(out);
            map.len() as u64
        }
        Method::FullIndex => {
            black_box(full_index_sample(n, k, rng)?);
            n
        }
        Method::FullShuffle => {
            if n > DEFAULT_MATERIALIZATION_CAP {
                return Err(SampleError::capacity(format!("item array of {n} exceeds cap")));
            }
            let mut items: Vec<u64> = (0..n).collect();
            black_box(full_shuffle_sample(&mut items, k as usize, rng)?);
            n
        }
        Method::Reservoir => {
            if n > STREAM_CAP {
                return Err(SampleError::capacity(format!("stream of {n} items exceeds cap")));
            }
            black_box(reservoir_sample(0..n, k as usize, rng)?);
            k
        }
    };
    Ok(peak)
}

/// Times `repetitions` runs of `method` (repetition `r` seeded `seed + r`)
/// after one untimed warm-up run.
pub fn time_method(method: Method, n: u64, k: u64, repetitions: u32, seed: u64) -> Result<BenchRecord> {
    if repetitions == 0 {
        return Err(SampleError::invalid("repetitions must be at least 1"));
    }
    SampleError::check_k(n, k)?;
    run_once(method, n, k, seed)?;
    let mut times = Vec::with_capacity(repetitions as usize);
    let mut peak = 0;
    for r in 0..repetitions {
        let start = Instant::now();
        let p = run_once(method, n, k, seed.wrapping_add(r as u64))?;
        times.push(start.elapsed());
        peak = peak.max(p);
    }
    times.sort_unstable();
    Ok(BenchRecord {
        method,
        n,
        k,
        repetitions,
        median_elapsed: Some(times[times.len() / 2]),
        peak_entries: Some(peak),
        skipped: None,
    })
}

/// Runs every `(method, n, k)` cell in order. Infeasible cells are kept as
/// skipped records.
pub fn sweep(methods: &[Method], n_values: &[u64], k_values: &[u64], repetitions: u32, seed: u64) -> Result<Vec<BenchRecord>> {
    if methods.is_empty() || n_values.is_empty() || k_values.is_empty() {
        return Err(SampleError::invalid("sweep grids must be non-empty"));
    }
    let mut records = Vec::with_capacity(methods.len() * n_values.len() * k_values.len());
    for &method in methods {
        for &n in n_values {
            for &k in k_values {
                let record = time_method(method, n, k, repetitions, seed).unwrap_or_else(|e| BenchRecord {
                    method,
                    n,
                    k,
                    repetitions,
                    median_elapsed: None,
                    peak_entries: None,
                    skipped: Some(e.to_string()),
                });
                records.push(record);
            }
        }
    }
    Ok(records)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Human,
}

pub const CSV_HEADER: &str = "method,n,k,repetitions,median_elapsed_ns,peak_entries";

fn cells(r: &BenchRecord) -> [String; 6] {
    [
        r.method.to_string(),
        r.n.to_string(),
        r.k.to_string(),
        r.repetitions.to_string(),
        r.median_elapsed.map_or_else(|| "skip".to_string(), |d| d.as_nanos().to_string()),
        r.peak_entries.map_or_else(String::new, |p| p.to_string()),
    ]
}

pub fn emit_report(records: &[BenchRecord], format: ReportFormat) -> Result<String> {
    if records.is_empty() {
        return Err(SampleError::invalid("no bench records to report"));
    }
    let mut out = String::new();
    match format {
        ReportFormat::Csv => {
            out.push_str(CSV_HEADER);
            out.push('\n');
            for r in records {
                out.push_str(&cells(r).join(","));
                out.push('\n');
            }
        }
        ReportFormat::Human => {
            let header: Vec<String> = CSV_HEADER.split(',').map(str::to_string).collect();
            let rows: Vec<[String; 6]> = records.iter().map(cells).collect();
            let mut widths: Vec<usize> = header.iter().map(String::len).collect();
            for row in &rows {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.len());
                }
            }
            let mut line = |row: &[String]| {
                let mut parts = Vec::with_capacity(row.len());
                for (i, (c, w)) in row.iter().zip(&widths).enumerate() {
                    // Method column left-aligned, numbers right-aligned.
                    parts.push(if i == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") });
                }
                let _ = writeln!(out, "{}", parts.join("  ").trim_end());
            };
            line(&header);
            for row in &rows {
                line(row);
            }
        }
    }
    Ok(out)
}
