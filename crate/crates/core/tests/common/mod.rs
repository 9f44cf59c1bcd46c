#![allow(dead_code)]

use cachediff::rng::SplitMix64;

/// A valid decision sequence for a `k`-of-`n` run: draw `t` lies in
/// `0..=n-1-t`. Generated from its own SplitMix64 stream so scripted runs
/// do not share the sampler's seeded path.
pub fn random_script(n: u64, k: u64, seed: u64) -> Vec<u64> {
    let mut g = SplitMix64::new(seed ^ 0xA5A5_5A5A_0F0F_F0F0);
    (0..k).map(|t| g.next_u64() % (n - t)).collect()
}

/// Brute-force check that `f` restricted to `0..n` is a bijection.
pub fn is_bijection(n: u64, f: impl Fn(u64) -> u64) -> bool {
    let mut seen = vec![false; n as usize];
    (0..n).all(|i| {
        let v = f(i);
        v < n && !std::mem::replace(&mut seen[v as usize], true)
    })
}

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_cachediff")
}
