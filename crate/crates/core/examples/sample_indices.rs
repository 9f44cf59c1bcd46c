//! Draw k distinct indices from a huge population, one-shot and incrementally.
//!
//!     cargo run --example sample_indices -- 1000000000000 10 42

use cachediff::{sample_with_map, Mode, Sampler, SplitMix64};

fn main() -> cachediff::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer argument"));
    let n = args.next().unwrap_or(1 << 40);
    let k = args.next().unwrap_or(10);
    let seed = args.next().unwrap_or(42);

    let (picked, map) = sample_with_map(n, k, SplitMix64::new(seed), Mode::Pruned)?;
    println!("{k} of {n} (seed {seed}), selection order:");
    for i in &picked {
        println!("  {i}");
    }
    println!("map entries: {} (never more than k)", map.len());

    // Same stream, pulled one index at a time.
    let mut sampler = Sampler::new(n, k, SplitMix64::new(seed), Mode::Faithful)?;
    let mut incremental = Vec::new();
    while let Some(i) = sampler.next_index()? {
        incremental.push(i);
    }
    assert_eq!(incremental, picked);
    println!("incremental sampler agrees; faithful map holds {} entries", sampler.index_map().len());
    Ok(())
}
