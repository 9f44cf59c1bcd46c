//! Print the sparse map after every swap step next to the array it stands for.
//!
//!     cargo run --example trace_swaps

use cachediff::oracle::{full_index_shuffle, DEFAULT_MATERIALIZATION_CAP};
use cachediff::{Mode, ScriptedSource, SparseIndexMap};

fn main() -> cachediff::Result<()> {
    let n = 8u64;
    let script = [3u64, 3, 0, 4];
    let mut map = SparseIndexMap::new();
    for (t, &j) in script.iter().enumerate() {
        let i = n - 1 - t as u64;
        let picked = map.swap_step(i, j, Mode::Faithful);
        let mut entries: Vec<_> = map.iter().collect();
        entries.sort_unstable();
        let virtual_array: Vec<u64> = (0..n).map(|x| map.resolve(x)).collect();
        println!("i={i} j={j} -> picked {picked}; map {entries:?}; array {virtual_array:?}");
    }
    let full = full_index_shuffle(n, script.len() as u64, ScriptedSource::new(script), DEFAULT_MATERIALIZATION_CAP)?;
    println!("materialized array after the same draws: {:?}", full.index);
    Ok(())
}
