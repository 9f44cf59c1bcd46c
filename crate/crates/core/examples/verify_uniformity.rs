//! Exact and statistical checks that each index is picked with probability k/n.
//!
//!     cargo run --release --example verify_uniformity

use cachediff::statistics::{exact_check, run_trials, uniformity_check};

fn main() -> cachediff::Result<()> {
    for (n, k) in [(5, 2), (6, 3), (7, 7)] {
        let r = exact_check(n, k)?;
        println!(
            "exact n={n} k={k}: {} sequences, index counts {:?}, {} subsets, pass={}",
            r.sequences, r.index_counts, r.distinct_subsets, r.verdict.pass
        );
    }

    let tally = run_trials(100, 10, 100_000, 1)?;
    let v = uniformity_check(&tally, 6.0)?;
    println!(
        "trials n=100 k=10 T=1e5: worst index {} at {:.2} sigma, chi-square {:.1} on {} df, pass={}",
        v.worst_index, v.worst_deviation_sigmas, v.chi_square, v.degrees_of_freedom, v.pass
    );
    Ok(())
}
