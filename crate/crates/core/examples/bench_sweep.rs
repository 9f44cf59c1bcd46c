//! Compare the sparse sampler with the array and reservoir baselines.
//!
//!     cargo run --release --example bench_sweep

use cachediff::bench::{emit_report, sweep, Method, ReportFormat};

fn main() -> cachediff::Result<()> {
    let records = sweep(&Method::ALL, &[1_000_000, 10_000_000, 1_000_000_000_000], &[10, 1000], 7, 1)?;
    print!("{}", emit_report(&records, ReportFormat::Human)?);
    Ok(())
}
