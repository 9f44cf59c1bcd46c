//! Pick k random lines from a text file in two sequential passes.
//!
//!     cargo run --example sample_lines -- path/to/file.txt 5 7
//!
//! Without a path, a 100 000-line demo file is written to the temp directory.

use std::io::{BufWriter, Write};
use std::path::PathBuf;

use cachediff::extraction::{count_lines, sample_lines};

fn main() -> cachediff::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = match args.next() {
        Some(p) => PathBuf::from(p),
        None => {
            let p = std::env::temp_dir().join("cachediff-demo-lines.txt");
            let mut w = BufWriter::new(std::fs::File::create(&p)?);
            for i in 0..100_000 {
                writeln!(w, "row {i}")?;
            }
            w.flush()?;
            p
        }
    };
    let k = args.next().map_or(5, |a| a.parse().expect("k"));
    let seed = args.next().map_or(7, |a| a.parse().expect("seed"));

    println!("{} has {} lines", path.display(), count_lines(&path)?);
    for line in sample_lines(&path, k, seed)? {
        println!("{}", String::from_utf8_lossy(&line));
    }
    Ok(())
}
