//! Issue a batch of distinct, hard-to-guess ticket codes.
//!
//!     cargo run --example ticket_codes

use cachediff::extraction::{decode_code, generate_codes, Alphabet};

fn main() -> cachediff::Result<()> {
    let alphabet = Alphabet::base36();
    let width = 10;
    let space = alphabet.capacity(width).expect("fits in u64");
    let batch = generate_codes(space, 20, 2024, &alphabet, width)?;
    println!("{} codes from a space of {space}; guess hit probability {:e}", batch.codes.len(), batch.hit_probability());
    for code in &batch.codes {
        println!("{code}  (= {})", decode_code(code, &alphabet)?);
    }
    Ok(())
}
