//! Applications of k-of-N sampling: pulling random lines out of a large
//! text file in two sequential passes, and issuing batches of distinct
//! fixed-width codes.

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::{Path, PathBuf};

use crate::error::{Result, SampleError};
use crate::rng::SplitMix64;
use crate::sampler::{sample_indices, Mode};

const BUF_SIZE: usize = 64 * 1024;

/// Counts newline-delimited records; a trailing unterminated line counts.
pub fn count_lines(path: impl AsRef<Path>) -> Result<u64> {
    count_lines_in(File::open(path)?)
}

pub fn count_lines_in(mut reader: impl Read) -> Result<u64> {
    let mut buf = vec![0u8; BUF_SIZE];
    let mut lines = 0u64;
    let mut last = None;
    loop {
        let read = match reader.read(&mut buf) {
            Ok(0) => break,
            Ok(r) => r,
            Err(e) if e.kind() == std::io::ErrorKind::Interrupted => continue,
            Err(e) => return Err(e.into()),
        };
        lines += buf[..read].iter().filter(|&&b| b == b'\n').count() as u64;
        last = Some(buf[read - 1]);
    }
    if matches!(last, Some(b) if b != b'\n') {
        lines += 1;
    }
    Ok(lines)
}

/// Which lines of a file were chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineSelection {
    pub path: PathBuf,
    pub total_lines: u64,
    /// Strictly increasing line indices.
    pub chosen: Vec<u64>,
}

/// First pass: counts the file and picks `k` line indices, sorted.
pub fn select_lines(path: impl AsRef<Path>, k: u64, seed: u64) -> Result<LineSelection> {
    let path = path.as_ref();
    let total_lines = count_lines(path)?;
    SampleError::check_k(total_lines, k)?;
    let mut chosen = sample_indices(total_lines, k, SplitMix64::new(seed), Mode::Pruned)?;
    chosen.sort_unstable();
    Ok(LineSelection { path: path.to_path_buf(), total_lines, chosen })
}

impl LineSelection {
    /// Second pass: streams the file once and hands each chosen line
    /// (without its terminator) to `emit`, in file order.
    ///
    /// Fails with [`SampleError::Race`] if the file no longer has
    /// `total_lines` lines.
    pub fn extract(&self, mut emit: impl FnMut(&[u8]) -> Result<()>) -> Result<()> {
        let mut reader = BufReader::with_capacity(BUF_SIZE, File::open(&self.path)?);
        let mut line = Vec::new();
        let mut wanted = self.chosen.iter().copied().peekable();
        let mut seen = 0u64;
        loop {
            line.clear();
            if reader.read_until(b'\n', &mut line)? == 0 {
                break;
            }
            if wanted.peek() == Some(&seen) {
                wanted.next();
                let body = line.strip_suffix(b"\n").unwrap_or(&line);
                emit(body)?;
            }
            seen += 1;
        }
        if seen != self.total_lines {
            return Err(SampleError::Race { counted: self.total_lines, seen });
        }
        Ok(())
    }
}

/// Returns `k` uniformly chosen lines of the file, in file order, without
/// their line terminators.
pub fn sample_lines(path: impl AsRef<Path>, k: u64, seed: u64) -> Result<Vec<Vec<u8>>> {
    let selection = select_lines(path, k, seed)?;
    let mut out = Vec::with_capacity(selection.chosen.len());
    selection.extract(|line| {
        out.push(line.to_vec());
        Ok(())
    })?;
    Ok(out)
}

/// Ordered digit set for positional code encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    digits: Vec<char>,
}

impl Alphabet {
    /// Requires at least two distinct characters.
    pub fn new(digits: &str) -> Result<Self> {
        let digits: Vec<char> = digits.chars().collect();
        if digits.len() < 2 {
            return Err(SampleError::invalid("alphabet needs at least two characters"));
        }
        for (i, c) in digits.iter().enumerate() {
            if digits[..i].contains(c) {
                return Err(SampleError::invalid(format!("alphabet repeats character {c:?}")));
            }
        }
        Ok(Alphabet { digits })
    }

    /// `0-9A-Z`.
    pub fn base36() -> Self {
        Alphabet::new("0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ").expect("valid alphabet")
    }

    pub fn radix(&self) -> u64 {
        self.digits.len() as u64
    }

    /// `radix^width`, or `None` if it exceeds `u64`.
    pub fn capacity(&self, width: u32) -> Option<u64> {
        self.radix().checked_pow(width)
    }

    pub fn as_string(&self) -> String {
        self.digits.iter().collect()
    }
}

/// Big-endian positional encoding of `v`, zero-padded to `width` digits.
pub fn encode_integer(v: u64, alphabet: &Alphabet, width: u32) -> Result<String> {
    if let Some(cap) = alphabet.capacity(width) {
        if v >= cap {
            return Err(SampleError::invalid(format!(
                "{v} does not fit in {width} base-{} digits",
                alphabet.radix()
            )));
        }
    }
    let radix = alphabet.radix();
    let mut digits = vec![alphabet.digits[0]; width as usize];
    let mut rest = v;
    for slot in digits.iter_mut().rev() {
        *slot = alphabet.digits[(rest % radix) as usize];
        rest /= radix;
    }
    Ok(digits.into_iter().collect())
}

pub fn decode_code(code: &str, alphabet: &Alphabet) -> Result<u64> {
    let radix = alphabet.radix();
    code.chars().try_fold(0u64, |acc, c| {
        let d = alphabet
            .digits
            .iter()
            .position(|&x| x == c)
            .ok_or_else(|| SampleError::invalid(format!("character {c:?} is not in the alphabet")))?;
        acc.checked_mul(radix)
            .and_then(|a| a.checked_add(d as u64))
            .ok_or_else(|| SampleError::invalid(format!("code {code:?} overflows u64")))
    })
}

/// A batch of distinct codes drawn from `0..space_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeBatch {
    pub space_size: u64,
    pub alphabet: Alphabet,
    pub width: u32,
    pub codes: Vec<String>,
}

impl CodeBatch {
    /// Chance that a single guess hits some code of the batch.
    pub fn hit_probability(&self) -> f64 {
        self.codes.len() as f64 / self.space_size as f64
    }
}

/// Samples `k` distinct integers from `0..n` and encodes each as a
/// `width`-character code.
pub fn generate_codes(n: u64, k: u64, seed: u64, alphabet: &Alphabet, width: u32) -> Result<CodeBatch> {
    if width == 0 {
        return Err(SampleError::invalid("code width must be positive"));
    }
    if matches!(alphabet.capacity(width), Some(cap) if cap < n) {
        return Err(SampleError::capacity(format!(
            "{width} base-{} digits cover only {} codes, population is {n}",
            alphabet.radix(),
            alphabet.capacity(width).unwrap_or_default()
        )));
    }
    let picked = sample_indices(n, k, SplitMix64::new(seed), Mode::Pruned)?;
    let codes = picked
        .into_iter()
        .map(|v| encode_integer(v, alphabet, width))
        .collect::<Result<Vec<_>>>()?;
    Ok(CodeBatch { space_size: n, alphabet: alphabet.clone(), width, codes })
}
