//! The `.gmat` generator-matrix text format.
//!
//! ```text
//! # comment lines start with '#'
//! 2 1
//! 11
//! ```
//!
//! The header holds `n k`; it is followed by exactly `k` rows of `n`
//! characters from `{0, 1}`. Blank lines and surrounding whitespace are
//! ignored.

use crate::gf2::{rref_words, BinaryCode, Gf2Error, MAX_LENGTH};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GmatError {
    #[error("missing \"n k\" header line")]
    MissingHeader,
    #[error("line {line}: malformed header {text:?}, expected \"n k\"")]
    MalformedHeader { line: usize, text: String },
    #[error("header declares n = {n}, supported lengths are 1..={MAX_LENGTH}")]
    UnsupportedLength { n: usize },
    #[error("header declares k = {k} > n = {n}")]
    DimensionTooLarge { n: usize, k: usize },
    #[error("expected {expected} generator rows, found {found}")]
    WrongRowCount { expected: usize, found: usize },
    #[error("line {line}: row has {found} characters, expected {expected}")]
    WrongWidth {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: invalid character {ch:?}")]
    InvalidCharacter { line: usize, ch: char },
    #[error("generator rows are linearly dependent: rank {rank}, expected {expected}")]
    DependentRows { rank: usize, expected: usize },
    #[error(transparent)]
    Code(#[from] Gf2Error),
}

pub fn parse_gmat(text: &str) -> Result<BinaryCode, GmatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(GmatError::MissingHeader)?;
    let malformed = || GmatError::MalformedHeader {
        line: hline,
        text: header.to_string(),
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, k] = fields[..] else {
        return Err(malformed());
    };
    let n: usize = n.parse().map_err(|_| malformed())?;
    let k: usize = k.parse().map_err(|_| malformed())?;
    if n == 0 || n > MAX_LENGTH {
        return Err(GmatError::UnsupportedLength { n });
    }
    if k > n {
        return Err(GmatError::DimensionTooLarge { n, k });
    }

    let mut rows = Vec::with_capacity(k);
    for (line, text) in lines {
        if let Some(ch) = text.chars().find(|c| !matches!(c, '0' | '1')) {
            return Err(GmatError::InvalidCharacter { line, ch });
        }
        if text.len() != n {
            return Err(GmatError::WrongWidth {
                line,
                expected: n,
                found: text.len(),
            });
        }
        rows.push(u64::from_str_radix(text, 2).expect("validated binary row"));
    }
    if rows.len() != k {
        return Err(GmatError::WrongRowCount {
            expected: k,
            found: rows.len(),
        });
    }
    let rank = rref_words(&rows, n).len();
    if rank != k {
        return Err(GmatError::DependentRows { rank, expected: k });
    }
    Ok(BinaryCode::from_words(n, &rows)?)
}

/// Writes the canonical generator matrix.
pub fn emit_gmat(code: &BinaryCode) -> String {
    let mut out = format!("{} {}\n", code.n(), code.k());
    for g in code.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}
