//! OEIS b-file text: one `index value` pair per line.
//!
//! The OEIS entry for this sequence omits the leading `1`, so two index
//! conventions are supported and neither is applied silently.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{BrikError, Result};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Offset {
    /// `n b_n` for `n = 1..N`.
    #[default]
    Full,
    /// The OEIS convention: the leading `1` is dropped, so line `n` holds
    /// `b_{n+1}`.
    Oeis,
}

impl FromStr for Offset {
    type Err = BrikError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Offset::Full),
            "oeis" => Ok(Offset::Oeis),
            _ => Err(BrikError::Parse(format!("unknown offset convention {s:?}"))),
        }
    }
}

/// Renders `prefix` (which must start at `b_1`) as b-file lines.
pub fn write(prefix: &Word, offset: Offset) -> String {
    let skip = match offset {
        Offset::Full => 0,
        Offset::Oeis => 1,
    };
    let mut out = String::with_capacity(prefix.len() * 8);
    for (k, b) in prefix.iter().skip(skip).enumerate() {
        writeln!(out, "{} {}", k + 1, b).unwrap();
    }
    out
}

/// Parses b-file text back into the prefix `b[1..N]`, restoring the leading
/// `1` under [`Offset::Oeis`]. Blank lines and `#` comments are skipped;
/// indices must run consecutively from 1.
pub fn parse(text: &str, offset: Offset) -> Result<Word> {
    let mut w = Word::new();
    if offset == Offset::Oeis {
        w.push(1);
    }
    let mut expected = 1u64;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |what: &str| BrikError::Parse(format!("line {}: {what}: {line:?}", lineno + 1));
        let mut fields = line.split_whitespace();
        let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(bad("expected `index value`"));
        };
        let idx: u64 = idx.parse().map_err(|_| bad("bad index"))?;
        if idx != expected {
            return Err(bad(&format!("expected index {expected}")));
        }
        match val {
            "0" => w.push(0),
            "1" => w.push(1),
            _ => return Err(bad("value must be 0 or 1")),
        }
        expected += 1;
    }
    Ok(w)
}
