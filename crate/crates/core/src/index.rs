//! Arbitrary-precision 1-based positions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{BrikError, Result};

/// Largest exponent accepted in a `base^k` term of a position expression.
pub const MAX_EXPONENT: u32 = 1 << 24;

/// A position in the infinite word: an arbitrary-precision integer `>= 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigIndex(BigUint);

impl BigIndex {
    pub fn new(value: BigUint) -> Result<Self> {
        if value.is_zero() {
            return Err(BrikError::Domain("positions start at 1".into()));
        }
        Ok(BigIndex(value))
    }

    pub fn one() -> Self {
        BigIndex(BigUint::one())
    }

    /// `2^k + m`, the shape of most interesting positions.
    pub fn pow2_plus(k: u32, m: u64) -> Self {
        BigIndex((BigUint::one() << k) + m)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn to_usize(&self) -> Option<usize> {
        self.0.to_usize()
    }

    pub fn checked_sub(&self, rhs: u64) -> Option<BigIndex> {
        let rhs = BigUint::from(rhs);
        if self.0 > rhs {
            Some(BigIndex(&self.0 - rhs))
        } else {
            None
        }
    }

    pub fn add(&self, rhs: u64) -> BigIndex {
        BigIndex(&self.0 + rhs)
    }

    /// Compact rendering: decimal below 2^64, otherwise `2^k+m` when the
    /// value has that shape with a small `m`.
    pub fn to_expr(&self) -> String {
        let bits = self.bits();
        if bits > 64 {
            let top = BigUint::one() << (bits - 1);
            let rest = &self.0 - &top;
            if rest.bits() <= 64 {
                return if rest.is_zero() {
                    format!("2^{}", bits - 1)
                } else {
                    format!("2^{}+{}", bits - 1, rest)
                };
            }
        }
        self.0.to_string()
    }
}

impl From<u64> for BigIndex {
    /// Panics on zero.
    fn from(v: u64) -> Self {
        assert!(v >= 1, "positions start at 1");
        BigIndex(BigUint::from(v))
    }
}

impl TryFrom<BigUint> for BigIndex {
    type Error = BrikError;

    fn try_from(v: BigUint) -> Result<Self> {
        BigIndex::new(v)
    }
}

impl fmt::Display for BigIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for BigIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigIndex({})", self.to_expr())
    }
}

/// Parses a decimal integer or a sum of terms, each an integer or a power
/// `base^k`: `"2061"`, `"2^2059+2061"`, `"2^136 + 2^3 + 2"`.
impl FromStr for BigIndex {
    type Err = BrikError;

    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s).and_then(BigIndex::new)
    }
}

pub fn parse_expr(s: &str) -> Result<BigUint> {
    if s.trim().is_empty() {
        return Err(BrikError::Parse("empty position expression".into()));
    }
    let mut total = BigUint::zero();
    for term in s.split('+') {
        total += parse_term(term.trim())
            .map_err(|e| BrikError::Parse(format!("{e} in {s:?}")))?;
    }
    Ok(total)
}

fn parse_term(term: &str) -> std::result::Result<BigUint, String> {
    match term.split_once('^') {
        None => parse_int(term),
        Some((base, exp)) => {
            let base = parse_int(base.trim())?;
            let exp = parse_int(exp.trim())?;
            let exp = exp
                .to_u32()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| format!("exponent {exp} exceeds {MAX_EXPONENT}"))?;
            Ok(base.pow(exp))
        }
    }
}

fn parse_int(s: &str) -> std::result::Result<BigUint, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("malformed term {s:?}"));
    }
    BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| format!("malformed term {s:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_decimal() {
        let p: BigIndex = "2061".parse().unwrap();
        assert_eq!(p.to_u64(), Some(2061));
    }

    #[test]
    fn parses_power_sums() {
        let p: BigIndex = "2^2059+2061".parse().unwrap();
        assert_eq!(p, BigIndex::pow2_plus(2059, 2061));
        let q: BigIndex = " 2^3 + 2^1 + 1 ".parse().unwrap();
        assert_eq!(q.to_u64(), Some(11));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "0", "2^", "^3", "2^^3", "12a", "-4", "2^3+", "1.5", "2^99999999"] {
            assert!(bad.parse::<BigIndex>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn expression_rendering() {
        assert_eq!(BigIndex::pow2_plus(2059, 2061).to_expr(), "2^2059+2061");
        assert_eq!(BigIndex::pow2_plus(136, 0).to_expr(), "2^136");
        assert_eq!(BigIndex::from(13).to_expr(), "13");
    }
}
