//! Factors of `b`.
//!
//! The factors of `b` are exactly the binary words with no `00`, so there
//! are `F_{n+2}` of length `n`. Scanning any feasible prefix finds fewer at
//! `n = 5`: `11111` first occurs at `2^2059 + 2061`.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::blocks::{prefix, Stream};
use crate::error::{BrikError, Result};
use crate::limits::Limits;
use crate::runs::ScanResult;
use crate::word::Word;

/// Longest length for which [`enumerate_admissible`] materializes the set.
pub const MAX_ENUMERATION_LENGTH: usize = 25;

/// Longest factor [`scan_factors`] packs into one machine word.
pub const MAX_SCAN_LENGTH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorSource {
    Characterization,
    Scan { prefix_len: usize },
}

/// Distinct factors of one length, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSet {
    pub length: usize,
    pub members: BTreeSet<Word>,
    pub source: FactorSource,
}

impl FactorSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.contains(w)
    }

    pub fn is_subset(&self, other: &FactorSet) -> bool {
        self.length == other.length && self.members.is_subset(&other.members)
    }
}

pub fn is_factor(w: &Word) -> bool {
    !w.is_empty() && !has_double_zero(w)
}

fn has_double_zero(w: &Word) -> bool {
    let mut prev = 1;
    for b in w {
        if b == 0 && prev == 0 {
            return true;
        }
        prev = b;
    }
    false
}

/// `F_n` with `F_0 = 0`, `F_1 = 1`.
pub fn fibonacci(n: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Number of distinct factors of length `n`: `F_{n+2}`.
pub fn complexity(n: u64) -> BigUint {
    fibonacci(n + 2)
}

/// All words of length `n` without `00`.
pub fn enumerate_admissible(n: usize) -> Result<FactorSet> {
    if n == 0 {
        return Err(BrikError::Domain("factor length must be at least 1".into()));
    }
    if n > MAX_ENUMERATION_LENGTH {
        return Err(BrikError::cap("enumeration", MAX_ENUMERATION_LENGTH, n));
    }
    let mut members = BTreeSet::new();
    let mut cur = Vec::with_capacity(n);
    extend_admissible(n, &mut cur, &mut members);
    Ok(FactorSet {
        length: n,
        members,
        source: FactorSource::Characterization,
    })
}

fn extend_admissible(n: usize, cur: &mut Vec<u8>, out: &mut BTreeSet<Word>) {
    if cur.len() == n {
        out.insert(Word::from_bits(cur.iter().copied()));
        return;
    }
    for b in [0, 1] {
        if b == 0 && cur.last() == Some(&0) {
            continue;
        }
        cur.push(b);
        extend_admissible(n, cur, out);
        cur.pop();
    }
}

/// Distinct length-`n` windows of `b[1..L]`.
pub fn scan_factors(prefix_len: usize, n: usize, limits: &Limits) -> Result<FactorSet> {
    if n == 0 || n > prefix_len {
        return Err(BrikError::Domain(format!(
            "need 1 <= n <= L, got n = {n}, L = {prefix_len}"
        )));
    }
    if n > MAX_SCAN_LENGTH {
        return Err(BrikError::cap("scan factor length", MAX_SCAN_LENGTH, n));
    }
    if prefix_len > limits.memory_cap {
        return Err(BrikError::cap("memory", limits.memory_cap, prefix_len));
    }
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut seen = HashSet::new();
    let mut acc = 0u64;
    for (k, bit) in Stream::with_limit(prefix_len, limits).enumerate() {
        acc = ((acc << 1) | bit? as u64) & mask;
        if k + 1 >= n {
            seen.insert(acc);
        }
    }
    Ok(FactorSet {
        length: n,
        members: seen.into_iter().map(|v| Word::from_packed(v, n)).collect(),
        source: FactorSource::Scan { prefix_len },
    })
}

/// Least start of `w` in `b[1..cutoff]`. Words containing `00` are never
/// factors and short-circuit to not-found.
pub fn first_occurrence(w: &Word, cutoff: usize, limits: &Limits) -> Result<ScanResult> {
    if w.is_empty() {
        return Err(BrikError::Domain("pattern must be non-empty".into()));
    }
    if cutoff > limits.memory_cap {
        return Err(BrikError::cap("memory", limits.memory_cap, cutoff));
    }
    let not_found = ScanResult::NotFound {
        cutoff: cutoff as u64,
    };
    if !is_factor(w) || cutoff < w.len() {
        return Ok(not_found);
    }
    let text = prefix(cutoff, limits)?;
    Ok(text
        .occurrences(w)
        .next()
        .map_or(not_found, |p| ScanResult::Found(p as u64)))
}

/// Admissible words of length `n` absent from `b[1..L]`.
///
/// Non-empty results witness that `b` is not uniformly recurrent: each
/// missing word is a factor whose first occurrence lies beyond `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceGap {
    pub length: usize,
    pub prefix_len: usize,
    pub admissible: usize,
    pub observed: usize,
    pub missing: Vec<Word>,
}

pub fn recurrence_gap(prefix_len: usize, n: usize, limits: &Limits) -> Result<RecurrenceGap> {
    let all = enumerate_admissible(n)?;
    let seen = scan_factors(prefix_len, n, limits)?;
    Ok(RecurrenceGap {
        length: n,
        prefix_len,
        admissible: all.len(),
        observed: seen.len(),
        missing: all.members.difference(&seen.members).cloned().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn strings(set: &FactorSet) -> Vec<String> {
        set.members.iter().map(|m| m.to_string()).collect()
    }

    #[test]
    fn is_factor_examples() {
        assert!(is_factor(&w("10101101")));
        assert!(!is_factor(&w("100")));
        assert!(is_factor(&w("11111")));
        assert!(is_factor(&w("0")));
        assert!(!is_factor(&Word::new()));
    }

    #[test]
    fn fibonacci_examples() {
        assert_eq!(fibonacci(0), BigUint::zero());
        assert_eq!(fibonacci(7), BigUint::from(13u32));
        // iterate the recurrence independently in u64
        let (mut a, mut b) = (0u64, 1u64);
        for _ in 0..22 {
            (a, b) = (b, a + b);
        }
        assert_eq!(a, 17711);
        assert_eq!(fibonacci(22), BigUint::from(a));
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(complexity(1), BigUint::from(2u32));
        assert_eq!(complexity(3), BigUint::from(5u32));
        assert_eq!(complexity(10), fibonacci(12));
        assert_eq!(complexity(10), BigUint::from(144u32));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(strings(&enumerate_admissible(1).unwrap()), ["0", "1"]);
        // brute force over all length-3 words
        let brute: Vec<String> = (0..8u64)
            .map(|v| Word::from_packed(v, 3))
            .filter(is_factor)
            .map(|x| x.to_string())
            .collect();
        assert_eq!(strings(&enumerate_admissible(3).unwrap()), brute);
        assert_eq!(brute, ["010", "011", "101", "110", "111"]);
        assert_eq!(enumerate_admissible(5).unwrap().len(), 13);
        assert!(enumerate_admissible(26).unwrap_err().is_cap_exceeded());
        assert!(enumerate_admissible(0).is_err());
    }

    #[test]
    fn scan_examples() {
        let lim = Limits::default();
        let s = scan_factors(8, 2, &lim).unwrap();
        assert_eq!(strings(&s), ["01", "10", "11"]);
        assert_eq!(s.source, FactorSource::Scan { prefix_len: 8 });
        assert_eq!(scan_factors(6000, 4, &lim).unwrap().len(), 8);
        assert!(scan_factors(3, 4, &lim).is_err());
    }

    #[test]
    fn first_occurrence_examples() {
        let lim = Limits::default();
        assert_eq!(first_occurrence(&w("101"), 100, &lim).unwrap(), ScanResult::Found(1));
        assert_eq!(first_occurrence(&w("111"), 100, &lim).unwrap(), ScanResult::Found(13));
        assert_eq!(
            first_occurrence(&w("00"), 100_000, &lim).unwrap(),
            ScanResult::NotFound { cutoff: 100_000 }
        );
        assert_eq!(first_occurrence(&w("111"), 14, &lim).unwrap().found(), None);
    }

    #[test]
    fn gap_at_five_is_the_long_run() {
        let gap = recurrence_gap(100_000, 5, &Limits::default()).unwrap();
        assert_eq!((gap.admissible, gap.observed), (13, 12));
        assert_eq!(gap.missing, vec![Word::ones(5)]);
    }
}
