//! Bit-packed finite binary words with 1-based addressing.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{BrikError, Result};

const LIMB: usize = 64;

/// A finite word over `{0, 1}`.
///
/// Symbols are packed 64 to a limb, least significant bit first. Unused
/// high bits of the last limb are always zero, so derived equality and
/// hashing agree with symbol-wise equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    limbs: Vec<u64>,
    len: usize,
}

impl Word {
    pub fn new() -> Self {
        Word::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Word {
            limbs: Vec::with_capacity(bits.div_ceil(LIMB)),
            len: 0,
        }
    }

    /// Builds a word from symbols; any nonzero value counts as `1`.
    pub fn from_bits<I: IntoIterator<Item = u8>>(bits: I) -> Self {
        let mut w = Word::new();
        for b in bits {
            w.push(b);
        }
        w
    }

    /// `n` copies of `1`.
    pub fn ones(n: usize) -> Self {
        Word::from_bits(std::iter::repeat_n(1, n))
    }

    /// Decodes the low `len` bits of `value` read most significant first,
    /// so `from_packed(0b101, 3)` is the word `101`.
    pub fn from_packed(value: u64, len: usize) -> Self {
        assert!(len <= LIMB, "packed words hold at most 64 symbols");
        Word::from_bits((0..len).rev().map(|k| ((value >> k) & 1) as u8))
    }

    /// Inverse of [`Word::from_packed`]; `None` for words longer than 64.
    pub fn packed(&self) -> Option<u64> {
        if self.len > LIMB {
            return None;
        }
        Some(self.iter().fold(0u64, |acc, b| (acc << 1) | b as u64))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Symbol at 1-based position `pos`.
    pub fn get(&self, pos: usize) -> Option<u8> {
        if pos == 0 || pos > self.len {
            None
        } else {
            Some(self.bit0(pos - 1))
        }
    }

    #[inline]
    fn bit0(&self, idx: usize) -> u8 {
        ((self.limbs[idx / LIMB] >> (idx % LIMB)) & 1) as u8
    }

    pub fn push(&mut self, bit: u8) {
        let off = self.len % LIMB;
        if off == 0 {
            self.limbs.push(0);
        }
        if bit != 0 {
            *self.limbs.last_mut().unwrap() |= 1 << off;
        }
        self.len += 1;
    }

    /// Reads `count <= 64` symbols starting at 0-based `start`, first symbol
    /// in the least significant bit.
    fn read_chunk(&self, start: usize, count: usize) -> u64 {
        debug_assert!(count <= LIMB && start + count <= self.len);
        if count == 0 {
            return 0;
        }
        let (q, off) = (start / LIMB, start % LIMB);
        let mut v = self.limbs[q] >> off;
        if off != 0 && off + count > LIMB {
            v |= self.limbs[q + 1] << (LIMB - off);
        }
        mask(v, count)
    }

    fn push_chunk(&mut self, value: u64, count: usize) {
        if count == 0 {
            return;
        }
        let value = mask(value, count);
        let off = self.len % LIMB;
        if off == 0 {
            self.limbs.push(value);
        } else {
            *self.limbs.last_mut().unwrap() |= value << off;
            if off + count > LIMB {
                self.limbs.push(value >> (LIMB - off));
            }
        }
        self.len += count;
    }

    /// Appends `other[start..start + count)` (0-based, half-open).
    pub(crate) fn extend_from_range(&mut self, other: &Word, start: usize, count: usize) {
        assert!(start + count <= other.len);
        let mut done = 0;
        while done < count {
            let n = (count - done).min(LIMB);
            let chunk = other.read_chunk(start + done, n);
            self.push_chunk(chunk, n);
            done += n;
        }
    }

    /// Appends a copy of `self[a..=b]` (1-based, inclusive) to the end of
    /// `self`. The range must lie inside the current word.
    pub fn extend_from_within(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_slice(a, b)?;
        let mut pos = a - 1;
        let end = b;
        while pos < end {
            let n = (end - pos).min(LIMB);
            let chunk = self.read_chunk(pos, n);
            self.push_chunk(chunk, n);
            pos += n;
        }
        Ok(())
    }

    pub fn extend_from_word(&mut self, other: &Word) {
        self.extend_from_range(other, 0, other.len);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = Word::with_capacity(self.len + other.len);
        w.extend_from_word(self);
        w.extend_from_word(other);
        w
    }

    fn check_slice(&self, a: usize, b: usize) -> Result<()> {
        if a == 0 || a > b + 1 || b > self.len {
            return Err(BrikError::OutOfRange(format!(
                "slice [{a}..{b}] of a word of length {}",
                self.len
            )));
        }
        Ok(())
    }

    /// `self[a..=b]` with 1-based inclusive bounds; `slice(a, a - 1)` is
    /// the empty word.
    pub fn slice(&self, a: usize, b: usize) -> Result<Word> {
        self.check_slice(a, b)?;
        let mut w = Word::with_capacity(b + 1 - a);
        w.extend_from_range(self, a - 1, b + 1 - a);
        Ok(w)
    }

    pub fn truncate(&mut self, len: usize) {
        if len >= self.len {
            return;
        }
        self.limbs.truncate(len.div_ceil(LIMB));
        if !len.is_multiple_of(LIMB) {
            let last = self.limbs.last_mut().unwrap();
            *last = mask(*last, len % LIMB);
        }
        self.len = len;
    }

    pub fn count_ones(&self) -> u64 {
        self.limbs.iter().map(|l| l.count_ones() as u64).sum()
    }

    /// Number of `1` symbols among the first `n` symbols.
    pub fn count_ones_prefix(&self, n: usize) -> u64 {
        let n = n.min(self.len);
        let full = n / LIMB;
        let mut c: u64 = self.limbs[..full]
            .iter()
            .map(|l| l.count_ones() as u64)
            .sum();
        if !n.is_multiple_of(LIMB) {
            c += mask(self.limbs[full], n % LIMB).count_ones() as u64;
        }
        c
    }

    pub fn starts_with(&self, other: &Word) -> bool {
        other.len <= self.len && self.prefix_eq(other, 0)
    }

    pub fn ends_with(&self, other: &Word) -> bool {
        other.len <= self.len && self.prefix_eq(other, self.len - other.len)
    }

    fn prefix_eq(&self, other: &Word, start: usize) -> bool {
        let mut done = 0;
        while done < other.len {
            let n = (other.len - done).min(LIMB);
            if self.read_chunk(start + done, n) != other.read_chunk(done, n) {
                return false;
            }
            done += n;
        }
        true
    }

    pub fn iter(&self) -> Bits<'_> {
        Bits {
            word: self,
            next: 0,
        }
    }

    /// 1-based start positions of every (possibly overlapping) occurrence of
    /// `pattern`, via the border array of the pattern.
    pub fn occurrences<'a>(&'a self, pattern: &'a Word) -> Occurrences<'a> {
        Occurrences {
            text: self,
            pattern,
            border: border_array(pattern),
            pos: 0,
            matched: 0,
        }
    }
}

#[inline]
fn mask(v: u64, count: usize) -> u64 {
    if count >= LIMB {
        v
    } else {
        v & ((1u64 << count) - 1)
    }
}

/// `border[k]` is the length of the longest proper border of `w[..=k]`.
pub fn border_array(w: &Word) -> Vec<usize> {
    let mut border = vec![0usize; w.len()];
    let mut k = 0;
    for i in 1..w.len() {
        while k > 0 && w.bit0(i) != w.bit0(k) {
            k = border[k - 1];
        }
        if w.bit0(i) == w.bit0(k) {
            k += 1;
        }
        border[i] = k;
    }
    border
}

pub struct Bits<'a> {
    word: &'a Word,
    next: usize,
}

impl Iterator for Bits<'_> {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        if self.next >= self.word.len {
            return None;
        }
        let b = self.word.bit0(self.next);
        self.next += 1;
        Some(b)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.word.len - self.next;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Bits<'_> {}

pub struct Occurrences<'a> {
    text: &'a Word,
    pattern: &'a Word,
    border: Vec<usize>,
    pos: usize,
    matched: usize,
}

impl Iterator for Occurrences<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        let m = self.pattern.len;
        if m == 0 {
            return None;
        }
        while self.pos < self.text.len {
            let c = self.text.bit0(self.pos);
            self.pos += 1;
            while self.matched > 0 && self.pattern.bit0(self.matched) != c {
                self.matched = self.border[self.matched - 1];
            }
            if self.pattern.bit0(self.matched) == c {
                self.matched += 1;
            }
            if self.matched == m {
                self.matched = self.border[m - 1];
                return Some(self.pos + 1 - m);
            }
        }
        None
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = u8;
    type IntoIter = Bits<'a>;

    fn into_iter(self) -> Bits<'a> {
        self.iter()
    }
}

impl FromIterator<u8> for Word {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        Word::from_bits(iter)
    }
}

/// Lexicographic with `0 < 1`; a proper prefix sorts first.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for Word {
    type Err = BrikError;

    fn from_str(s: &str) -> Result<Self> {
        let mut w = Word::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => w.push(0),
                '1' => w.push(1),
                _ => return Err(BrikError::Parse(format!("invalid symbol {c:?} in word"))),
            }
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b == 1 { '1' } else { '0' }).collect();
        f.pad(&s)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 128 {
            write!(f, "Word({self})")
        } else {
            write!(f, "Word(len={})", self.len)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("10101101").to_string(), "10101101");
        assert_eq!(w("").len(), 0);
        assert!("1021".parse::<Word>().is_err());
    }

    #[test]
    fn one_based_access() {
        let x = w("101");
        assert_eq!(x.get(0), None);
        assert_eq!(x.get(1), Some(1));
        assert_eq!(x.get(2), Some(0));
        assert_eq!(x.get(4), None);
    }

    #[test]
    fn slice_bounds() {
        let x = w("10101");
        assert_eq!(x.slice(2, 4).unwrap(), w("010"));
        assert_eq!(x.slice(3, 2).unwrap(), Word::new());
        assert_eq!(x.slice(6, 5).unwrap(), Word::new());
        assert!(x.slice(0, 2).is_err());
        assert!(x.slice(4, 2).is_err());
        assert!(x.slice(1, 6).is_err());
    }

    #[test]
    fn extend_within_copies_across_limbs() {
        let mut x = Word::from_bits((0..150).map(|k| (k % 3 == 0) as u8));
        let orig = x.clone();
        x.extend_from_within(7, 140).unwrap();
        assert_eq!(x.len(), 150 + 134);
        for k in 0..134 {
            assert_eq!(x.get(151 + k), orig.get(7 + k));
        }
        assert!(x.extend_from_within(1, 1000).is_err());
    }

    #[test]
    fn truncate_clears_tail() {
        let mut x = Word::ones(100);
        x.truncate(70);
        assert_eq!(x, Word::ones(70));
        assert_eq!(x.count_ones(), 70);
    }

    #[test]
    fn packed_is_msb_first() {
        assert_eq!(w("101").packed(), Some(5));
        assert_eq!(w("011").packed(), Some(3));
        assert_eq!(Word::from_packed(6, 4), w("0110"));
        assert_eq!(Word::ones(65).packed(), None);
    }

    #[test]
    fn ordering_is_lexicographic() {
        let mut v = [w("111"), w("010"), w("101"), w("011"), w("110")];
        v.sort();
        let s: Vec<_> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["010", "011", "101", "110", "111"]);
    }

    #[test]
    fn border_array_of_abab() {
        assert_eq!(border_array(&w("101101")), vec![0, 0, 1, 1, 2, 3]);
    }

    #[test]
    fn occurrences_overlap() {
        let t = w("10101101");
        let p = w("101");
        assert_eq!(t.occurrences(&p).collect::<Vec<_>>(), vec![1, 3, 6]);
        assert_eq!(t.occurrences(&w("00")).count(), 0);
    }

    fn naive_occurrences(t: &Word, p: &Word) -> Vec<usize> {
        let (t, p): (Vec<u8>, Vec<u8>) = (t.iter().collect(), p.iter().collect());
        if p.is_empty() || p.len() > t.len() {
            return vec![];
        }
        (0..=t.len() - p.len())
            .filter(|&i| t[i..i + p.len()] == p[..])
            .map(|i| i + 1)
            .collect()
    }

    proptest! {
        #[test]
        fn slice_concat_roundtrip(bits in prop::collection::vec(0u8..2, 0..300), cut in 0usize..300) {
            let x = Word::from_bits(bits.iter().copied());
            let cut = cut.min(x.len());
            let left = x.slice(1, cut).unwrap();
            let right = x.slice(cut + 1, x.len()).unwrap();
            prop_assert_eq!(left.concat(&right), x.clone());
            prop_assert_eq!(x.count_ones_prefix(cut), left.count_ones());
            prop_assert!(x.starts_with(&left) && x.ends_with(&right));
        }

        #[test]
        fn occurrences_match_naive(t in prop::collection::vec(0u8..2, 0..200), p in prop::collection::vec(0u8..2, 1..6)) {
            let t = Word::from_bits(t);
            let p = Word::from_bits(p);
            prop_assert_eq!(t.occurrences(&p).collect::<Vec<_>>(), naive_occurrences(&t, &p));
        }
    }
}
