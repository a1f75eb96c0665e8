//! The block construction `B_1 = 101`, `B_{i+1} = B_i C_i`, where `C_i` is
//! `B_i` with its first `i` symbols removed, and prefixes of the limit word.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{BrikError, Result};
use crate::index::BigIndex;
use crate::limits::Limits;
use crate::word::Word;

/// The first block, `101`.
pub fn base_block() -> Word {
    Word::from_bits([1, 0, 1])
}

/// `ℓ_i = |B_i| = 2^(i-1) + i + 1`.
///
/// Panics if `i == 0`.
pub fn block_length(i: u64) -> BigIndex {
    assert!(i >= 1, "block indices start at 1");
    let shift = usize::try_from(i - 1).expect("block index too large");
    BigIndex::new((BigUint::one() << shift) + (i + 1)).unwrap()
}

/// `ℓ_i` when it fits a `u128`; `None` otherwise or for `i == 0`.
pub fn block_length_u128(i: u64) -> Option<u128> {
    if i == 0 || i > 128 {
        return None;
    }
    (1u128 << (i - 1)).checked_add(i as u128 + 1)
}

/// Incremental state of the copy rule for an arbitrary seed block.
///
/// `buf` always holds a prefix of the limit word and at least `B_stage`.
#[derive(Debug, Clone)]
struct Builder {
    buf: Word,
    stage: u64,
    stage_len: usize,
}

impl Builder {
    fn new(seed: &Word) -> Result<Self> {
        if seed.len() < 3 {
            return Err(BrikError::Domain(format!(
                "seed block must have length >= 3, got {}",
                seed.len()
            )));
        }
        Ok(Builder {
            buf: seed.clone(),
            stage: 1,
            stage_len: seed.len(),
        })
    }

    /// Extends the buffer to at least `target` symbols.
    ///
    /// Position `p` with `ℓ_i < p <= ℓ_{i+1}` copies position `p - ℓ_i + i`.
    fn grow_to(&mut self, target: usize) {
        while self.buf.len() < target {
            let next_len = 2 * self.stage_len - self.stage as usize;
            if self.buf.len() >= next_len {
                self.stage += 1;
                self.stage_len = next_len;
                continue;
            }
            let upto = target.min(next_len);
            let shift = self.stage_len - self.stage as usize;
            let from = self.buf.len() + 1 - shift;
            self.buf
                .extend_from_within(from, upto - shift)
                .expect("copy source lies inside the built prefix");
        }
    }
}

fn check_block_cap(i: u64, limits: &Limits) -> Result<()> {
    if i == 0 {
        return Err(BrikError::Domain("block indices start at 1".into()));
    }
    if i > limits.block_cap {
        return Err(BrikError::cap("materialization", limits.block_cap, i));
    }
    Ok(())
}

/// Materializes `B_i`.
pub fn build_block(i: u64, limits: &Limits) -> Result<Word> {
    build_block_from(&base_block(), i, limits)
}

/// Materializes the `i`-th block of the copy rule started from `seed`.
pub fn build_block_from(seed: &Word, i: u64, limits: &Limits) -> Result<Word> {
    check_block_cap(i, limits)?;
    let mut b = Builder::new(seed)?;
    let mut len = seed.len();
    for k in 1..i {
        len = 2 * len - k as usize;
    }
    if len > limits.memory_cap {
        return Err(BrikError::cap("memory", limits.memory_cap, len));
    }
    b.grow_to(len);
    b.buf.truncate(len);
    Ok(b.buf)
}

/// `b[1..n]`.
pub fn prefix(n: usize, limits: &Limits) -> Result<Word> {
    prefix_from(&base_block(), n, limits)
}

pub fn prefix_from(seed: &Word, n: usize, limits: &Limits) -> Result<Word> {
    if n == 0 {
        return Err(BrikError::Domain("prefix length must be at least 1".into()));
    }
    if n > limits.memory_cap {
        return Err(BrikError::cap("memory", limits.memory_cap, n));
    }
    let mut b = Builder::new(seed)?;
    b.grow_to(n);
    b.buf.truncate(n);
    Ok(b.buf)
}

/// Cursor yielding `b_1, b_2, ...`.
///
/// The generated prefix is retained and extended by doubling, so each bit
/// costs amortized constant work. Once the memory cap is reached the cursor
/// yields a single cap-exceeded error and then ends.
#[derive(Debug, Clone)]
pub struct Stream {
    builder: Builder,
    pos: usize,
    limit: Option<usize>,
    memory_cap: usize,
    failed: bool,
}

impl Stream {
    pub fn new(limits: &Limits) -> Self {
        Self::from_seed(&base_block(), None, limits).unwrap()
    }

    /// A cursor that stops after `limit` bits.
    pub fn with_limit(limit: usize, limits: &Limits) -> Self {
        Self::from_seed(&base_block(), Some(limit), limits).unwrap()
    }

    pub fn from_seed(seed: &Word, limit: Option<usize>, limits: &Limits) -> Result<Self> {
        Ok(Stream {
            builder: Builder::new(seed)?,
            pos: 0,
            limit,
            memory_cap: limits.memory_cap,
            failed: false,
        })
    }

    /// Number of bits yielded so far.
    pub fn position(&self) -> usize {
        self.pos
    }
}

impl Iterator for Stream {
    type Item = Result<u8>;

    fn next(&mut self) -> Option<Result<u8>> {
        if self.failed || self.limit.is_some_and(|l| self.pos >= l) {
            return None;
        }
        if self.pos >= self.builder.buf.len() {
            if self.pos >= self.memory_cap {
                self.failed = true;
                return Some(Err(BrikError::cap(
                    "memory",
                    self.memory_cap,
                    self.pos + 1,
                )));
            }
            let mut target = (self.builder.buf.len() * 2).max(1024).min(self.memory_cap);
            if let Some(l) = self.limit {
                target = target.min(l);
            }
            self.builder.grow_to(target);
        }
        self.pos += 1;
        self.builder.buf.get(self.pos).map(Ok)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    const TABLE: [&str; 5] = [
        "101",
        "10101",
        "10101101",
        "1010110101101",
        "1010110101101110101101",
    ];

    #[test]
    fn block_lengths() {
        assert_eq!(block_length(1).to_u64(), Some(3));
        assert_eq!(block_length(4).to_u64(), Some(13));
        let built = build_block(10, &Limits::default()).unwrap();
        assert_eq!(block_length(10).to_u64(), Some(built.len() as u64));
        assert_eq!(built.len(), 523);
        assert_eq!(block_length_u128(128), Some((1u128 << 127) + 129));
        assert_eq!(block_length_u128(0), None);
    }

    #[test]
    fn huge_block_length_is_exact() {
        let l = block_length(1_000_000);
        assert_eq!(l.bits(), 1_000_000);
    }

    #[test]
    fn table_blocks() {
        let lim = Limits::default();
        for (i, expect) in TABLE.iter().enumerate() {
            assert_eq!(build_block(i as u64 + 1, &lim).unwrap(), w(expect));
        }
    }

    #[test]
    fn block_cap_is_enforced() {
        let lim = Limits::default();
        let err = build_block(31, &lim).unwrap_err();
        assert_eq!(err, BrikError::cap("materialization", 30, 31));
        assert!(build_block(0, &lim).is_err());
    }

    #[test]
    fn prefix_examples() {
        let lim = Limits::default();
        assert_eq!(prefix(5, &lim).unwrap(), w("10101"));
        assert_eq!(prefix(13, &lim).unwrap(), w(TABLE[3]));
        assert!(prefix(0, &lim).is_err());
        let small = Limits { memory_cap: 100, ..lim };
        assert!(prefix(101, &small).unwrap_err().is_cap_exceeded());
    }

    #[test]
    fn stream_examples() {
        let lim = Limits::default();
        let first: Vec<u8> = Stream::new(&lim).take(8).map(|r| r.unwrap()).collect();
        assert_eq!(first, [1, 0, 1, 0, 1, 1, 0, 1]);
        let b14_15: Vec<u8> = Stream::new(&lim)
            .skip(13)
            .take(2)
            .map(|r| r.unwrap())
            .collect();
        assert_eq!(b14_15, [1, 1]);
    }

    #[test]
    fn stream_halts_at_memory_cap() {
        let lim = Limits { memory_cap: 3000, ..Limits::default() };
        let out: Vec<_> = Stream::new(&lim).collect();
        assert_eq!(out.len(), 3001);
        assert!(out[..3000].iter().all(|r| r.is_ok()));
        assert!(out[3000].as_ref().unwrap_err().is_cap_exceeded());
    }

    #[test]
    fn stream_with_limit_ends_cleanly() {
        let lim = Limits::default();
        let s = Stream::with_limit(5000, &lim);
        let bits: Word = s.map(|r| r.unwrap()).collect();
        assert_eq!(bits, prefix(5000, &lim).unwrap());
    }

    #[test]
    fn short_seed_rejected() {
        assert!(prefix_from(&w("10"), 10, &Limits::default()).is_err());
    }
}
