//! Random access at arbitrary-precision positions.
//!
//! Writing `N = ℓ_n + t` with `ℓ_n < N <= ℓ_{n+1}`, the prefix of length
//! `N` is `B_n B_n[n+1..n+t]`, so `b[N] = b[n + t] = b[N - 2^(n-1) - 1]`.
//! Each reduction roughly halves the position; iterating down to the base
//! block `101` costs at most `bits(N) + 2` steps.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::blocks::{self, block_length, block_length_u128};
use crate::error::{BrikError, Result};
use crate::index::BigIndex;
use crate::limits::Limits;
use crate::word::Word;

/// Bits of `b` kept materialized to terminate window recursion early.
const TABLE_BITS: usize = 1 << 16;

fn table() -> &'static Word {
    static TABLE: OnceLock<Word> = OnceLock::new();
    TABLE.get_or_init(|| blocks::prefix(TABLE_BITS, &Limits::default()).unwrap())
}

fn below_four(what: &str) -> BrikError {
    BrikError::Domain(format!("{what} requires a position >= 4 (1..3 lie in B_1)"))
}

/// The unique `n >= 1` with `ℓ_n < N <= ℓ_{n+1}`.
pub fn find_block_index(pos: &BigIndex) -> Result<u64> {
    match pos.to_u64() {
        Some(p) => find_block_index_u64(p),
        None => Ok(find_block_index_big(pos.value())),
    }
}

pub fn find_block_index_u64(pos: u64) -> Result<u64> {
    if pos <= 3 {
        return Err(below_four("find_block_index"));
    }
    let p = pos as u128;
    let len = |n: u64| block_length_u128(n).unwrap();
    // 2^(n-1) <= ℓ_n, so n <= bits(p) whenever ℓ_n < p.
    let mut n = (64 - pos.leading_zeros()) as u64;
    while n > 1 && len(n) >= p {
        n -= 1;
    }
    while len(n + 1) < p {
        n += 1;
    }
    Ok(n)
}

fn find_block_index_big(pos: &BigUint) -> u64 {
    let mut n = pos.bits();
    while n > 1 && block_length(n).value() >= pos {
        n -= 1;
    }
    while block_length(n + 1).value() < pos {
        n += 1;
    }
    n
}

/// `N' = N - 2^(n-1) - 1` with `n = find_block_index(N)`; `b[N'] = b[N]`
/// and `n + 1 <= N' <= ℓ_n`.
pub fn reduce_index(pos: &BigIndex) -> Result<BigIndex> {
    match pos.to_u64() {
        Some(p) => reduce_u64(p).map(BigIndex::from),
        None => Ok(BigIndex::new(reduce_big(pos.value())).unwrap()),
    }
}

fn reduce_u64(pos: u64) -> Result<u64> {
    let n = find_block_index_u64(pos)?;
    Ok(pos - (1u64 << (n - 1)) - 1)
}

fn reduce_big(pos: &BigUint) -> BigUint {
    let n = find_block_index_big(pos);
    pos - (BigUint::one() << (n - 1) as usize) - 1u32
}

fn base_bit(pos: u64) -> u8 {
    match pos {
        1 | 3 => 1,
        2 => 0,
        _ => unreachable!("base case only covers B_1"),
    }
}

/// `b[N]`.
pub fn bit_at(pos: &BigIndex) -> u8 {
    bit_at_with_steps(pos).0
}

/// `b[N]` together with the number of reductions applied.
pub fn bit_at_with_steps(pos: &BigIndex) -> (u8, u32) {
    let mut steps = 0;
    let mut big = pos.value().clone();
    let mut small = loop {
        if let Some(p) = big.to_u64() {
            break p;
        }
        big = reduce_big(&big);
        steps += 1;
    };
    while small > 3 {
        small = reduce_u64(small).unwrap();
        steps += 1;
    }
    (base_bit(small), steps)
}

/// `b[N .. N + len - 1]`.
///
/// Ranges lying inside one tier `(ℓ_n, ℓ_{n+1}]` are reduced as a block, so
/// the cost is proportional to the number of tier crossings rather than to
/// `len` times the bit length.
pub fn window(start: &BigIndex, len: usize, limits: &Limits) -> Result<Word> {
    if len == 0 {
        return Err(BrikError::Domain("window length must be at least 1".into()));
    }
    if len > limits.window_cap {
        return Err(BrikError::cap("window", limits.window_cap, len));
    }
    let mut out = Word::with_capacity(len);
    let end = start.value() + (len - 1);
    emit_range(start.value().clone(), end, &mut out);
    debug_assert_eq!(out.len(), len);
    Ok(out)
}

/// Appends `b[s..=e]` to `out`.
fn emit_range(mut s: BigUint, mut e: BigUint, out: &mut Word) {
    let t = table();
    loop {
        if let Some(end) = e.to_usize().filter(|&x| x <= t.len()) {
            let s = s.to_usize().unwrap();
            out.extend_from_range(t, s - 1, end + 1 - s);
            return;
        }
        let n = find_block_index_big(&e);
        let ln = block_length(n).into_inner();
        if s > ln {
            let shift = (BigUint::one() << (n - 1) as usize) + 1u32;
            s -= &shift;
            e -= &shift;
        } else {
            emit_range(s, ln.clone(), out);
            s = ln + 1u32;
        }
    }
}
