//! Borders, good indices, recurrence and the stammering decomposition.
//!
//! An index `i` is good when `B_i` has a border of length `i`. If `i` is
//! good then so is `ℓ_i`, which yields the chain `q_0 = 1`,
//! `q_{k+1} = ℓ_{q_k}`: `1, 3, 8, 137, 2^136 + 138, ...`. Suffix reads go
//! through random access so that blocks of length `2^136` never need to
//! exist in memory.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::One;

use crate::access::window;
use crate::blocks::{block_length, build_block, prefix};
use crate::error::{BrikError, Result};
use crate::index::BigIndex;
use crate::limits::Limits;
use crate::word::Word;

/// Longest representable prefix of the good chain, `[q_0, ..., q_4]`.
pub const MAX_CHAIN: usize = 4;

/// Whether `b[1..i] = b[ℓ_i - i + 1..ℓ_i]`.
pub fn is_good(i: u64, limits: &Limits) -> Result<bool> {
    if i == 0 {
        return Err(BrikError::Domain("block indices start at 1".into()));
    }
    let len = usize::try_from(i).map_err(|_| BrikError::cap("window", limits.window_cap, i))?;
    let head = prefix(len, limits)?;
    let start = block_length(i).checked_sub(i).unwrap().add(1);
    let tail = window(&start, len, limits)?;
    Ok(head == tail)
}

/// `[q_0, ..., q_k]`.
pub fn good_chain(k: usize) -> Result<Vec<BigIndex>> {
    if k > MAX_CHAIN {
        return Err(BrikError::Representation(format!(
            "q_{k} is a block length of index 2^136 + 138; only q_0..q_{MAX_CHAIN} are representable"
        )));
    }
    let mut chain = vec![BigIndex::one()];
    for _ in 0..k {
        let q = chain.last().unwrap().to_u64().expect("q_3 = 137 fits a u64");
        chain.push(block_length(q));
    }
    Ok(chain)
}

/// Whether `B_s` ends with `B_i`, reading the suffix of `B_s` by random
/// access at `ℓ_s - ℓ_i + 1`.
pub fn ends_with_block(s: u64, i: u64, limits: &Limits) -> Result<bool> {
    if i == 0 || i >= s {
        return Err(BrikError::Domain(format!("need 1 <= i < s, got i = {i}, s = {s}")));
    }
    let li = block_length(i);
    let li_bits = li
        .to_usize()
        .filter(|&l| l <= limits.window_cap)
        .ok_or_else(|| BrikError::cap("window", limits.window_cap, &li))?;
    let start = BigIndex::new(block_length(s).into_inner() - li.value() + 1u32).unwrap();
    let suffix = window(&start, li_bits, limits)?;
    Ok(suffix == build_block(i, limits)?)
}

/// Overlapping occurrences of `w` in `b[1..L]`.
pub fn count_occurrences(w: &Word, prefix_len: usize, limits: &Limits) -> Result<u64> {
    if w.is_empty() || w.len() > prefix_len {
        return Err(BrikError::Domain(format!(
            "need 1 <= |w| <= L, got |w| = {}, L = {prefix_len}",
            w.len()
        )));
    }
    let text = prefix(prefix_len, limits)?;
    Ok(text.occurrences(w).count() as u64)
}

/// `B_n = u v` and `B_{n+1} = u v v` with `u = b[1..n]`, `v = b[n+1..ℓ_n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessRecord {
    pub n: u64,
    pub u: Word,
    pub v: Word,
    /// `|u| / |v| = n / (2^(n-1) + 1)`.
    pub ratio: Ratio<BigUint>,
    /// Whether `u v v` equals `B_{n+1}`.
    pub prefix_ok: bool,
}

pub fn witness(n: u64, limits: &Limits) -> Result<WitnessRecord> {
    if n == 0 {
        return Err(BrikError::Domain("witness index starts at 1".into()));
    }
    if n + 1 > limits.block_cap {
        return Err(BrikError::cap("materialization", limits.block_cap, n + 1));
    }
    let next = build_block(n + 1, limits)?;
    let ln = block_length(n).to_usize().unwrap();
    let n_bits = n as usize;
    let u = next.slice(1, n_bits)?;
    let v = next.slice(n_bits + 1, ln)?;
    let prefix_ok = u.concat(&v).concat(&v) == next;
    let v_len = (BigUint::one() << (n - 1) as usize) + 1u32;
    Ok(WitnessRecord {
        n,
        ratio: Ratio::new(BigUint::from(n), v_len),
        u,
        v,
        prefix_ok,
    })
}

/// Good indices in `1..=max`, found by direct border checks.
pub fn good_indices(max: u64, limits: &Limits) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for i in 1..=max {
        if is_good(i, limits)? {
            out.push(i);
        }
    }
    Ok(out)
}
