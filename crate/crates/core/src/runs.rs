//! First occurrences of the runs `1^n`.
//!
//! `r_1 = 1`, `r_2 = 5` and `r_{n+1} = 2^(r_n - 2) + r_n`, giving
//! `r_3 = 13`, `r_4 = 2061` and `r_5 = 2^2059 + 2061`. `r_6` would need
//! more than `2^2059` bits and is refused.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use crate::access::{bit_at, window};
use crate::blocks::Stream;
use crate::error::{BrikError, Result};
use crate::index::BigIndex;
use crate::limits::Limits;

/// Largest run length whose first occurrence is representable.
pub const MAX_EXACT_RUN: u64 = 5;

/// Largest height `h` for which `2↑↑h` is materialized (65536 bits).
pub const MAX_TETRATION_HEIGHT: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunRecord {
    pub n: u64,
    pub start: BigIndex,
    pub exact: bool,
}

/// `r_n`, the start of the first `1^n` in `b`.
pub fn run_start(n: u64) -> Result<RunRecord> {
    if n == 0 {
        return Err(BrikError::Domain("run length must be at least 1".into()));
    }
    if n > MAX_EXACT_RUN {
        return Err(BrikError::Representation(format!(
            "r_{n} needs at least 2^2059 bits (r_6 = 2^(r_5 - 2) + r_5 with r_5 = 2^2059 + 2061)"
        )));
    }
    let start = match n {
        1 => BigUint::one(),
        _ => {
            let mut r = BigUint::from(5u32);
            for _ in 2..n {
                let shift = (&r - 2u32).to_usize().expect("r_4 - 2 fits a shift");
                r = (BigUint::one() << shift) + r;
            }
            r
        }
    };
    Ok(RunRecord {
        n,
        start: BigIndex::new(start).unwrap(),
        exact: true,
    })
}

/// Checks `1^n` at `r_n` and zeros on both flanks (only the right flank for
/// `n = 1`, which starts the word).
pub fn verify_run(n: u64, limits: &Limits) -> Result<bool> {
    let rec = run_start(n)?;
    let run = window(&rec.start, n as usize, limits)?;
    if run.count_ones() != n {
        return Ok(false);
    }
    if let Some(before) = rec.start.checked_sub(1) {
        if bit_at(&before) != 0 {
            return Ok(false);
        }
    }
    Ok(bit_at(&rec.start.add(n)) == 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanResult {
    Found(u64),
    NotFound { cutoff: u64 },
}

impl ScanResult {
    pub fn found(self) -> Option<u64> {
        match self {
            ScanResult::Found(p) => Some(p),
            ScanResult::NotFound { .. } => None,
        }
    }
}

/// Least `p` with `b[p..p + n - 1] = 1^n` and `p + n - 1 <= cutoff`,
/// found by streaming the prefix.
pub fn scan_first_run(n: u64, cutoff: u64, limits: &Limits) -> Result<ScanResult> {
    if n == 0 {
        return Err(BrikError::Domain("run length must be at least 1".into()));
    }
    let cutoff_bits = usize::try_from(cutoff).unwrap_or(usize::MAX);
    if cutoff_bits > limits.memory_cap {
        return Err(BrikError::cap("memory", limits.memory_cap, cutoff));
    }
    let mut run = 0u64;
    for (k, bit) in Stream::with_limit(cutoff_bits, limits).enumerate() {
        if bit? == 1 {
            run += 1;
            if run == n {
                return Ok(ScanResult::Found(k as u64 + 2 - n));
            }
        } else {
            run = 0;
        }
    }
    Ok(ScanResult::NotFound { cutoff })
}

/// `2↑↑h`: `2↑↑0 = 1`, `2↑↑h = 2^(2↑↑(h-1))`.
pub fn tetration(h: u32) -> Result<BigUint> {
    if h > MAX_TETRATION_HEIGHT {
        return Err(BrikError::Representation(format!(
            "2↑↑{h} has 2↑↑{} bits; only heights up to {MAX_TETRATION_HEIGHT} are representable",
            h - 1
        )));
    }
    let mut t = BigUint::one();
    for _ in 0..h {
        let e = t.to_usize().expect("tower exponent fits a shift");
        t = BigUint::one() << e;
    }
    Ok(t)
}

/// `r_n - (2↑↑(n-1) + 3)`; the tetration bound holds iff this is `>= 0`.
///
/// Defined for `2 <= n <= 5`; at `n = 2` the margin is exactly zero.
pub fn tetration_margin(n: u64) -> Result<BigInt> {
    if !(2..=MAX_EXACT_RUN).contains(&n) {
        return Err(BrikError::Domain(format!(
            "tetration bound is checked for 2 <= n <= {MAX_EXACT_RUN}, got {n}"
        )));
    }
    let r = BigInt::from(run_start(n)?.start.into_inner());
    let bound = BigInt::from(tetration(n as u32 - 1)?) + 3;
    Ok(r - bound)
}

/// `r_n >= 2↑↑(n-1) + 3`. Stated for `n >= 3`; `n = 2` is accepted and
/// holds with equality (see [`tetration_margin`]).
pub fn check_tetration_bound(n: u64) -> Result<bool> {
    Ok(tetration_margin(n)? >= BigInt::ZERO)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_start_examples() {
        assert_eq!(run_start(2).unwrap().start.to_u64(), Some(5));
        assert_eq!(run_start(3).unwrap().start.to_u64(), Some(13));
        assert_eq!(run_start(4).unwrap().start.to_u64(), Some(2061));
        assert_eq!(run_start(5).unwrap().start, BigIndex::pow2_plus(2059, 2061));
        assert!(run_start(5).unwrap().exact);
    }

    #[test]
    fn run_start_refuses_six() {
        match run_start(6) {
            Err(BrikError::Representation(msg)) => assert!(msg.contains("2^2059 bits")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(run_start(0).is_err());
    }

    #[test]
    fn verify_run_examples() {
        let lim = Limits::default();
        for n in 1..=5 {
            assert!(verify_run(n, &lim).unwrap(), "n = {n}");
        }
        assert!(verify_run(6, &lim).is_err());
    }

    #[test]
    fn scan_examples() {
        let lim = Limits::default();
        assert_eq!(scan_first_run(2, 100, &lim).unwrap(), ScanResult::Found(5));
        assert_eq!(scan_first_run(4, 10_000, &lim).unwrap(), ScanResult::Found(2061));
        assert_eq!(
            scan_first_run(5, 1_000_000, &lim).unwrap(),
            ScanResult::NotFound { cutoff: 1_000_000 }
        );
    }

    #[test]
    fn scan_respects_cutoff_on_run_end() {
        let lim = Limits::default();
        // 111 occupies 13..=15
        assert_eq!(scan_first_run(3, 14, &lim).unwrap().found(), None);
        assert_eq!(scan_first_run(3, 15, &lim).unwrap().found(), Some(13));
    }

    #[test]
    fn tetration_values() {
        assert_eq!(tetration(0).unwrap(), BigUint::from(1u32));
        assert_eq!(tetration(1).unwrap(), BigUint::from(2u32));
        assert_eq!(tetration(3).unwrap(), BigUint::from(16u32));
        assert_eq!(tetration(4).unwrap(), BigUint::from(65536u32));
        assert_eq!(tetration(5).unwrap().bits(), 65537);
        assert!(matches!(tetration(6), Err(BrikError::Representation(_))));
    }

    #[test]
    fn tetration_bound() {
        for n in 3..=5 {
            assert!(check_tetration_bound(n).unwrap());
        }
        assert_eq!(tetration_margin(2).unwrap(), BigInt::ZERO);
        assert_eq!(tetration_margin(3).unwrap(), BigInt::from(13 - 7));
        assert_eq!(tetration_margin(4).unwrap(), BigInt::from(2061 - 19));
        assert!(check_tetration_bound(1).is_err());
        assert!(check_tetration_bound(6).is_err());
    }
}
