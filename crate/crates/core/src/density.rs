//! Density of `1`s in `b`.
//!
//! With `a(N)` the number of `1`s in `b[1..N]` and `s(n) = a(ℓ_n)`, the
//! density is `α = lim a(N)/N = 2 - 2β` where `β = Σ b_i 2^-i`. Truncating
//! `β` after `k` bits encloses it in `[β_k, β_k + 2^-k)`, and the
//! enclosure for `α` follows exactly. All results are exact rationals with
//! power-of-two denominators; floats appear only in display.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::blocks::{block_length, prefix};
use crate::error::{BrikError, Result};
use crate::limits::Limits;
use crate::word::Word;

/// Default truncation depth for reported enclosures of `α`.
pub const DEFAULT_BITS: u64 = 64;

/// Prefix ones-counts over a materialized prefix of `b`.
///
/// `a(N)` is answered from cumulative counts every 4096 symbols plus one
/// partial popcount.
#[derive(Debug, Clone)]
pub struct CountTable {
    word: Word,
    cumulative: Vec<u64>,
}

const STRIDE: usize = 4096;

impl CountTable {
    pub fn new(len: usize, limits: &Limits) -> Result<Self> {
        Ok(Self::from_word(prefix(len, limits)?))
    }

    pub fn from_word(word: Word) -> Self {
        let cumulative = (0..=word.len() / STRIDE)
            .map(|k| word.count_ones_prefix(k * STRIDE))
            .collect();
        CountTable { word, cumulative }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// `a(N)`; `a(0) = 0`.
    pub fn ones(&self, n: usize) -> u64 {
        assert!(n <= self.word.len(), "a({n}) beyond table of {}", self.word.len());
        let k = n / STRIDE;
        let base = self.cumulative[k];
        let rest = n - k * STRIDE;
        if rest == 0 {
            return base;
        }
        base + self.word.slice(k * STRIDE + 1, n).unwrap().count_ones()
    }

    /// `s(n) = a(ℓ_n)` read from the table.
    pub fn block_ones(&self, n: u64) -> Option<u64> {
        let l = block_length(n).to_usize()?;
        (l <= self.len()).then(|| self.ones(l))
    }

    /// `a(ℓ_n + t) = s(n) + a(n + t) - a(n)`, with `s(n)` from the
    /// recursion rather than the table.
    pub fn identity_holds(&self, n: u64, t: usize, s_n: u64) -> bool {
        let ln = block_length(n).to_usize().unwrap();
        let n = n as usize;
        self.ones(ln + t) + self.ones(n) == s_n + self.ones(n + t)
    }

    /// Consecutive counts `(N, a(N))` for `N = 1..=len`, for sweeps.
    pub fn running(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.word.iter().scan((0u64, 0u64), |(n, a), b| {
            *n += 1;
            *a += b as u64;
            Some((*n, *a))
        })
    }
}

/// `a(N)`.
pub fn ones_prefix_count(n: usize, limits: &Limits) -> Result<u64> {
    Ok(prefix(n, limits)?.count_ones())
}

/// `s(n)` by `s(1) = 2`, `s(n) = 2 s(n-1) - a(n-1)`.
pub fn block_ones(n: u64, limits: &Limits) -> Result<u64> {
    if n == 0 {
        return Err(BrikError::Domain("block indices start at 1".into()));
    }
    if n > limits.block_cap {
        return Err(BrikError::cap("materialization", limits.block_cap, n));
    }
    Ok(block_ones_sequence(n, limits)?[n as usize - 1])
}

/// `[s(1), ..., s(n)]` by the recursion.
pub fn block_ones_sequence(n: u64, limits: &Limits) -> Result<Vec<u64>> {
    let head = prefix(n.max(1) as usize, limits)?;
    let mut s = Vec::with_capacity(n as usize);
    s.push(2u64);
    for k in 2..=n as usize {
        let prev = s[k - 2];
        s.push(2 * prev - head.count_ones_prefix(k - 1));
    }
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constant {
    /// `β = Σ b_i 2^-i`, enclosed in `[lower, upper)`.
    Beta,
    /// `α = 2 - 2β`, enclosed in `(lower, upper]`.
    Alpha,
}

/// Exact rational enclosure of `α` or `β` from the first `bits` symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityInterval {
    pub constant: Constant,
    pub lower: BigRational,
    pub upper: BigRational,
    pub bits: u64,
}

impl DensityInterval {
    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    /// Closed containment; the open endpoint is never attained by the
    /// constant but including it keeps the check conservative.
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn is_within(&self, other: &DensityInterval) -> bool {
        other.lower <= self.lower && self.upper <= other.upper
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lower + &self.upper) / BigInt::from(2)
    }

    /// Number of fractional decimal digits shared by every point of the
    /// interval, or `None` when even the integer part is not determined.
    pub fn pinned_digits(&self) -> Option<usize> {
        if self.lower.floor() != self.upper.floor() {
            return None;
        }
        let mut d = 0usize;
        let mut scale = BigInt::one();
        loop {
            scale *= 10;
            let lo = (&self.lower * &scale).floor();
            let hi = (&self.upper * &scale).floor();
            if lo != hi {
                return Some(d);
            }
            d += 1;
        }
    }

    /// Decimal digits shared by both endpoints followed by `…`; just `…`
    /// when no digit is pinned.
    pub fn pinned_decimal(&self) -> String {
        match self.pinned_digits() {
            None => "…".to_string(),
            Some(d) => format!("{}…", decimal_truncated(&self.lower, d)),
        }
    }
}

/// `x` truncated toward negative infinity to `digits` fractional digits.
pub fn decimal_truncated(x: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = (x * &scale).floor().to_integer();
    let (int, frac) = scaled.div_mod_floor(&scale);
    if digits == 0 {
        format!("{int}.")
    } else {
        format!("{int}.{:0>width$}", frac.to_string(), width = digits)
    }
}

/// Parses a plain decimal such as `0.64505878493452` into an exact rational.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || BrikError::Parse(format!("malformed decimal {s:?}"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let num = BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(bad)?;
    let num = if neg { -num } else { num };
    Ok(BigRational::new(num, BigInt::from(10).pow(frac.len() as u32)))
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k as usize
}

/// `[Σ_{i<=k} b_i 2^-i, that + 2^-k)`.
pub fn beta_bounds(k: u64, limits: &Limits) -> Result<DensityInterval> {
    if k == 0 {
        return Err(BrikError::Domain("truncation depth must be at least 1".into()));
    }
    let k_bits = usize::try_from(k).map_err(|_| BrikError::cap("memory", limits.memory_cap, k))?;
    let head = prefix(k_bits, limits)?;
    let mut num = BigUint::zero();
    for b in &head {
        num = (num << 1u32) | BigUint::from(b);
    }
    let num = BigInt::from_biguint(Sign::Plus, num);
    let den = pow2(k);
    Ok(DensityInterval {
        constant: Constant::Beta,
        lower: BigRational::new(num.clone(), den.clone()),
        upper: BigRational::new(num + 1, den),
        bits: k,
    })
}

/// `[2 - 2 β_upper, 2 - 2 β_lower]`, width `2^(1-k)`.
pub fn alpha_bounds(k: u64, limits: &Limits) -> Result<DensityInterval> {
    let beta = beta_bounds(k, limits)?;
    let two = BigRational::from_integer(BigInt::from(2));
    Ok(DensityInterval {
        constant: Constant::Alpha,
        lower: &two - &two * &beta.upper,
        upper: &two - &two * &beta.lower,
        bits: k,
    })
}

/// `s(n) / ℓ_n`.
pub fn alpha_block_estimate(n: u64, limits: &Limits) -> Result<BigRational> {
    let s = block_ones(n, limits)?;
    let l = BigInt::from_biguint(Sign::Plus, block_length(n).into_inner());
    Ok(BigRational::new(BigInt::from(s), l))
}

/// `a(ℓ_n + t) = s(n) + a(n + t) - a(n)` for `0 <= t <= ℓ_n - n`.
pub fn count_identity_check(n: u64, t: u64, limits: &Limits) -> Result<bool> {
    if n == 0 || n + 1 > limits.block_cap {
        return Err(BrikError::Domain(format!(
            "need 1 <= n <= {}, got {n}",
            limits.block_cap.saturating_sub(1)
        )));
    }
    let ln = block_length(n).to_u64().unwrap();
    if t > ln - n {
        return Err(BrikError::OutOfRange(format!(
            "t = {t} exceeds ℓ_{n} - {n} = {}",
            ln - n
        )));
    }
    let table = CountTable::new((ln + t) as usize, limits)?;
    let s_n = block_ones(n, limits)?;
    Ok(table.identity_holds(n, t as usize, s_n))
}

/// Exact enclosure of `E(N) = a(N) - αN`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorRow {
    pub n: u64,
    pub ones: u64,
    pub lower: BigRational,
    pub upper: BigRational,
}

impl ErrorRow {
    /// Upper bound on `|E(N)|`.
    pub fn abs_upper(&self) -> BigRational {
        self.lower.abs().max(self.upper.abs())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorProfile {
    pub alpha: DensityInterval,
    pub n_max: u64,
    /// Rows at `N = 1`, every `ℓ_n <= N_max`, each power of ten and `N_max`.
    pub rows: Vec<ErrorRow>,
    /// `max_{N <= N_max}` of the upper bound on `|E(N)| / N`.
    pub max_relative: BigRational,
    pub argmax: u64,
}

impl fmt::Display for ErrorRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N={} a={} E in [{:.6}, {:.6}]",
            self.n,
            self.ones,
            self.lower.to_f64().unwrap_or(f64::NAN),
            self.upper.to_f64().unwrap_or(f64::NAN)
        )
    }
}

/// `[a - α_upper N, a - α_lower N]`, which contains `E(N)` when `a = a(N)`.
pub fn error_enclosure(n: u64, ones: u64, alpha: &DensityInterval) -> ErrorRow {
    let n_q = BigRational::from_integer(BigInt::from(n));
    let a_q = BigRational::from_integer(BigInt::from(ones));
    ErrorRow {
        n,
        ones,
        lower: &a_q - &alpha.upper * &n_q,
        upper: &a_q - &alpha.lower * &n_q,
    }
}

/// Encloses `E(N)` for sampled `N <= N_max` and sweeps every `N` for the
/// largest `|E(N)|/N`.
pub fn error_profile(n_max: u64, k: u64, limits: &Limits) -> Result<ErrorProfile> {
    if n_max == 0 {
        return Err(BrikError::Domain("N_max must be at least 1".into()));
    }
    // need 2^(1-k) * N_max < 1/2, i.e. N_max < 2^(k-2)
    if k < 2 || (k < 66 && u128::from(n_max) >= 1u128 << (k - 2)) {
        return Err(BrikError::InsufficientPrecision(format!(
            "{k} bits give an E(N) enclosure of width >= 1/2 at N = {n_max}"
        )));
    }
    let alpha = alpha_bounds(k, limits)?;
    let len = usize::try_from(n_max).map_err(|_| BrikError::cap("memory", limits.memory_cap, n_max))?;
    let table = CountTable::new(len, limits)?;

    // α = p / 2^(k-1) exactly at both endpoints.
    let den = pow2(k - 1);
    let lo_num = (&alpha.lower * BigRational::from_integer(den.clone())).to_integer();
    let hi_num = (&alpha.upper * BigRational::from_integer(den.clone())).to_integer();

    let mut samples: Vec<u64> = vec![1, n_max];
    samples.extend((1..).map(block_length).map_while(|l| l.to_u64().filter(|&l| l <= n_max)));
    samples.extend(std::iter::successors(Some(10u64), |p| p.checked_mul(10)).take_while(|&p| p <= n_max));
    samples.sort_unstable();
    samples.dedup();

    let rows = samples
        .iter()
        .map(|&n| error_enclosure(n, table.ones(n as usize), &alpha))
        .collect();

    // Compare |E|/N bounds as fractions over the common denominator 2^(k-1):
    // candidate num_a / n_a beats best num_b / n_b iff num_a * n_b > num_b * n_a.
    let (mut best_num, mut best_n) = (BigInt::zero(), 1u64);
    for (n, a) in table.running() {
        let scaled = BigInt::from(a) * &den;
        let e_lo = &scaled - &hi_num * n;
        let e_hi = &scaled - &lo_num * n;
        let abs = e_lo.abs().max(e_hi.abs());
        if &abs * best_n > &best_num * n {
            best_num = abs;
            best_n = n;
        }
    }
    Ok(ErrorProfile {
        alpha,
        n_max,
        rows,
        max_relative: BigRational::new(best_num, den * best_n),
        argmax: best_n,
    })
}
