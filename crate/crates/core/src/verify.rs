//! Invariant suite over every module, run by `brik verify`.
//!
//! The sequence under test is generated from a seed block (normally `101`)
//! so that a tampered seed can serve as a negative control: random access
//! and the reference tables are anchored to `101` and disagree with it.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive};

use crate::access::{bit_at, bit_at_with_steps, find_block_index, reduce_index, window};
use crate::bfile::{self, Offset};
use crate::blocks::{self, block_length, Stream};
use crate::density::{self, CountTable};
use crate::factors::{self, FactorSource};
use crate::index::BigIndex;
use crate::limits::Limits;
use crate::runs::{self, ScanResult};
use crate::structure;
use crate::word::Word;

pub const BLOCK_TABLE: [&str; 5] = [
    "101",
    "10101",
    "10101101",
    "1010110101101",
    "1010110101101110101101",
];

/// The first 72 symbols of `b`.
pub const PREFIX_72: &str =
    "101011010110111010110110101101110101101010110111010110110101101110101101";

/// Leading digits of `α`.
pub const ALPHA_DIGITS: &str = "0.64505878493452";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Reduced sizes; stops at the first failure.
    Fast,
    /// Full sizes; runs every check.
    Full,
}

impl std::str::FromStr for Suite {
    type Err = crate::BrikError;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "fast" => Ok(Suite::Fast),
            "full" => Ok(Suite::Full),
            _ => Err(crate::BrikError::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:<28} {:>9.3}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub suite: Suite,
    pub outcomes: Vec<CheckOutcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }
}

type CheckResult = std::result::Result<String, String>;

struct Ctx {
    suite: Suite,
    limits: Limits,
    seed: Word,
}

impl Ctx {
    fn pick<T>(&self, fast: T, full: T) -> T {
        match self.suite {
            Suite::Fast => fast,
            Suite::Full => full,
        }
    }

    fn prefix(&self, n: usize) -> std::result::Result<Word, String> {
        blocks::prefix_from(&self.seed, n, &self.limits).map_err(|e| e.to_string())
    }

    fn block(&self, i: u64) -> std::result::Result<Word, String> {
        blocks::build_block_from(&self.seed, i, &self.limits).map_err(|e| e.to_string())
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: crate::BrikError) -> String {
    e.to_string()
}

/// Literal transcription of the copy rule on byte vectors.
fn naive_block(seed: &Word, i: u64) -> Vec<u8> {
    let mut b: Vec<u8> = seed.iter().collect();
    for k in 1..i as usize {
        let c = b[k..].to_vec();
        b.extend(c);
    }
    b
}

fn check_block_table(ctx: &Ctx) -> CheckResult {
    for (i, expect) in BLOCK_TABLE.iter().enumerate() {
        let got = ctx.block(i as u64 + 1)?;
        ensure(got.to_string() == *expect, || {
            format!("B_{} = {got}, expected {expect}", i + 1)
        })?;
    }
    let p = ctx.prefix(72)?;
    ensure(p.to_string() == PREFIX_72, || format!("prefix(72) = {p}"))?;
    Ok("B_1..B_5 and prefix(72) match".into())
}

fn check_copy_rule(ctx: &Ctx) -> CheckResult {
    let top = ctx.pick(20, ctx.limits.block_cap.min(29));
    let naive_top = top.min(20);
    for i in 1..=naive_top {
        let naive = Word::from_bits(naive_block(&ctx.seed, i));
        ensure(ctx.block(i)? == naive, || format!("B_{i} differs from the literal copy rule"))?;
    }
    let big = ctx.block(top + 1)?;
    for i in 1..=top {
        let li = block_length(i).to_usize().unwrap();
        let next_len = block_length(i + 1).to_usize().unwrap();
        let bi = big.slice(1, li).map_err(err)?;
        let ci = bi.slice(i as usize + 1, li).map_err(err)?;
        let next = big.slice(1, next_len).map_err(err)?;
        ensure(next == bi.concat(&ci), || format!("B_{} != B_{i} C_{i}", i + 1))?;
    }
    Ok(format!("B_(i+1) = B_i C_i for i <= {top}"))
}

fn check_lengths(ctx: &Ctx) -> CheckResult {
    let top = ctx.pick(20, ctx.limits.block_cap);
    let big = ctx.block(top)?;
    for i in 1..=top {
        let li = block_length(i);
        let rec = BigIndex::new(li.value() * 2u32 - i).unwrap();
        ensure(block_length(i + 1) == rec, || format!("ℓ_{} != 2ℓ_{i} - {i}", i + 1))?;
        let l = li.to_usize().unwrap();
        let bi = big.slice(1, l).map_err(err)?;
        ensure(bi.get(l - 1) == Some(0) && bi.get(l) == Some(1), || {
            format!("B_{i} does not end in 01")
        })?;
    }
    ensure(big.len() == block_length(top).to_usize().unwrap(), || {
        format!("|B_{top}| != ℓ_{top}")
    })?;
    Ok(format!("ℓ recurrence and ends-in-01 for i <= {top}"))
}

fn check_stream(ctx: &Ctx) -> CheckResult {
    let n = ctx.pick(20_000, 100_000);
    let p = ctx.prefix(n)?;
    let streamed: Word = Stream::from_seed(&ctx.seed, Some(n), &ctx.limits)
        .map_err(err)?
        .map(|r| r.unwrap())
        .collect();
    ensure(streamed == p, || "stream disagrees with prefix".into())?;
    for m in [1, 2, 3, 7, 64, 65, 1000, 4097, n / 3, n] {
        ensure(ctx.prefix(m)? == p.slice(1, m).map_err(err)?, || {
            format!("prefix({m}) is not a prefix of prefix({n})")
        })?;
    }
    Ok(format!("stream = prefix for N <= {n}"))
}

fn check_self_similarity(ctx: &Ctx) -> CheckResult {
    let top = ctx.pick(16, 20);
    let p = ctx.prefix(block_length(top + 1).to_usize().unwrap())?;
    for n in 2..=top {
        let ln = block_length(n).to_usize().unwrap();
        let n = n as usize;
        let tail = p.slice(ln + 1, 2 * ln - n).map_err(err)?;
        let head = p.slice(n + 1, ln).map_err(err)?;
        ensure(tail == head, || format!("b[ℓ_{n} + t] != b[{n} + t]"))?;
    }
    Ok(format!("b[ℓ_n + t] = b[n + t] for n in 2..={top}"))
}

fn check_bit_at(ctx: &Ctx) -> CheckResult {
    let n = ctx.pick(20_000, 100_000);
    let p = ctx.prefix(n)?;
    for (k, b) in p.iter().enumerate() {
        let pos = BigIndex::from(k as u64 + 1);
        ensure(bit_at(&pos) == b, || format!("bit_at({}) != prefix[{}]", k + 1, k + 1))?;
    }
    Ok(format!("bit_at = prefix for N <= {n}"))
}

fn check_reduction(ctx: &Ctx) -> CheckResult {
    let n_max = ctx.pick(20_000u64, 100_000);
    let p = ctx.prefix(n_max as usize)?;
    for pos in 4..=n_max {
        let idx = BigIndex::from(pos);
        let n = find_block_index(&idx).map_err(err)?;
        let r = reduce_index(&idx).map_err(err)?.to_u64().unwrap();
        let ln = block_length(n).to_u64().unwrap();
        ensure(n < r && r <= ln && r < pos, || format!("reduce({pos}) = {r} out of range"))?;
        let bits = 64 - pos.leading_zeros() as u64;
        ensure(r <= pos / 2 + bits + 2, || format!("reduce({pos}) = {r} does not halve"))?;
        ensure(p.get(r as usize) == p.get(pos as usize), || {
            format!("b[{r}] != b[{pos}]")
        })?;
        let (_, steps) = bit_at_with_steps(&idx);
        ensure(steps as u64 <= bits + 2, || format!("{steps} steps at {pos}"))?;
    }
    for k in (64..=4096).step_by(61) {
        for m in [0u64, 1, 2061, 123_456_789] {
            let idx = BigIndex::pow2_plus(k, m);
            let (_, steps) = bit_at_with_steps(&idx);
            ensure(steps as u64 <= idx.bits() + 2, || {
                format!("{steps} steps at {}", idx.to_expr())
            })?;
        }
    }
    Ok(format!("reduction sound for N in [4, {n_max}]; step bound holds to 2^4096"))
}

/// Deterministic sample points without pulling in an RNG.
fn samples(count: usize, modulus: u64, salt: u64) -> impl Iterator<Item = u64> {
    let mut x = 0x9E37_79B9_7F4A_7C15u64 ^ salt;
    (0..count).map(move |_| {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        x % modulus
    })
}

fn check_windows(ctx: &Ctx) -> CheckResult {
    let count = ctx.pick(50, 300);
    let starts = [
        BigIndex::from(1),
        BigIndex::from(12_345),
        BigIndex::pow2_plus(70, 5),
        BigIndex::pow2_plus(2059, 2000),
        BigIndex::pow2_plus(4000, 77),
    ];
    let mut lens = samples(count * 2, 3000, 7);
    for (k, off) in samples(count, 1 << 40, 11).enumerate() {
        let base = &starts[k % starts.len()];
        let start = BigIndex::new(base.value() + off).unwrap();
        let (a, b) = (lens.next().unwrap() as usize + 1, lens.next().unwrap() as usize + 1);
        let whole = window(&start, a + b, &ctx.limits).map_err(err)?;
        let left = window(&start, a, &ctx.limits).map_err(err)?;
        let right = window(&start.add(a as u64), b, &ctx.limits).map_err(err)?;
        ensure(whole == left.concat(&right), || {
            format!("window split fails at {} ({a}+{b})", start.to_expr())
        })?;
        ensure(factors::is_factor(&whole), || {
            format!("00 inside window at {}", start.to_expr())
        })?;
    }
    let p = ctx.prefix(200_000)?;
    let w = window(&BigIndex::from(70_001), 100_000, &ctx.limits).map_err(err)?;
    ensure(w == p.slice(70_001, 170_000).map_err(err)?, || "window != prefix slice".into())?;
    Ok(format!("{count} sampled split windows, no 00"))
}

fn check_astronomical_run(ctx: &Ctx) -> CheckResult {
    let r5 = runs::run_start(5).map_err(err)?.start;
    ensure(r5 == BigIndex::pow2_plus(2059, 2061), || format!("r_5 = {}", r5.to_expr()))?;
    let w = window(&r5.checked_sub(1).unwrap(), 7, &ctx.limits).map_err(err)?;
    ensure(w.to_string() == "0111110", || format!("window(r_5 - 1, 7) = {w}"))?;
    Ok("window(r_5 - 1, 7) = 0111110".into())
}

fn check_runs(ctx: &Ctx) -> CheckResult {
    let mut prev = BigIndex::one();
    for n in 1..=4u64 {
        let r = runs::run_start(n).map_err(err)?;
        let scan = first_run_in(&ctx.prefix(10_000)?, n);
        ensure(scan == r.start.to_u64(), || {
            format!("scan found {scan:?} for 1^{n}, recursion gives {}", r.start)
        })?;
    }
    for n in 1..=5 {
        ensure(runs::verify_run(n, &ctx.limits).map_err(err)?, || format!("verify_run({n})"))?;
        let r = runs::run_start(n).map_err(err)?.start;
        ensure(n == 1 || r > prev, || format!("r_{n} not increasing"))?;
        prev = r;
    }
    for n in 3..=5 {
        ensure(runs::check_tetration_bound(n).map_err(err)?, || format!("r_{n} < 2↑↑{} + 3", n - 1))?;
    }
    ensure(runs::tetration_margin(2).map_err(err)? == BigInt::ZERO, || "r_2 != 2↑↑1 + 3".into())?;
    Ok("r_1..r_4 match scans; r_1..r_5 verified; tetration bound n = 3..5".into())
}

fn first_run_in(p: &Word, n: u64) -> Option<u64> {
    let mut run = 0;
    for (k, b) in p.iter().enumerate() {
        run = if b == 1 { run + 1 } else { 0 };
        if run == n {
            return Some(k as u64 + 2 - n);
        }
    }
    None
}

fn check_factor_counts(_ctx: &Ctx) -> CheckResult {
    for n in 1..=20usize {
        let set = factors::enumerate_admissible(n).map_err(err)?;
        let fib = factors::fibonacci(n as u64 + 2);
        ensure(BigUint::from(set.len()) == fib && factors::complexity(n as u64) == fib, || {
            format!("|admissible({n})| = {} != F_{}", set.len(), n + 2)
        })?;
    }
    let c20 = factors::complexity(20);
    ensure(c20 == BigUint::from(17_711u32) && c20 > BigUint::from(4u32 * 400), || {
        "complexity(20) separation".into()
    })?;
    Ok("|admissible(n)| = F_(n+2) for n <= 20".into())
}

fn scan_set(p: &Word, n: usize) -> std::collections::BTreeSet<Word> {
    let mut out = std::collections::BTreeSet::new();
    for start in 1..=p.len() + 1 - n {
        out.insert(p.slice(start, start + n - 1).unwrap());
    }
    out
}

fn check_factor_scans(ctx: &Ctx) -> CheckResult {
    let p = ctx.prefix(6000)?;
    for n in 1..=8usize {
        let all = factors::enumerate_admissible(n).map_err(err)?;
        let seen = scan_set(&p, n);
        ensure(seen.iter().all(factors::is_factor), || format!("00 among scanned {n}-factors"))?;
        ensure(seen.is_subset(&all.members), || format!("scan({n}) not within admissible"))?;
        if n <= 4 {
            ensure(seen == all.members, || format!("scan(6000, {n}) != admissible({n})"))?;
        }
    }
    let long = ctx.pick(100_000, 1_000_000);
    let via_lib = factors::scan_factors(long, 5, &ctx.limits).map_err(err)?;
    ensure(via_lib.source == FactorSource::Scan { prefix_len: long }, || "source tag".into())?;
    let gap = factors::recurrence_gap(long, 5, &ctx.limits).map_err(err)?;
    ensure(gap.observed == 12 && gap.missing == vec![Word::ones(5)], || {
        format!("length-5 scan of {long} saw {} factors", gap.observed)
    })?;
    Ok(format!("scan(6000, n) = admissible for n <= 4; 11111 absent from b[1..{long}]"))
}

fn check_good_chain(ctx: &Ctx) -> CheckResult {
    let chain = structure::good_chain(3).map_err(err)?;
    for q in &chain {
        let q = q.to_u64().unwrap();
        ensure(structure::is_good(q, &ctx.limits).map_err(err)?, || format!("{q} not good"))?;
    }
    for i in [2, 4, 5] {
        ensure(!structure::is_good(i, &ctx.limits).map_err(err)?, || format!("{i} is good"))?;
    }
    ensure(structure::ends_with_block(137, 8, &ctx.limits).map_err(err)?, || {
        "B_137 does not end with B_8".into()
    })?;
    Ok("1, 3, 8, 137 good; 2, 4, 5 not; B_137 ends with B_8".into())
}

fn check_good_suffixes(ctx: &Ctx) -> CheckResult {
    let top = ctx.pick(20, ctx.limits.block_cap.min(30));
    let big = ctx.block(top)?;
    let mut good = Vec::new();
    for i in 1..top {
        let li = block_length(i).to_usize().unwrap();
        let ln = block_length(i + 1).to_usize().unwrap();
        let bi = big.slice(1, li).map_err(err)?;
        let next = big.slice(1, ln).map_err(err)?;
        if bi.slice(1, i as usize).map_err(err)? == bi.slice(li - i as usize + 1, li).map_err(err)? {
            good.push(i);
            ensure(next.ends_with(&bi), || format!("B_{} does not end with good B_{i}", i + 1))?;
        }
    }
    Ok(format!("good i < {top}: {good:?}; each B_(i+1) ends with B_i"))
}

fn check_witness(ctx: &Ctx) -> CheckResult {
    let top = ctx.pick(14, 18);
    let mut prev_v = 0usize;
    for n in 1..=top {
        let w = structure::witness(n, &ctx.limits).map_err(err)?;
        let expect_v = (1usize << (n - 1)) + 1;
        ensure(w.prefix_ok, || format!("u v v != B_{} at n = {n}", n + 1))?;
        ensure(w.u.len() == n as usize && w.v.len() == expect_v, || format!("|v_{n}| = {}", w.v.len()))?;
        ensure(w.v.len() > prev_v, || format!("|v_{n}| not increasing"))?;
        prev_v = w.v.len();
    }
    let ratio = |n: u64| Ratio::new(BigUint::from(n), (BigUint::one() << (n - 1) as usize) + 1u32);
    let max_n = (1..=30).max_by(|&a, &b| ratio(a).cmp(&ratio(b))).unwrap();
    ensure(max_n == 2 && ratio(2) == Ratio::new(2u32.into(), 3u32.into()), || {
        format!("ratio maximum at n = {max_n}")
    })?;
    ensure((2..30).all(|n| ratio(n + 1) < ratio(n)), || "ratio not decreasing".into())?;
    Ok(format!("witness(n) for n <= {top}; ratio max 2/3 at n = 2"))
}

fn check_recurrence_counts(_ctx: &Ctx) -> CheckResult {
    let b3: Word = BLOCK_TABLE[2].parse().unwrap();
    let lim = Limits::default();
    for len in 1..=b3.len() {
        for start in 1..=b3.len() + 1 - len {
            let w = b3.slice(start, start + len - 1).unwrap();
            let c = structure::count_occurrences(&w, 137, &lim).map_err(err)?;
            ensure(c >= 2, || format!("{w} occurs {c} times in b[1..137]"))?;
        }
    }
    Ok("every factor of B_3 occurs twice in b[1..137]".into())
}

fn check_block_ones(ctx: &Ctx) -> CheckResult {
    let top = 22;
    let table = CountTable::from_word(ctx.prefix(block_length(top).to_usize().unwrap())?);
    let rec = density::block_ones_sequence(top, &ctx.limits).map_err(err)?;
    for n in 1..=top {
        let direct = table.block_ones(n).unwrap();
        ensure(rec[n as usize - 1] == direct, || {
            format!("s({n}) = {} by recursion, {direct} by count", rec[n as usize - 1])
        })?;
    }
    Ok(format!("s(n) recursion = direct count for n <= {top}"))
}

fn check_count_identity(ctx: &Ctx) -> CheckResult {
    let top = ctx.pick(12, 15);
    let table = CountTable::from_word(ctx.prefix(block_length(top + 1).to_usize().unwrap())?);
    let s = density::block_ones_sequence(top, &ctx.limits).map_err(err)?;
    let mut checked = 0u64;
    for n in 1..=top {
        let ln = block_length(n).to_u64().unwrap();
        for t in 0..=(ln - n) as usize {
            ensure(table.identity_holds(n, t, s[n as usize - 1]), || {
                format!("count identity fails at n = {n}, t = {t}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (n, t) pairs for n <= {top}"))
}

fn check_alpha_enclosures(ctx: &Ctx) -> CheckResult {
    let mut prev = density::alpha_bounds(1, &ctx.limits).map_err(err)?;
    for k in 2..=200 {
        let cur = density::alpha_bounds(k, &ctx.limits).map_err(err)?;
        ensure(cur.is_within(&prev), || format!("alpha_bounds({k}) not nested"))?;
        prev = cur;
    }
    let a64 = density::alpha_bounds(64, &ctx.limits).map_err(err)?;
    let limit = BigRational::new(BigInt::one(), BigInt::one() << 63);
    ensure(a64.width() <= limit, || "alpha_bounds(64) too wide".into())?;
    let pinned = a64.pinned_decimal();
    ensure(pinned.starts_with(ALPHA_DIGITS), || format!("α pinned as {pinned}"))?;

    // |s(n)/ℓ_n - α| <= (n + 1)/ℓ_n
    let a60 = density::alpha_bounds(60, &ctx.limits).map_err(err)?;
    let top = ctx.pick(22, 25);
    let s = density::block_ones_sequence(top, &ctx.limits).map_err(err)?;
    for n in 15..=top {
        let ln = BigInt::from(block_length(n).to_u64().unwrap());
        let est = BigRational::new(BigInt::from(s[n as usize - 1]), ln.clone());
        let slack = BigRational::new(BigInt::from(n + 1), ln);
        let far = (&est - &a60.lower).abs().max((&est - &a60.upper).abs());
        ensure(far <= slack, || format!("s({n})/ℓ_{n} too far from α"))?;
    }
    Ok(format!("nested to k = 200; α = {pinned}"))
}

fn check_increments(ctx: &Ctx) -> CheckResult {
    let n = ctx.pick(20_000u64, 100_000);
    let table = CountTable::from_word(ctx.prefix(n as usize)?);
    for pos in 1..=n {
        let inc = table.ones(pos as usize) - table.ones(pos as usize - 1);
        ensure(inc == bit_at(&BigIndex::from(pos)) as u64, || {
            format!("a({pos}) - a({}) != b[{pos}]", pos - 1)
        })?;
    }
    Ok(format!("a(N) - a(N-1) = bit_at(N) for N <= {n}"))
}

fn check_error_term(ctx: &Ctx) -> CheckResult {
    let n_max = ctx.pick(100_000u64, 1_000_000);
    let alpha = density::alpha_bounds(64, &ctx.limits).map_err(err)?;
    let l20 = block_length(20).to_u64().unwrap();
    let table = CountTable::from_word(ctx.prefix(n_max.max(l20) as usize)?);
    for n in 1..=20u64 {
        let ln = block_length(n).to_u64().unwrap();
        let row = density::error_enclosure(ln, table.ones(ln as usize), &alpha);
        ensure(row.abs_upper() <= BigRational::from_integer(BigInt::from(2 * n)), || {
            format!("|E(ℓ_{n})| exceeds {}", 2 * n)
        })?;
    }
    // sublinearity evidence: the worst |E(N)|/N per decade shrinks
    let mut prev: Option<f64> = None;
    let mut lo = 10u64;
    while lo < n_max {
        let hi = (lo * 10).min(n_max);
        let worst = (lo..=hi)
            .map(|n| {
                let row = density::error_enclosure(n, table.ones(n as usize), &alpha);
                row.abs_upper().to_f64().unwrap() / n as f64
            })
            .fold(0.0, f64::max);
        if let Some(p) = prev {
            ensure(worst < p, || format!("max |E|/N on [{lo}, {hi}] = {worst} did not drop"))?;
        }
        prev = Some(worst);
        lo = hi;
    }
    Ok(format!("|E(ℓ_n)| <= 2n for n <= 20; decade maxima of |E(N)|/N decrease to {n_max}"))
}

fn check_bfile(ctx: &Ctx) -> CheckResult {
    let p = ctx.prefix(5000)?;
    for offset in [Offset::Full, Offset::Oeis] {
        let text = bfile::write(&p, offset);
        let back = bfile::parse(&text, offset).map_err(err)?;
        ensure(back == p, || format!("{offset:?} b-file round trip"))?;
    }
    let scan = factors::first_occurrence(&"111".parse().unwrap(), 100, &ctx.limits).map_err(err)?;
    ensure(scan == ScanResult::Found(13), || "first 111".into())?;
    Ok("b-file round trip under both offsets".into())
}

type Check = (&'static str, fn(&Ctx) -> CheckResult);

const CHECKS: &[Check] = &[
    ("blocks.table", check_block_table),
    ("blocks.copy_rule", check_copy_rule),
    ("blocks.lengths", check_lengths),
    ("blocks.stream", check_stream),
    ("blocks.self_similarity", check_self_similarity),
    ("access.bit_at", check_bit_at),
    ("access.reduction", check_reduction),
    ("access.windows", check_windows),
    ("access.astronomical_run", check_astronomical_run),
    ("runs.first_occurrences", check_runs),
    ("factors.complexity", check_factor_counts),
    ("factors.scans", check_factor_scans),
    ("structure.good_chain", check_good_chain),
    ("structure.good_suffixes", check_good_suffixes),
    ("structure.witness", check_witness),
    ("structure.recurrence", check_recurrence_counts),
    ("density.block_ones", check_block_ones),
    ("density.count_identity", check_count_identity),
    ("density.alpha", check_alpha_enclosures),
    ("density.increments", check_increments),
    ("density.error_term", check_error_term),
    ("bfile.roundtrip", check_bfile),
];

pub fn check_names() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|(name, _)| *name)
}

/// Runs the suite, reporting each outcome to `on_check` as it completes.
pub fn run_with(
    suite: Suite,
    limits: &Limits,
    seed: &Word,
    mut on_check: impl FnMut(&CheckOutcome),
) -> Report {
    let ctx = Ctx {
        suite,
        limits: *limits,
        seed: seed.clone(),
    };
    let mut outcomes = Vec::new();
    for (name, check) in CHECKS {
        let started = Instant::now();
        let result = check(&ctx);
        let outcome = CheckOutcome {
            name,
            passed: result.is_ok(),
            detail: result.unwrap_or_else(|e| e),
            elapsed: started.elapsed(),
        };
        on_check(&outcome);
        let stop = !outcome.passed && suite == Suite::Fast;
        outcomes.push(outcome);
        if stop {
            break;
        }
    }
    Report { suite, outcomes }
}

pub fn run(suite: Suite, limits: &Limits) -> Report {
    run_with(suite, limits, &blocks::base_block(), |_| {})
}
