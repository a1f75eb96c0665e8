//! Acceptance criteria. Runs every criterion, prints one `PASS`/`FAIL`
//! line each, and exits non-zero if any failed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use brik_core::access::{bit_at, window};
use brik_core::blocks::{block_length, build_block, prefix};
use brik_core::density::{self, alpha_bounds, block_ones, count_identity_check, parse_decimal};
use brik_core::factors::{complexity, enumerate_admissible, fibonacci, scan_factors};
use brik_core::runs::{check_tetration_bound, run_start, scan_first_run, ScanResult};
use brik_core::structure::{ends_with_block, is_good, witness};
use brik_core::{BigIndex, Limits, Word};
use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

/// Copy rule on plain byte vectors, independent of the packed builder.
fn naive_prefix(n: usize) -> Vec<u8> {
    let mut b = vec![1u8, 0, 1];
    let mut i = 1usize;
    let mut li = 3usize;
    while b.len() < n {
        let p = b.len() + 1;
        if p > 2 * li - i {
            li = 2 * li - i;
            i += 1;
        }
        b.push(b[p - li + i - 1]);
    }
    b.truncate(n);
    b
}

fn bits(s: &str) -> Word {
    s.parse().unwrap()
}

fn criterion_1(lim: &Limits) -> Outcome {
    let table = [
        "101",
        "10101",
        "10101101",
        "1010110101101",
        "1010110101101110101101",
    ];
    for (k, expect) in table.iter().enumerate() {
        let got = build_block(k as u64 + 1, lim).map_err(e)?;
        ensure(got.to_string() == *expect, || format!("B_{} = {got}", k + 1))?;
    }
    let expansion = "101011010110111010110110101101110101101010110111010110110101101110101101";
    let p = prefix(72, lim).map_err(e)?;
    ensure(p.to_string() == expansion, || format!("prefix(72) = {p}"))?;
    Ok("B_1..B_5 and prefix(72) exact".into())
}

fn criterion_2(lim: &Limits) -> Outcome {
    let n = 100_000usize;
    let p = prefix(n, lim).map_err(e)?;
    let oracle = naive_prefix(n);
    ensure(p.iter().eq(oracle.iter().copied()), || "prefix disagrees with copy-rule oracle".into())?;
    for pos in 1..=n {
        let b = bit_at(&BigIndex::from(pos as u64));
        ensure(p.get(pos) == Some(b), || format!("bit_at({pos}) = {b}"))?;
    }
    Ok(format!("bit_at(N) = prefix[N] for N <= {n}"))
}

fn criterion_3(lim: &Limits) -> Outcome {
    let r5 = run_start(5).map_err(e)?.start;
    let expect = BigIndex::new((BigUint::one() << 2059u32) + 2061u32).unwrap();
    ensure(r5 == expect, || format!("run_start(5) = {}", r5.to_expr()))?;
    let w = window(&r5.checked_sub(1).unwrap(), 7, lim).map_err(e)?;
    ensure(w == bits("0111110"), || format!("window = {w}"))?;
    Ok("r_5 = 2^2059+2061, window(r_5 - 1, 7) = 0111110".into())
}

fn criterion_4(lim: &Limits) -> Outcome {
    for n in 1..=4u64 {
        let r = run_start(n).map_err(e)?.start.to_u64().unwrap();
        let scan = scan_first_run(n, 10_000, lim).map_err(e)?;
        ensure(scan == ScanResult::Found(r), || format!("n = {n}: scan {scan:?}, recursion {r}"))?;
    }
    ensure(run_start(4).map_err(e)?.start.to_u64() == Some(2061), || "r_4 != 2061".into())?;
    for n in 3..=5u64 {
        ensure(check_tetration_bound(n).map_err(e)?, || format!("tetration bound fails at n = {n}"))?;
    }
    Ok("scan = recursion for n <= 4, r_4 = 2061, tetration bound n = 3..5".into())
}

fn criterion_5(lim: &Limits) -> Outcome {
    for n in 1..=4usize {
        let seen = scan_factors(6000, n, lim).map_err(e)?;
        let all = enumerate_admissible(n).map_err(e)?;
        ensure(seen.members == all.members, || format!("factor set differs at n = {n}"))?;
        ensure(BigUint::from(seen.len()) == fibonacci(n as u64 + 2), || format!("count at n = {n}"))?;
    }
    let seen = scan_factors(1_000_000, 5, lim).map_err(e)?;
    let all = enumerate_admissible(5).map_err(e)?;
    ensure(seen.len() == 12, || format!("|scan(10^6, 5)| = {}", seen.len()))?;
    ensure(complexity(5) == BigUint::from(13u32), || "complexity(5) != 13".into())?;
    let missing: Vec<String> = all.members.difference(&seen.members).map(|w| w.to_string()).collect();
    ensure(missing == ["11111"], || format!("missing = {missing:?}"))?;
    ensure(seen.members.is_subset(&all.members), || "scan found a non-admissible word".into())?;
    Ok("scan = F_(n+2) for n <= 4; 12 of 13 at n = 5, missing 11111".into())
}

fn criterion_6(lim: &Limits) -> Outcome {
    let a = alpha_bounds(64, lim).map_err(e)?;
    let limit = BigRational::new(BigInt::one(), BigInt::one() << 63u32);
    ensure(a.width() <= limit, || "width exceeds 2^-63".into())?;
    let pinned = a.pinned_decimal();
    ensure(pinned.starts_with("0.64505878493452"), || format!("pinned = {pinned}"))?;
    let lo = parse_decimal("0.64505878493452").map_err(e)?;
    let hi = parse_decimal("0.64505878493453").map_err(e)?;
    ensure(lo <= a.lower && a.upper < hi, || "interval leaves the 14-digit cell".into())?;
    let coarse = alpha_bounds(32, lim).map_err(e)?;
    ensure(a.is_within(&coarse), || "64-bit interval not inside 32-bit interval".into())?;
    Ok(format!("α in {pinned}, width <= 2^-63"))
}

fn criterion_7(lim: &Limits) -> Outcome {
    for n in 1..=22u64 {
        let direct = build_block(n, lim).map_err(e)?.count_ones();
        let rec = block_ones(n, lim).map_err(e)?;
        ensure(direct == rec, || format!("s({n}): recursion {rec}, direct {direct}"))?;
    }
    let mut pairs = 0u64;
    for n in 1..=15u64 {
        let ln = block_length(n).to_u64().unwrap();
        for t in 0..=ln - n {
            ensure(count_identity_check(n, t, lim).map_err(e)?, || format!("identity fails at n = {n}, t = {t}"))?;
            pairs += 1;
        }
    }
    Ok(format!("s(n) for n <= 22; identity at {pairs} (n, t) pairs"))
}

fn criterion_8(lim: &Limits) -> Outcome {
    for i in [1u64, 3, 8, 137] {
        ensure(is_good(i, lim).map_err(e)?, || format!("{i} not good"))?;
    }
    for i in [2u64, 4, 5] {
        ensure(!is_good(i, lim).map_err(e)?, || format!("{i} reported good"))?;
    }
    ensure(ends_with_block(137, 8, lim).map_err(e)?, || "B_137 does not end with B_8".into())?;
    Ok("good {1, 3, 8, 137}, not {2, 4, 5}; B_137 ends with B_8".into())
}

fn criterion_9(lim: &Limits) -> Outcome {
    let mut best = Ratio::new(BigUint::from(0u32), BigUint::one());
    let mut argbest = 0;
    let mut prev_v = 0usize;
    for n in 1..=18u64 {
        let w = witness(n, lim).map_err(e)?;
        ensure(w.prefix_ok, || format!("u v v != B_{} at n = {n}", n + 1))?;
        ensure(w.v.len() == (1usize << (n - 1)) + 1, || format!("|v_{n}| = {}", w.v.len()))?;
        ensure(w.v.len() > prev_v, || format!("|v_n| not increasing at n = {n}"))?;
        prev_v = w.v.len();
        let direct = Ratio::new(BigUint::from(w.u.len()), BigUint::from(w.v.len()));
        ensure(direct == w.ratio, || format!("ratio at n = {n}"))?;
        if w.ratio > best {
            best = w.ratio.clone();
            argbest = n;
        }
    }
    let two_thirds = Ratio::new(BigUint::from(2u32), BigUint::from(3u32));
    ensure(best == two_thirds && argbest == 2, || format!("max ratio {best} at n = {argbest}"))?;
    Ok("u v v = B_(n+1) for n <= 18, max |u|/|v| = 2/3 at n = 2".into())
}

fn criterion_10(lim: &Limits) -> Outcome {
    let n_max = 1_000_000u64;
    let profile = density::error_profile(n_max, 64, lim).map_err(e)?;
    let ones = prefix(block_length(20).to_usize().unwrap().max(n_max as usize), lim).map_err(e)?;
    for n in 1..=20u64 {
        let ln = block_length(n).to_u64().unwrap();
        let row = density::error_enclosure(ln, ones.count_ones_prefix(ln as usize), &profile.alpha);
        ensure(row.abs_upper() <= BigRational::from_integer(BigInt::from(2 * n)), || {
            format!("|E(ℓ_{n})| <= {:.4} exceeds {}", row.abs_upper().to_f64().unwrap(), 2 * n)
        })?;
    }
    let bound = BigRational::new(BigInt::from(2), BigInt::from(100));
    let max = profile.max_relative.to_f64().unwrap();
    ensure(profile.max_relative < bound, || {
        let tail = tail_summary(&profile, &ones);
        format!(
            "max |E(N)|/N over N <= {n_max} is {max:.4} at N = {}, not below 0.02 \
             (|E(ℓ_n)| <= 2n holds for n <= 20; {tail})",
            profile.argmax
        )
    })?;
    Ok(format!("max |E(N)|/N = {max:.5}; |E(ℓ_n)| <= 2n for n <= 20"))
}

/// Least `N0` past which the enclosed `|E(N)|/N` stays below 0.02.
fn tail_summary(profile: &density::ErrorProfile, word: &Word) -> String {
    let alpha = &profile.alpha;
    let limit = BigRational::new(BigInt::from(2), BigInt::from(100));
    let mut n0 = 1u64;
    let mut a = 0u64;
    let scan = word.len().min(profile.n_max as usize);
    for n in 1..=scan as u64 {
        a += u64::from(word.get(n as usize).unwrap());
        let row = density::error_enclosure(n, a, alpha);
        if row.abs_upper() / BigInt::from(n) >= limit {
            n0 = n + 1;
        }
    }
    format!("bound holds for {n0} <= N <= {scan}")
}

type Criterion = (&'static str, Duration, fn(&Limits) -> Outcome);

const CRITERIA: &[Criterion] = &[
    ("1 block reproduction", Duration::from_millis(1), criterion_1),
    ("2 random-access oracle", Duration::from_secs(5), criterion_2),
    ("3 astronomical run", Duration::from_secs(1), criterion_3),
    ("4 run recursion vs scan", Duration::from_secs(1), criterion_4),
    ("5 factor complexity", Duration::from_secs(10), criterion_5),
    ("6 density digits", Duration::from_secs(1), criterion_6),
    ("7 count identities", Duration::from_secs(60), criterion_7),
    ("8 structure at scale", Duration::from_secs(1), criterion_8),
    ("9 witness suite", Duration::from_secs(5), criterion_9),
    ("10 error-term evidence", Duration::from_secs(60), criterion_10),
];

fn main() -> ExitCode {
    let lim = Limits::default();
    let mut failed = 0;
    for (name, budget, run) in CRITERIA {
        let start = Instant::now();
        let outcome = run(&lim);
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= *budget {
                Ok(detail)
            } else {
                Err(format!("{detail}; took {elapsed:?}, budget {budget:?}"))
            }
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {name} ({elapsed:.3?}): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name} ({elapsed:.3?}): {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", CRITERIA.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
