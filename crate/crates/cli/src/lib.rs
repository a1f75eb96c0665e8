//! Command implementations for the `brik` binary.

use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use brik_core::access::{bit_at_with_steps, window};
use brik_core::bfile::{self, Offset};
use brik_core::blocks::{block_length, build_block, prefix};
use brik_core::density::{self, DensityInterval};
use brik_core::factors;
use brik_core::runs::{self, ScanResult};
use brik_core::structure;
use brik_core::verify::{self, Suite};
use brik_core::{BigIndex, BrikError, Limits, Word};

pub mod output;

use output::OutputRecord;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "brik", version, about = "Explore Brik's self-similar binary sequence")]
pub struct Cli {
    #[command(flatten)]
    pub caps: Caps,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Caps {
    /// Largest block index that may be materialized.
    #[arg(long, global = true, default_value_t = Limits::DEFAULT_BLOCK_CAP)]
    pub cap_block: u64,

    /// Longest window fetched by random access, in bits.
    #[arg(long, global = true, default_value_t = Limits::DEFAULT_WINDOW_CAP)]
    pub cap_window: usize,

    /// Longest prefix held in memory, in bits.
    #[arg(long, global = true, default_value_t = Limits::DEFAULT_MEMORY_CAP)]
    pub cap_memory: usize,
}

impl Caps {
    pub fn limits(&self) -> Limits {
        Limits {
            block_cap: self.cap_block,
            window_cap: self.cap_window,
            memory_cap: self.cap_memory,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenerateFormat {
    Bits,
    Bfile,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OffsetArg {
    /// Index from b_1.
    Full,
    /// Drop the leading 1, as in the OEIS entry.
    Oeis,
}

impl From<OffsetArg> for Offset {
    fn from(o: OffsetArg) -> Self {
        match o {
            OffsetArg::Full => Offset::Full,
            OffsetArg::Oeis => Offset::Oeis,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Fast,
    Full,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the prefix b[1..length].
    Generate {
        #[arg(long)]
        length: usize,
        #[arg(long, value_enum, default_value_t = GenerateFormat::Bits)]
        format: GenerateFormat,
        #[arg(long, value_enum, default_value_t = OffsetArg::Full)]
        offset: OffsetArg,
    },
    /// Print b[N] for a position given in decimal or as a sum like 2^2059+2061.
    Bit {
        #[arg(long)]
        position: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print b[N .. N+length-1].
    Window {
        #[arg(long)]
        position: String,
        #[arg(long)]
        length: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Rigorous enclosure of the density of 1s.
    Density {
        #[arg(long, default_value_t = density::DEFAULT_BITS)]
        bits: u64,
        /// Also report a(N)/N for this N.
        #[arg(long)]
        empirical: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the invariant suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Fast)]
        suite: SuiteArg,
        /// Seed block for the sequence under test (negative controls).
        #[arg(long, hide = true, default_value = "101")]
        seed: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Block B_i and its length.
    Block {
        #[arg(long)]
        index: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// First occurrence r_n of the run 1^n.
    Runs {
        #[arg(long)]
        n: u64,
        /// Cross-check by scanning this many bits of the prefix.
        #[arg(long)]
        scan_limit: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Factors of length n: count, members, and optional prefix scan.
    Factors {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        scan_limit: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Good indices (B_i has a border of length i) up to max.
    Good {
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decomposition B_n = u v, B_(n+1) = u v v.
    Witness {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Good chain q_0 = 1, q_(k+1) = ℓ_(q_k).
    Chain {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug)]
pub enum CliError {
    Brik(BrikError),
    Io(io::Error),
}

impl From<BrikError> for CliError {
    fn from(e: BrikError) -> Self {
        CliError::Brik(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Brik(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Brik(BrikError::CapExceeded { .. } | BrikError::Representation(_)) => {
                EXIT_RESOURCE
            }
            CliError::Brik(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_CHECK_FAILED,
        }
    }
}

type CliResult = Result<u8, CliError>;

fn rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn emit(out: &mut dyn Write, format: Format, record: OutputRecord, text: String) -> CliResult {
    match format {
        Format::Json => out.write_all(record.to_json().as_bytes())?,
        Format::Text => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn scan_json(r: ScanResult) -> Value {
    match r {
        ScanResult::Found(p) => json!({ "found": p.to_string() }),
        ScanResult::NotFound { cutoff } => json!({ "not_found": { "cutoff": cutoff } }),
    }
}

fn scan_text(r: ScanResult) -> String {
    match r {
        ScanResult::Found(p) => p.to_string(),
        ScanResult::NotFound { cutoff } => format!("not found up to {cutoff}"),
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult {
    let limits = cli.caps.limits();
    match &cli.command {
        Command::Generate { length, format, offset } => {
            let p = prefix(*length, &limits)?;
            let offset = Offset::from(*offset);
            match format {
                GenerateFormat::Bits => writeln!(out, "{p}")?,
                GenerateFormat::Bfile => out.write_all(bfile::write(&p, offset).as_bytes())?,
                GenerateFormat::Json => {
                    let rec = OutputRecord::new("generate", json!({ "bits": p.to_string() }))
                        .param("length", *length);
                    out.write_all(rec.to_json().as_bytes())?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Bit { position, format } => {
            let pos: BigIndex = position.parse()?;
            let (bit, steps) = bit_at_with_steps(&pos);
            let rec = OutputRecord::new("bit", json!({ "bit": bit, "steps": steps }))
                .param("position", pos.to_string());
            emit(out, *format, rec, format!("{bit}\nsteps: {steps}\n"))
        }
        Command::Window { position, length, format } => {
            let pos: BigIndex = position.parse()?;
            let w = window(&pos, *length, &limits)?;
            let rec = OutputRecord::new("window", json!({ "bits": w.to_string() }))
                .param("position", pos.to_string())
                .param("length", *length);
            emit(out, *format, rec, format!("{w}\n"))
        }
        Command::Density { bits, empirical, format } => {
            let alpha = density::alpha_bounds(*bits, &limits)?;
            density_report(out, &alpha, *empirical, *format, &limits)
        }
        Command::Verify { suite, seed, format } => {
            let seed: Word = seed.parse()?;
            let suite = match suite {
                SuiteArg::Fast => Suite::Fast,
                SuiteArg::Full => Suite::Full,
            };
            let text = *format == Format::Text;
            let mut io_err = None;
            let report = verify::run_with(suite, &limits, &seed, |o| {
                if text {
                    if let Err(e) = writeln!(out, "{o}").and_then(|_| out.flush()) {
                        io_err.get_or_insert(e);
                    }
                }
            });
            if let Some(e) = io_err {
                return Err(e.into());
            }
            let passed = report.passed();
            if text {
                let failed = report.failures().count();
                writeln!(
                    out,
                    "{}: {} checks, {failed} failed",
                    if passed { "ok" } else { "FAILED" },
                    report.outcomes.len()
                )?;
            } else {
                let checks: Vec<Value> = report
                    .outcomes
                    .iter()
                    .map(|o| json!({ "name": o.name, "passed": o.passed, "detail": o.detail }))
                    .collect();
                let rec = OutputRecord::new("verify", json!({ "passed": passed, "checks": checks }))
                    .param("suite", format!("{suite:?}").to_lowercase());
                out.write_all(rec.to_json().as_bytes())?;
            }
            Ok(if passed { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Block { index, format } => {
            let b = build_block(*index, &limits)?;
            let len = block_length(*index);
            let rec = OutputRecord::new(
                "block",
                json!({ "bits": b.to_string(), "length": len.to_string() }),
            )
            .param("index", *index);
            emit(out, *format, rec, format!("{b}\nlength: {len}\n"))
        }
        Command::Runs { n, scan_limit, format } => {
            let r = runs::run_start(*n)?;
            let verified = runs::verify_run(*n, &limits)?;
            let bound = if *n >= 2 { Some(runs::tetration_margin(*n)?) } else { None };
            let scan = scan_limit.map(|l| runs::scan_first_run(*n, l, &limits)).transpose()?;
            let mut result = json!({
                "n": n,
                "start": r.start.to_expr(),
                "exact": r.exact,
                "verified": verified,
            });
            let mut text = format!("r_{n} = {}\nverified: {verified}\n", r.start.to_expr());
            if let Some(margin) = &bound {
                let holds = !margin.is_negative();
                let equality = margin.is_zero();
                result["tetration_bound"] = json!({ "holds": holds, "equality": equality });
                text += &format!(
                    "r_{n} >= 2↑↑{} + 3: {holds}{}\n",
                    n - 1,
                    if equality { " (equality)" } else { "" }
                );
            }
            if let Some(s) = scan {
                result["scan"] = scan_json(s);
                text += &format!("scan: {}\n", scan_text(s));
            }
            let mut rec = OutputRecord::new("runs", result).param("n", *n);
            if let Some(l) = scan_limit {
                rec = rec.param("scan_limit", *l);
            }
            emit(out, *format, rec, text)?;
            Ok(if verified { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Factors { length, scan_limit, format } => {
            let n = *length;
            let count = factors::complexity(n as u64);
            let listed = (n <= factors::MAX_ENUMERATION_LENGTH)
                .then(|| factors::enumerate_admissible(n))
                .transpose()?;
            let mut result = json!({ "length": n, "complexity": count.to_string() });
            let mut text = format!("p({n}) = F_{} = {count}\n", n + 2);
            if let Some(set) = &listed {
                if n <= 12 {
                    let members: Vec<String> = set.members.iter().map(Word::to_string).collect();
                    text += &format!("factors: {}\n", members.join(" "));
                    result["members"] = json!(members);
                }
            }
            let mut rec = OutputRecord::new("factors", Value::Null).param("length", n);
            if let Some(l) = scan_limit {
                let gap = factors::recurrence_gap(*l, n, &limits)?;
                let missing: Vec<String> = gap.missing.iter().map(Word::to_string).collect();
                text += &format!("seen in b[1..{l}]: {} of {}\n", gap.observed, gap.admissible);
                if !missing.is_empty() {
                    text += &format!(
                        "non-uniform recurrence witness: missing {}\n",
                        missing.join(" ")
                    );
                }
                result["scan"] = json!({
                    "prefix_length": l,
                    "observed": gap.observed,
                    "missing": missing,
                });
                rec = rec.param("scan_limit", *l);
            }
            rec.result = result;
            emit(out, *format, rec, text)
        }
        Command::Good { max, format } => {
            let good = structure::good_indices(*max, &limits)?;
            let rec = OutputRecord::new("good", json!({ "good": good })).param("max", *max);
            let list: Vec<String> = good.iter().map(u64::to_string).collect();
            emit(out, *format, rec, format!("{}\n", list.join(" ")))
        }
        Command::Witness { n, format } => {
            let w = structure::witness(*n, &limits)?;
            let ratio = format!("{}/{}", w.ratio.numer(), w.ratio.denom());
            let rec = OutputRecord::new(
                "witness",
                json!({
                    "u": w.u.to_string(),
                    "v": w.v.to_string(),
                    "u_len": w.u.len(),
                    "v_len": w.v.len(),
                    "ratio": ratio,
                    "prefix_ok": w.prefix_ok,
                }),
            )
            .param("n", *n);
            let shown = |x: &Word| {
                if x.len() <= 80 {
                    x.to_string()
                } else {
                    format!("<{} symbols>", x.len())
                }
            };
            let text = format!(
                "u = {}\nv = {}\n|u|/|v| = {ratio}\nu v v = B_{}: {}\n",
                shown(&w.u),
                shown(&w.v),
                n + 1,
                w.prefix_ok
            );
            emit(out, *format, rec, text)?;
            Ok(if w.prefix_ok { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Chain { k, format } => {
            let chain = structure::good_chain(*k)?;
            let shown: Vec<String> = chain.iter().map(BigIndex::to_expr).collect();
            let rec = OutputRecord::new("chain", json!({ "chain": shown })).param("k", *k);
            emit(out, *format, rec, format!("{}\n", shown.join(" ")))
        }
    }
}

fn density_report(
    out: &mut dyn Write,
    alpha: &DensityInterval,
    empirical: Option<usize>,
    format: Format,
    limits: &Limits,
) -> CliResult {
    let pinned = alpha.pinned_decimal();
    let mut result = json!({
        "bits": alpha.bits,
        "alpha_lower": rational(&alpha.lower),
        "alpha_upper": rational(&alpha.upper),
        "pinned_decimal": pinned,
    });
    let mut text = format!(
        "alpha = {pinned}\nenclosure: ({}, {}]\nbits: {}, width: 2^-{}\n",
        rational(&alpha.lower),
        rational(&alpha.upper),
        alpha.bits,
        alpha.bits - 1
    );
    let mut rec = OutputRecord::new("density", Value::Null).param("bits", alpha.bits);
    if let Some(n) = empirical {
        let ones = density::ones_prefix_count(n, limits)?;
        let ratio = ones as f64 / n as f64;
        let mid = alpha.midpoint().to_f64().unwrap_or(f64::NAN);
        text += &format!(
            "a({n}) = {ones}, a(N)/N = {ratio:.9}, distance to midpoint = {:.3e}\n",
            (ratio - mid).abs()
        );
        result["empirical"] = json!({ "n": n, "ones": ones, "ratio": format!("{ratio:.12}") });
        rec = rec.param("empirical", n);
    }
    rec.result = result;
    emit(out, format, rec, text)
}
