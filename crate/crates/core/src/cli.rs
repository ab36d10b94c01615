//! The `overpart` command-line tool.
//!
//! Exit codes: 0 success, 1 mismatch or non-membership, 2 usage or parse
//! error, 3 I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use crate::bijection::{merge_one_level, split_one_level, BijectionError, CheckedMode};
use crate::color::Level;
use crate::enumerate::{count_table_parallel, enumerate_family_parallel, first_mismatch, Mismatch};
use crate::io::{self, FormatError, PairJson, PartitionJson};
use crate::predicates::{check_membership, Family};
use crate::qseries::{family_nvars, rhs_family};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "overpart", version, about = "Colored overpartition identities: bijection, enumeration and products")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare the enumerated counts of a family with its product, up to a weight.
    Verify(VerifyArgs),
    /// Merge a level-(k-1) member with a distinct partition in color 2^(k-1).
    Map(BijectionArgs),
    /// Split a level-k member back into its level-(k-1) member and distinct partition.
    Unmap(BijectionArgs),
    /// List the members of a given weight (JSON) or their count rows (CSV).
    Enumerate(EnumerateArgs),
    /// Write a full coefficient table, from enumeration or from the product.
    Table(TableArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// sbar, sbar-j, tbar, b, d1, d2, dbar or schur.
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value_t = 1)]
    pub k: i64,
    /// Index for sbar-j.
    #[arg(long)]
    pub j: Option<u8>,
}

#[derive(Debug, Clone, Args)]
pub struct Jobs {
    /// Worker threads; output does not depend on it.
    #[arg(long, env = "OVERPARTITIONS_JOBS", default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub max_n: u32,
    /// Also run every sbar member through split and merge with lemma checks.
    #[arg(long)]
    pub checked: bool,
    #[command(flatten)]
    pub jobs: Jobs,
}

#[derive(Debug, Args)]
pub struct BijectionArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub checked: bool,
    /// Emit every intermediate snapshot.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub jobs: Jobs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Enumeration,
    Product,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub max_n: u32,
    #[arg(long, value_enum, default_value_t = Source::Enumeration)]
    pub source: Source,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub jobs: Jobs,
}

/// Outcome of a subcommand: text for stdout, text for stderr, exit code.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: Vec<u8>,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: impl Into<Vec<u8>>) -> Self {
        Outcome { stdout: stdout.into(), stderr: String::new(), code: EXIT_OK }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        stderr.push('\n');
        Outcome { stdout: Vec::new(), stderr, code }
    }
}

fn family_of(args: &FamilyArgs) -> Result<Family, Outcome> {
    let level = Level::new(args.k).map_err(|e| Outcome::fail(EXIT_USAGE, e.to_string()))?;
    Family::from_tag(&args.family, level, args.j).map_err(|e| Outcome::fail(EXIT_USAGE, e.to_string()))
}

fn read_input(path: &Path) -> Result<String, Outcome> {
    fs::read_to_string(path).map_err(|e| Outcome::fail(EXIT_IO, format!("cannot read {}: {e}", path.display())))
}

fn parse_failure(e: FormatError) -> Outcome {
    Outcome::fail(EXIT_USAGE, format!("parse error: {e}"))
}

fn bijection_failure(e: BijectionError) -> Outcome {
    match e {
        BijectionError::Precondition { .. } | BijectionError::Lemma { .. } => Outcome::fail(EXIT_MISMATCH, e.to_string()),
        other => Outcome::fail(EXIT_USAGE, other.to_string()),
    }
}

fn describe(m: &Mismatch) -> String {
    format!(
        "mismatch at n={}, m={}, x={:?}: enumeration {} vs product {}",
        m.key.n, m.key.m, m.key.x, m.count, m.coefficient
    )
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let family = match family_of(&args.family) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let table = count_table_parallel(&family, args.max_n, args.jobs.jobs);
    let series = rhs_family(&family, args.max_n);
    if let Some(m) = first_mismatch(&table, &series) {
        return Outcome { stdout: format!("{family}: {}\n", describe(&m)).into_bytes(), stderr: String::new(), code: EXIT_MISMATCH };
    }
    let mut report = format!("{family}: verified up to n={}\n", args.max_n);
    if args.checked && family == Family::sbar(family.level()) && family.level().get() >= 2 {
        let k = family.level();
        let mut roundtrips = 0u64;
        for n in 0..=args.max_n {
            for member in enumerate_family_parallel(&family, n, args.jobs.jobs) {
                let back = split_one_level(&member, k, CheckedMode::ON)
                    .and_then(|(l, m, _)| merge_one_level(&l, &m, k, CheckedMode::ON));
                match back {
                    Ok((again, _)) if again == member => roundtrips += 1,
                    Ok((again, _)) => {
                        return Outcome::fail(EXIT_MISMATCH, format!("split then merge sent {member} to {again}"))
                    }
                    Err(e) => return Outcome::fail(EXIT_MISMATCH, format!("{member}: {e}")),
                }
            }
        }
        report.push_str(&format!("{family}: {roundtrips} members split and merged back under lemma checks\n"));
    }
    Outcome::ok(report)
}

fn emit(result: serde_json::Value, trace: Option<&crate::bijection::StepTrace>) -> Vec<u8> {
    let value = match trace {
        Some(t) => io::with_trace(result, t),
        None => result,
    };
    io::to_pretty(&value).into_bytes()
}

fn cmd_map(args: &BijectionArgs) -> Outcome {
    let text = match read_input(&args.input) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let pair = match io::parse_pair(&text) {
        Ok(p) => p,
        Err(e) => return parse_failure(e),
    };
    let (lambda, mu) = match pair.decode() {
        Ok(v) => v,
        Err(e) => return parse_failure(e),
    };
    let below = pair.lambda.k;
    let report = check_membership(&lambda, &Family::sbar(below));
    if !report.member {
        return Outcome::fail(EXIT_MISMATCH, format!("lambda is not a level-{below} member: {report}"));
    }
    match merge_one_level(&lambda, &mu, pair.k, CheckedMode { enabled: args.checked }) {
        Ok((out, trace)) => {
            let result = serde_json::to_value(PartitionJson::from_overpartition(pair.k, &out)).expect("serializable");
            write_output(args.output.as_deref(), emit(result, args.trace.then_some(&trace)))
        }
        Err(e) => bijection_failure(e),
    }
}

fn cmd_unmap(args: &BijectionArgs) -> Outcome {
    let text = match read_input(&args.input) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let input = match io::parse_partition(&text).and_then(|p| Ok((p.k, p.to_overpartition()?))) {
        Ok(v) => v,
        Err(e) => return parse_failure(e),
    };
    let (k, op) = input;
    let report = check_membership(&op, &Family::sbar(k));
    if !report.member {
        return Outcome::fail(EXIT_MISMATCH, format!("not a level-{k} member: {report}"));
    }
    if k.get() < 2 {
        return Outcome::fail(EXIT_USAGE, "unmap needs k >= 2");
    }
    match split_one_level(&op, k, CheckedMode { enabled: args.checked }) {
        Ok((lambda, mu, trace)) => {
            let result = serde_json::to_value(PairJson::new(k, &lambda, &mu)).expect("serializable");
            write_output(args.output.as_deref(), emit(result, args.trace.then_some(&trace)))
        }
        Err(e) => bijection_failure(e),
    }
}

fn cmd_enumerate(args: &EnumerateArgs) -> Outcome {
    let family = match family_of(&args.family) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let members = enumerate_family_parallel(&family, args.n, args.jobs.jobs);
    let bytes = match args.format {
        Format::Json => {
            let level = family.level();
            let list: Vec<PartitionJson> = members.iter().map(|m| PartitionJson::from_overpartition(level, m)).collect();
            io::to_pretty(&list).into_bytes()
        }
        Format::Csv => {
            let mut counts = std::collections::BTreeMap::new();
            for m in &members {
                *counts.entry(crate::enumerate::project_key(&family, m)).or_insert(0u64) += 1;
            }
            let mut buf = Vec::new();
            if let Err(e) = io::write_table_csv(&mut buf, family_nvars(&family), counts.iter().map(|(k, &c)| (k, BigInt::from(c)))) {
                return Outcome::fail(EXIT_IO, e.to_string());
            }
            buf
        }
    };
    write_output(args.output.as_deref(), bytes)
}

fn cmd_table(args: &TableArgs) -> Outcome {
    let family = match family_of(&args.family) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let series = match args.source {
        Source::Enumeration => count_table_parallel(&family, args.max_n, args.jobs.jobs).to_series(),
        Source::Product => rhs_family(&family, args.max_n),
    };
    let rows = series.coeffs().iter().map(|(k, c)| (k, c.clone()));
    let bytes = match args.format {
        Format::Json => {
            let source = match args.source {
                Source::Enumeration => "enumeration",
                Source::Product => "product",
            };
            let meta = json!({
                "family": family.tag(),
                "k": family.level().get(),
                "j": args.family.j,
                "max_n": args.max_n,
                "source": source,
            });
            io::to_pretty(&io::table_json(meta, rows)).into_bytes()
        }
        Format::Csv => {
            let mut buf = Vec::new();
            if let Err(e) = io::write_table_csv(&mut buf, series.nvars(), rows) {
                return Outcome::fail(EXIT_IO, e.to_string());
            }
            buf
        }
    };
    write_output(args.output.as_deref(), bytes)
}

fn write_output(path: Option<&Path>, bytes: Vec<u8>) -> Outcome {
    match path {
        None => Outcome::ok(bytes),
        Some(p) => match fs::write(p, &bytes) {
            Ok(()) => Outcome::ok(Vec::new()),
            Err(e) => Outcome::fail(EXIT_IO, format!("cannot write {}: {e}", p.display())),
        },
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Map(a) => cmd_map(a),
        Command::Unmap(a) => cmd_unmap(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Table(a) => cmd_table(a),
    }
}

/// Parses `args`, runs the command, writes its output and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = execute(&cli);
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(&outcome.stdout).and_then(|_| stdout.flush()).is_err() {
        return EXIT_IO;
    }
    if !outcome.stderr.is_empty() {
        eprint!("{}", outcome.stderr);
    }
    outcome.code
}
