//! Command-line driver: argument parsing, suite orchestration and report rendering.
//!
//! [`run`] does all the work and returns the rendered report together with the
//! exit code, so the binary is a thin wrapper and tests can drive commands
//! in-process.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::Integer;
use crate::bell::{self, BellArgumentVector};
use crate::conjecture::{self, ClaimResult, ClaimStatus, SweepRange};
use crate::engines::first::{self, BinomialConvention, CompactComparison};
use crate::engines::oracle::{PARTITION_BOUND, PERMUTATION_BOUND};
use crate::engines::{second, Kind, StirlingTable};
use crate::inequality::{self, HankelSpec};
use crate::report::{fields, timed, Check, Fields, VerificationReport};
use crate::{Error, Result};

/// Seed used by `inequalities` when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 2718;
/// Environment variable consulted for the cache directory when `--cache-dir` is absent.
pub const CACHE_ENV: &str = "STIRLING_CACHE_DIR";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

// Bounds of the exhaustive Bell and product-inequality suites.
const BELL_SUITE_MAX_N: usize = 20;
const FAA_DI_BRUNO_MAX_M: usize = 15;
const HK_MAX_ORDER: usize = 20;
const COMPACT_MAX_N: usize = 12;
const PRODUCT_MAX_LEN: usize = 4;
const PRODUCT_MAX_ENTRY: u64 = 8;
const PRODUCT_MAX_Q: u64 = 3;
const PRODUCT_MAX_K: usize = 6;

#[derive(Parser, Debug, Clone)]
#[command(name = "stirling", version, about = "Exact Stirling numbers and mechanical checks of identities and inequalities built on them")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Table cache directory (default: $STIRLING_CACHE_DIR, then the platform cache dir).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Record per-suite wall time. Reports are then no longer reproducible byte for byte.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Build a Stirling triangle, store it in the cache and print it.
    Table {
        /// 1 for signed first kind, 2 for second kind.
        #[arg(long)]
        kind: Kind,
        #[arg(long)]
        max_n: usize,
    },
    /// Cross-engine, oracle, Bell-identity and first-kind diagonal suites.
    Verify {
        #[arg(value_enum, default_value_t = Scope::All)]
        scope: Scope,
        #[arg(long, default_value_t = 40)]
        max_n: usize,
        /// Largest k for the Faà di Bruno and H_k suites.
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        max_k: u64,
    },
    /// Hankel determinants, q-majorization products, log-convexity and Sibuya's bound.
    Inequalities {
        #[arg(long, default_value_t = 30)]
        max_n: usize,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
        max_k: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        det_order: u64,
        /// Largest tuple entry in the determinant sweep.
        #[arg(long, default_value_t = 6)]
        max_entry: u64,
        /// Number of random q-majorization instances.
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Sweep the nested log-concavity claims. Counterexamples are findings except for claim 3 at l = 1.
    Conjecture {
        #[arg(long, value_delimiter = ',', default_values_t = [1u8, 2, 3, 4, 5, 6], value_parser = clap::value_parser!(u8).range(1..=6))]
        claims: Vec<u8>,
        #[arg(long, default_value_t = 30)]
        max_n: usize,
        /// Defaults to max-n.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_k: Option<u64>,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        max_ell: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    Recurrences,
    Bell,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// The resolved parameters of one invocation, echoed in every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scope: Option<Scope>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub max_n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_entry: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claims: Option<Vec<u8>>,
    pub format: Format,
    pub timings: bool,
    // Paths are left out of the report so the same run written to two places compares equal.
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Self {
        let mut c = RunConfig {
            command: "",
            scope: None,
            kind: None,
            max_n: 0,
            max_k: None,
            ell_max: None,
            det_order: None,
            max_entry: None,
            trials: None,
            seed: None,
            claims: None,
            format: cli.format,
            timings: cli.timings,
            cache_dir: resolve_cache_dir(cli.cache_dir.as_deref()),
            output: cli.output.clone(),
        };
        match &cli.command {
            Command::Table { kind, max_n } => {
                c.command = "table";
                c.kind = Some(kind.tag().into());
                c.max_n = *max_n;
            }
            Command::Verify { scope, max_n, max_k } => {
                c.command = "verify";
                c.scope = Some(*scope);
                c.max_n = *max_n;
                c.max_k = Some(*max_k as usize);
            }
            Command::Inequalities { max_n, max_k, det_order, max_entry, trials, seed } => {
                c.command = "inequalities";
                c.max_n = *max_n;
                c.max_k = Some(*max_k as usize);
                c.det_order = Some(*det_order as usize);
                c.max_entry = Some(*max_entry);
                c.trials = Some(*trials);
                c.seed = Some(*seed);
            }
            Command::Conjecture { claims, max_n, max_k, max_ell } => {
                let mut claims = claims.clone();
                claims.sort_unstable();
                claims.dedup();
                c.command = "conjecture";
                c.max_n = *max_n;
                c.max_k = Some(max_k.map_or(*max_n, |k| k as usize));
                c.ell_max = Some(*max_ell as usize);
                c.claims = Some(claims);
            }
        }
        c
    }
}

/// Flag, then `$STIRLING_CACHE_DIR`, then `$XDG_CACHE_HOME/stirling` or `~/.cache/stirling`.
pub fn resolve_cache_dir(flag: Option<&Path>) -> Option<PathBuf> {
    let env = |name: &str| std::env::var_os(name).filter(|v| !v.is_empty()).map(PathBuf::from);
    flag.map(Path::to_path_buf)
        .or_else(|| env(CACHE_ENV))
        .or_else(|| env("XDG_CACHE_HOME").map(|p| p.join("stirling")))
        .or_else(|| env("HOME").map(|p| p.join(".cache").join("stirling")))
}

fn cache_path(dir: &Path, kind: Kind) -> PathBuf {
    dir.join(format!("stirling-{}.txt", kind.tag()))
}

/// Loads a cached table that covers `max_n`, or builds one. A missing or
/// invalid cache is never fatal; the table is simply recomputed.
fn obtain_table(config: &RunConfig, kind: Kind, max_n: usize) -> StirlingTable {
    if let Some(dir) = &config.cache_dir {
        let path = cache_path(dir, kind);
        if path.exists() {
            match StirlingTable::load(&path) {
                Ok(t) if t.kind() == kind && t.max_n() >= max_n => return t,
                Ok(_) => {}
                Err(e) => eprintln!("warning: ignoring cache: {e}"),
            }
        }
    }
    StirlingTable::build(kind, max_n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub instances: u64,
    pub passes: u64,
    pub failures: u64,
    pub wall_time_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteFailure {
    pub suite: String,
    pub params: Fields,
    pub witness: Fields,
}

/// Aggregate of a compact first-kind diagonal sweep under one binomial convention.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompactSummary {
    pub convention: BinomialConvention,
    pub evaluated: u64,
    pub matches: u64,
    pub extended_binomials: u64,
    pub first_mismatch: Option<CompactComparison>,
}

/// Report of a verification command. Field order is fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommandReport {
    pub suite: String,
    pub config: RunConfig,
    pub instances: u64,
    pub passes: u64,
    pub failures: Vec<SuiteFailure>,
    pub wall_time_ms: u64,
    pub suites: Vec<SuiteSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compact_diagonal: Option<Vec<CompactSummary>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claims: Option<Vec<ClaimResult>>,
}

impl CommandReport {
    fn new(config: &RunConfig, reports: Vec<VerificationReport>) -> Self {
        let mut out = CommandReport {
            suite: match config.scope {
                Some(scope) => format!("{} {}", config.command, scope.to_possible_value().expect("not skipped").get_name()),
                None => config.command.to_string(),
            },
            config: config.clone(),
            instances: 0,
            passes: 0,
            failures: Vec::new(),
            wall_time_ms: 0,
            suites: Vec::new(),
            compact_diagonal: None,
            claims: None,
        };
        for r in reports {
            out.instances += r.instances;
            out.passes += r.passes;
            out.wall_time_ms += r.wall_time_ms;
            out.suites.push(SuiteSummary {
                suite: r.suite.clone(),
                instances: r.instances,
                passes: r.passes,
                failures: r.failures.len() as u64,
                wall_time_ms: r.wall_time_ms,
            });
            out.failures.extend(r.failures.into_iter().map(|f| SuiteFailure {
                suite: r.suite.clone(),
                params: f.params,
                witness: f.witness,
            }));
        }
        out
    }

    /// True when no asserted suite failed.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Rendered output of one command and the exit code it maps to.
#[derive(Clone, Debug)]
pub struct Execution {
    pub exit_code: i32,
    pub rendered: String,
    /// `None` for `table`, which prints values instead of a report.
    pub report: Option<CommandReport>,
}

/// Runs the command. Errors are usage or configuration problems (exit code 2);
/// failed checks are reported through [`Execution::exit_code`].
pub fn run(cli: &Cli) -> Result<Execution> {
    let config = RunConfig::from_cli(cli);
    let report = match &cli.command {
        Command::Table { kind, max_n } => return cmd_table(&config, *kind, *max_n),
        Command::Verify { scope, .. } => cmd_verify(&config, *scope)?,
        Command::Inequalities { .. } => cmd_inequalities(&config)?,
        Command::Conjecture { .. } => cmd_conjecture(&config)?,
    };
    Ok(Execution {
        exit_code: if report.passed() { EXIT_PASS } else { EXIT_FAILURE },
        rendered: render(&report, config.format)?,
        report: Some(report),
    })
}

/// Writes the rendered output to the configured path or standard output.
pub fn emit(cli: &Cli, execution: &Execution) -> Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, &execution.rendered).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{}", execution.rendered);
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct TableJson<'a> {
    kind: &'a str,
    max_n: usize,
    values: Vec<TableEntry>,
}

#[derive(Serialize)]
struct TableEntry {
    n: usize,
    k: usize,
    value: String,
}

/// Builds the table, stores it in the cache directory and renders the triangle.
pub fn cmd_table(config: &RunConfig, kind: Kind, max_n: usize) -> Result<Execution> {
    let table = StirlingTable::build(kind, max_n);
    if let Some(dir) = &config.cache_dir {
        std::fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.clone(),
            source,
        })?;
        table.save(&cache_path(dir, kind))?;
    }
    let rendered = match config.format {
        Format::Text => {
            let symbol = if kind == Kind::First { "s" } else { "S" };
            let mut out = format!("# {symbol}(n,k) for 0 <= k <= n <= {max_n}\n");
            for n in 0..=max_n {
                let row: Vec<String> = table.row(n)?.iter().map(Integer::to_string).collect();
                writeln!(out, "{n}: {}", row.join(" ")).expect("string write");
            }
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "k", "value"]).map_err(csv_error)?;
            for (n, k, v) in table.iter() {
                w.write_record([n.to_string(), k.to_string(), v.to_string()]).map_err(csv_error)?;
            }
            csv_finish(w)?
        }
        Format::Json => {
            let doc = TableJson {
                kind: kind.tag(),
                max_n,
                values: table
                    .iter()
                    .map(|(n, k, v)| TableEntry { n, k, value: v.to_string() })
                    .collect(),
            };
            json_string(&doc)?
        }
    };
    Ok(Execution {
        exit_code: EXIT_PASS,
        rendered,
        report: None,
    })
}

fn guarded(params: impl FnOnce() -> Fields, f: impl FnOnce() -> Result<Check>) -> Check {
    f().unwrap_or_else(|e| Check::new(false, params(), fields([("error", e.to_string())])))
}

fn suite(name: &str, timings: bool, checks: impl FnOnce() -> Vec<Check>) -> VerificationReport {
    let mut r = timed(timings, || checks().into_iter().collect());
    r.suite = name.into();
    r
}

/// Concatenates sub-reports in the given order; a sub-report that could not run counts as one failure.
fn merged(name: &str, timings: bool, parts: impl FnOnce() -> Vec<(Fields, Result<VerificationReport>)>) -> VerificationReport {
    timed(timings, || {
        let mut r = VerificationReport::new(name);
        for (params, part) in parts() {
            match part {
                Ok(p) => {
                    r.instances += p.instances;
                    r.passes += p.passes;
                    r.failures.extend(p.failures);
                }
                Err(e) => r.push_error(params, e),
            }
        }
        r
    })
}

/// Runs `f` for every `n` in parallel and concatenates the checks in order of `n`.
fn per_n(range: std::ops::RangeInclusive<usize>, f: impl Fn(usize) -> Vec<Check> + Sync + Send) -> Vec<Check> {
    range.into_par_iter().map(f).collect::<Vec<_>>().into_iter().flatten().collect()
}

fn nk(n: usize, k: usize) -> Fields {
    fields([("n", n), ("k", k)])
}

fn shown(v: &Result<Integer>) -> String {
    match v {
        Ok(x) => x.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Checks that every engine value equals the first one.
fn agreement(params: Fields, values: Vec<(&str, Result<Integer>)>) -> Check {
    let reference = values[0].1.as_ref().ok();
    let passed = reference.is_some() && values.iter().all(|(_, v)| v.as_ref().ok() == reference);
    Check::new(passed, params, values.iter().map(|(name, v)| (name.to_string(), shown(v))).collect())
}

pub fn cmd_verify(config: &RunConfig, scope: Scope) -> Result<CommandReport> {
    let max_n = config.max_n;
    let max_k = config.max_k.unwrap_or(1);
    let t = config.timings;
    let bell_n = max_n.min(BELL_SUITE_MAX_N);
    let hk_order = max_n.min(HK_MAX_ORDER);
    let second_max = max_n.max(2 * bell_n).max(hk_order + max_k);
    let s2 = obtain_table(config, Kind::Second, second_max);
    let s1 = obtain_table(config, Kind::First, max_n);
    let mut reports = Vec::new();
    let mut compact = None;

    if matches!(scope, Scope::Recurrences | Scope::All) {
        let egf: Vec<Result<Vec<Integer>>> = (0..=max_n).into_par_iter().map(|k| second::s2_egf(k, max_n)).collect();
        reports.push(suite("second-kind-engines", t, || {
            per_n(0..=max_n, |n| {
                (0..=n)
                    .map(|k| {
                        let from_egf = match &egf[k] {
                            Ok(col) => Ok(col[n - k].clone()),
                            Err(e) => Err(Error::Consistency(e.to_string())),
                        };
                        let mut values = vec![
                            ("triangular", second::s2_triangular(&s2, n, k)),
                            ("explicit", second::s2_explicit(n, k)),
                            ("egf", from_egf),
                        ];
                        if k < n {
                            values.push(("diagonal-full", second::s2_diagonal_full(&s2, n, k)));
                        }
                        if k < n && k >= 1 {
                            values.push(("diagonal-simplified", second::s2_diagonal_simplified(&s2, n, k)));
                        }
                        agreement(nk(n, k), values)
                    })
                    .collect()
            })
        }));
        reports.push(suite("second-kind-oracle", t, || {
            per_n(0..=max_n.min(PARTITION_BOUND), |n| {
                (0..=n)
                    .map(|k| {
                        let mut values = vec![
                            ("oracle", second::s2_oracle(n, k)),
                            ("triangular", second::s2_triangular(&s2, n, k)),
                            ("explicit", second::s2_explicit(n, k)),
                            ("egf", second::s2_egf(k, n).map(|mut v| v.pop().expect("n >= k"))),
                        ];
                        if k < n {
                            values.push(("diagonal-full", second::s2_diagonal_full(&s2, n, k)));
                        }
                        if k < n && k >= 1 {
                            values.push(("diagonal-simplified", second::s2_diagonal_simplified(&s2, n, k)));
                        }
                        agreement(nk(n, k), values)
                    })
                    .collect()
            })
        }));
        reports.push(suite("bell-row-sums", t, || {
            per_n(0..=max_n, |n| {
                vec![guarded(
                    || fields([("n", n)]),
                    || {
                        let b = second::bell_number_rowsum(&s2, n)?;
                        Ok(Check::new(true, fields([("n", n)]), fields([("bell", b)])))
                    },
                )]
            })
        }));
        let s1_egf: Vec<Result<Vec<Integer>>> = (0..=max_n).into_par_iter().map(|k| first::s1_egf(k, max_n)).collect();
        reports.push(suite("first-kind-engines", t, || {
            per_n(0..=max_n, |n| {
                (0..=n)
                    .map(|k| {
                        let from_egf = match &s1_egf[k] {
                            Ok(col) => Ok(col[n - k].clone()),
                            Err(e) => Err(Error::Consistency(e.to_string())),
                        };
                        let mut values = vec![("triangular", first::s1_triangular(&s1, n, k)), ("egf", from_egf)];
                        if k >= 1 {
                            values.push(("diagonal-double", first::s1_diagonal_double(&s1, n, k)));
                        }
                        agreement(nk(n, k), values)
                    })
                    .collect()
            })
        }));
        reports.push(suite("first-kind-oracle", t, || {
            per_n(0..=max_n.min(PERMUTATION_BOUND), |n| {
                (0..=n)
                    .map(|k| {
                        agreement(
                            nk(n, k),
                            vec![
                                ("oracle", first::s1_oracle(n, k)),
                                ("triangular", first::s1_triangular(&s1, n, k)),
                                ("egf", first::s1_egf(k, n).map(|mut v| v.pop().expect("n >= k"))),
                            ],
                        )
                    })
                    .collect()
            })
        }));
        reports.push(suite("first-kind-signs-and-row-sums", t, || {
            per_n(0..=max_n, |n| {
                vec![guarded(
                    || fields([("n", n)]),
                    || {
                        let row = s1.row(n)?;
                        let signs_ok = row
                            .iter()
                            .enumerate()
                            .all(|(k, v)| v.sign() == first_kind_sign(n, k));
                        let sum = first::alternating_row_sum(&s1, n)?;
                        let expected = Integer::from(u8::from(n <= 1));
                        Ok(Check::new(
                            signs_ok && sum == expected,
                            fields([("n", n)]),
                            fields([("signs_ok", signs_ok.to_string()), ("row_sum", sum.to_string())]),
                        ))
                    },
                )]
            })
        }));
        compact = Some(compact_sweep(&s1, max_n.min(COMPACT_MAX_N))?);
    }

    if matches!(scope, Scope::Bell | Scope::All) {
        reports.push(suite("bell-special-values", t, || {
            per_n(0..=bell_n, |n| {
                (0..=n).map(|k| guarded(|| nk(n, k), || bell::special_value_check(&s2, n, k))).collect()
            })
        }));
        reports.push(suite("bell-at-ones", t, || {
            per_n(0..=bell_n, |n| {
                (0..=n)
                    .map(|k| {
                        guarded(
                            || nk(n, k),
                            || {
                                let b = bell::bell_partial(n, k, &BellArgumentVector::ones(n, k))?;
                                let s = s2.get(n, k)?;
                                Ok(Check::new(
                                    b == crate::Rational::from_integer(s.clone()),
                                    nk(n, k),
                                    fields([("bell", crate::arith::show(&b)), ("stirling", s.to_string())]),
                                ))
                            },
                        )
                    })
                    .collect()
            })
        }));
        reports.push(suite("faa-di-bruno", t, || {
            per_n(1..=max_n.min(FAA_DI_BRUNO_MAX_M), |m| {
                (1..=max_k)
                    .map(|k| guarded(|| fields([("k", k), ("m", m)]), || bell::faa_di_bruno_check(k, m)))
                    .collect()
            })
        }));
        reports.push(suite("hk-series", t, || {
            per_n(1..=if max_n == 0 { 0 } else { max_k }, |k| {
                vec![guarded(
                    || fields([("k", k), ("order", hk_order)]),
                    || {
                        let series = bell::hk_series(&s2, k, hk_order)?;
                        let product = bell::hk(1, hk_order).pow(k);
                        Ok(Check::new(
                            series == product,
                            fields([("k", k), ("order", hk_order)]),
                            Fields::new(),
                        ))
                    },
                )]
            })
        }));
    }

    let mut report = CommandReport::new(config, reports);
    report.compact_diagonal = compact;
    Ok(report)
}

fn first_kind_sign(n: usize, k: usize) -> num_bigint::Sign {
    use num_bigint::Sign;
    if k == 0 && n > 0 {
        Sign::NoSign
    } else if (n - k) % 2 == 0 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn compact_sweep(s1: &StirlingTable, max_n: usize) -> Result<Vec<CompactSummary>> {
    [BinomialConvention::StrictEq5, BinomialConvention::PascalExtension]
        .into_iter()
        .map(|convention| {
            let mut summary = CompactSummary {
                convention,
                evaluated: 0,
                matches: 0,
                extended_binomials: 0,
                first_mismatch: None,
            };
            for n in 1..=max_n {
                for k in 1..=n {
                    let c = first::s1_diagonal_compact(s1, n, k, convention)?;
                    summary.evaluated += 1;
                    summary.matches += u64::from(c.matches);
                    summary.extended_binomials += c.extended_binomials as u64;
                    if !c.matches && summary.first_mismatch.is_none() {
                        summary.first_mismatch = Some(c);
                    }
                }
            }
            Ok(summary)
        })
        .collect()
}

pub fn cmd_inequalities(config: &RunConfig) -> Result<CommandReport> {
    let max_n = config.max_n;
    let max_k = config.max_k.unwrap_or(1);
    let det_order = config.det_order.unwrap_or(1);
    let max_entry = config.max_entry.unwrap_or(0);
    let trials = config.trials.unwrap_or(0);
    let seed = config.seed.unwrap_or(DEFAULT_SEED);
    let t = config.timings;
    let need = (max_n + 1)
        .max(2 * max_entry as usize + max_k)
        .max(2 * PRODUCT_MAX_ENTRY as usize + PRODUCT_MAX_K);
    let s2 = obtain_table(config, Kind::Second, need);
    let mut reports = Vec::new();

    let tuples: Vec<Vec<u64>> = (1..=det_order).flat_map(|m| inequality::all_tuples(m, max_entry)).collect();
    let det_checks = |signed: bool| -> Vec<Check> {
        tuples
            .par_iter()
            .map(|a| {
                (1..=max_k)
                    .map(|k| {
                        guarded(
                            || fields([("a", format!("{a:?}")), ("k", k.to_string()), ("signed", signed.to_string())]),
                            || inequality::check_det_nonneg(&s2, &HankelSpec::new(a.clone(), k, signed)?),
                        )
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    };
    reports.push(suite("hankel-determinant-unsigned", t, || det_checks(false)));
    reports.push(suite("hankel-determinant-signed", t, || det_checks(true)));
    reports.push(suite("hankel-sign-invariance", t, || {
        tuples
            .par_iter()
            .map(|a| {
                (1..=max_k)
                    .map(|k| {
                        let params = || fields([("a", format!("{a:?}")), ("k", k.to_string())]);
                        guarded(params, || {
                            let plain = inequality::hankel_matrix(&s2, &HankelSpec::new(a.clone(), k, false)?)?.det();
                            let signed = inequality::hankel_matrix(&s2, &HankelSpec::new(a.clone(), k, true)?)?.det();
                            Ok(Check::new(
                                plain == signed,
                                params(),
                                fields([
                                    ("unsigned", crate::arith::show(&plain)),
                                    ("signed", crate::arith::show(&signed)),
                                ]),
                            ))
                        })
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    }));

    let product_k = max_k.min(PRODUCT_MAX_K);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instances: Vec<_> = (0..trials)
        .map(|_| {
            let inst = inequality::random_majorization(&mut rng, PRODUCT_MAX_LEN, PRODUCT_MAX_ENTRY, PRODUCT_MAX_Q);
            let k = rng.gen_range(1..=product_k);
            (inst, k)
        })
        .collect();
    reports.push(suite("q-majorization-product", t, || {
        instances
            .par_iter()
            .enumerate()
            .map(|(trial, (inst, k))| {
                guarded(
                    || fields([("trial", trial)]),
                    || inequality::check_product_inequality(&s2, inst, *k),
                )
            })
            .collect()
    }));

    reports.push(merged("log-convexity", t, || {
        (1..=max_k)
            .into_par_iter()
            .filter(|&k| max_n >= k + 2)
            .map(|k| (fields([("k", k)]), inequality::check_log_convexity(&s2, k, max_n - k)))
            .collect()
    }));
    reports.push(suite("sibuya", t, || {
        per_n(2..=max_n, |n| (2..=n).map(|k| guarded(|| nk(n, k), || inequality::check_sibuya(&s2, n, k))).collect())
    }));
    reports.push(suite("diagonal-sufficient-condition", t, || {
        per_n(2..=max_n, |n| {
            (2..=n)
                .map(|k| guarded(|| nk(n, k), || conjecture::check_suffice_inequality(&s2, n, k)))
                .collect()
        })
    }));
    reports.push(merged("diagonal-monotonicity", t, || {
        (2..=max_n)
            .into_par_iter()
            .flat_map_iter(|n| (2..=n).map(move |k| (n, k)))
            .map(|(n, k)| (nk(n, k), conjecture::check_theorem3(&s2, n, k, max_n - n)))
            .collect()
    }));

    Ok(CommandReport::new(config, reports))
}

pub fn cmd_conjecture(config: &RunConfig) -> Result<CommandReport> {
    let max_n = config.max_n;
    let range = SweepRange {
        n_max: max_n,
        k_max: config.max_k.unwrap_or(max_n),
        ell_max: config.ell_max.unwrap_or(1),
    };
    let claims = config.claims.clone().unwrap_or_default();
    let table = obtain_table(config, Kind::Second, max_n);
    let start = std::time::Instant::now();
    let results = conjecture::sweep_conjecture(&table, &claims, range)?;

    let mut asserted = VerificationReport::new("diagonal-monotonicity-claim");
    let mut rechecks = VerificationReport::new("witness-recheck");
    for r in &results {
        let params = || {
            let mut p = fields([("claim", r.claim)]);
            if let Some(l) = r.ell {
                p.insert("ell".into(), l.to_string());
            }
            p
        };
        if r.asserted {
            let mut witness = Fields::new();
            if let Some(w) = &r.witness {
                witness = w.values.clone();
                witness.insert("n".into(), w.n.to_string());
                witness.insert("k".into(), w.k.to_string());
                witness.insert("m".into(), w.m.to_string());
            }
            asserted.push(Check::new(r.status == ClaimStatus::VerifiedInRange, params(), witness));
        }
        if let Some(w) = &r.witness {
            match conjecture::recheck(&table, w) {
                Ok(violated) => rechecks.push(Check::new(violated, params(), w.values.clone())),
                Err(e) => rechecks.push_error(params(), e),
            }
        }
    }
    if config.timings {
        asserted.wall_time_ms = start.elapsed().as_millis() as u64;
    }
    let mut report = CommandReport::new(config, vec![asserted, rechecks]);
    report.claims = Some(results);
    Ok(report)
}

fn json_string<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Validation(format!("JSON encoding failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn csv_error(e: csv::Error) -> Error {
    Error::Validation(format!("CSV encoding failed: {e}"))
}

fn csv_finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Validation(format!("CSV encoding failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Validation(e.to_string()))
}

fn inline(f: &Fields) -> String {
    f.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

fn claim_label(r: &ClaimResult) -> String {
    match r.ell {
        Some(l) => format!("claim {} l={l}", r.claim),
        None => format!("claim {}", r.claim),
    }
}

fn status_name(s: ClaimStatus) -> &'static str {
    match s {
        ClaimStatus::VerifiedInRange => "verified-in-range",
        ClaimStatus::Counterexample => "counterexample",
    }
}

fn witness_text(r: &ClaimResult) -> String {
    match &r.witness {
        Some(w) => format!("first at l={} n={} k={} m={}: {}", w.ell, w.n, w.k, w.m, inline(&w.values)),
        None => String::new(),
    }
}

/// Renders a report; all numbers are exact decimal strings.
pub fn render(report: &CommandReport, format: Format) -> Result<String> {
    match format {
        Format::Json => json_string(report),
        Format::Text => Ok(render_text(report)),
        Format::Csv => render_csv(report),
    }
}

fn render_text(r: &CommandReport) -> String {
    let mut out = String::new();
    let verdict = if r.passed() { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "{}: {verdict} ({}/{} instances)", r.suite, r.passes, r.instances);
    for s in &r.suites {
        let v = if s.failures == 0 { "PASS" } else { "FAIL" };
        let _ = write!(out, "  {v} {} {}/{}", s.suite, s.passes, s.instances);
        if r.config.timings {
            let _ = write!(out, " ({} ms)", s.wall_time_ms);
        }
        out.push('\n');
        for f in r.failures.iter().filter(|f| f.suite == s.suite) {
            let _ = writeln!(out, "    {} | {}", inline(&f.params), inline(&f.witness));
        }
    }
    if let Some(compact) = &r.compact_diagonal {
        let _ = writeln!(out, "compact first-kind diagonal (reported, not asserted):");
        for c in compact {
            let _ = write!(
                out,
                "  {}: {}/{} match, {} binomials outside the base conventions",
                c.convention, c.matches, c.evaluated, c.extended_binomials
            );
            if let Some(m) = &c.first_mismatch {
                let _ = write!(out, "; first mismatch n={} k={}: sum {} vs {}", m.n, m.k, m.sum, m.table_value);
            }
            out.push('\n');
        }
    }
    if let Some(claims) = &r.claims {
        let _ = writeln!(out, "claims:");
        for c in claims {
            let _ = write!(
                out,
                "  {}: {}{} ({} comparisons, {} violations",
                claim_label(c),
                status_name(c.status),
                if c.asserted { " [asserted]" } else { "" },
                c.comparisons,
                c.violations
            );
            if c.zero_denominators > 0 {
                let _ = write!(out, ", {} zero denominators", c.zero_denominators);
            }
            out.push(')');
            if c.witness.is_some() {
                let _ = write!(out, " {}", witness_text(c));
            }
            out.push('\n');
        }
    }
    out
}

fn render_csv(r: &CommandReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["record", "name", "instances", "passes", "failures", "detail"]).map_err(csv_error)?;
    for s in &r.suites {
        w.write_record([
            "suite".to_string(),
            s.suite.clone(),
            s.instances.to_string(),
            s.passes.to_string(),
            s.failures.to_string(),
            if r.config.timings { format!("wall_time_ms={}", s.wall_time_ms) } else { String::new() },
        ])
        .map_err(csv_error)?;
    }
    for f in &r.failures {
        w.write_record([
            "failure".to_string(),
            f.suite.clone(),
            String::new(),
            String::new(),
            String::new(),
            format!("{} | {}", inline(&f.params), inline(&f.witness)),
        ])
        .map_err(csv_error)?;
    }
    for c in r.compact_diagonal.iter().flatten() {
        let detail = match &c.first_mismatch {
            Some(m) => format!("first mismatch n={} k={} sum={} table={}", m.n, m.k, m.sum, m.table_value),
            None => String::new(),
        };
        w.write_record([
            "compact-diagonal".to_string(),
            c.convention.to_string(),
            c.evaluated.to_string(),
            c.matches.to_string(),
            (c.evaluated - c.matches).to_string(),
            detail,
        ])
        .map_err(csv_error)?;
    }
    for c in r.claims.iter().flatten() {
        w.write_record([
            "claim".to_string(),
            claim_label(c),
            c.comparisons.to_string(),
            (c.comparisons - c.violations).to_string(),
            c.violations.to_string(),
            format!("{} {}", status_name(c.status), witness_text(c)).trim_end().to_string(),
        ])
        .map_err(csv_error)?;
    }
    csv_finish(w)
}
