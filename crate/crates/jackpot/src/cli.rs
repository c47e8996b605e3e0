//! Batch command-line interface: every computation in the library behind one
//! binary, emitting JSON (default) or CSV with a reproducibility manifest.
//!
//! Subcommands: `evaluate`, `sweep`, `breakeven`, `table1`, `groups`,
//! `equilibrium`, `simulate`. Exit codes: 0 success, 2 usage (bad flags or
//! parameter domains), 3 infeasible problem size, 4 optimizer
//! non-convergence. Numbers are printed with 10 significant digits; every
//! `--out FILE` write lands a sibling `FILE.manifest.json` recording the
//! resolved parameters, seed, version, and timestamp, so any output can be
//! reproduced bit-for-bit (up to the manifest's own timestamp).

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::closed_forms::{self, PmfMode};
use crate::equilibrium::{
    asymptotic_best_response, asymptotic_return, convexity_kernel, minimize_return_over_crowd,
    winning_condition, AsymptoticConfig, BestResponseSide, OptimizerReport,
};
use crate::error::{Error, Result};
use crate::exact::expected_win_exact;
use crate::model::{
    uniform_support, CrowdStrategy, ExpectationReport, LotteryConfig, Method, SyndicateStrategy,
};
use crate::simulate::{enumerate_exact, simulate_with_workers};

/// Parse the process arguments, run the selected command, and return the
/// process exit code. The binary is a one-liner over this.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Invalid { .. } | Error::Domain { .. } => 2,
                Error::Infeasible(_) => 3,
            }
        }
    }
}

#[derive(Parser)]
#[command(
    name = "jackpot",
    version,
    about = "Expected-value analysis of pure-jackpot parimutuel lotteries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the result to FILE instead of standard output; a manifest lands
    /// at FILE.manifest.json.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Expected win, gain, and return for one configuration.
    Evaluate(EvaluateArgs),
    /// Gain/return over a range of s or c (the data behind the gain and
    /// slow-die-off figures).
    Sweep(SweepArgs),
    /// Worst expected gain and the smallest profitable stake.
    Breakeven {
        /// Number of tickets.
        #[arg(long)]
        t: u64,
        /// Crowd size.
        #[arg(long)]
        c: u64,
    },
    /// Expected-gain decomposition by the number of crowd winners sharing.
    Table1 {
        /// Number of tickets.
        #[arg(long)]
        t: u64,
        /// Crowd size.
        #[arg(long)]
        c: u64,
        /// Largest winner count to tabulate.
        #[arg(long, default_value_t = 4)]
        kmax: u64,
        /// Crowd-winner-count model.
        #[arg(long, value_enum, default_value_t = PmfFlag::Poisson)]
        pmf: PmfFlag,
    },
    /// Expected win against a crowd organized into coordinating groups.
    Groups {
        /// Number of tickets.
        #[arg(long)]
        t: u64,
        /// Crowd size (defaults to g·l).
        #[arg(long)]
        c: Option<u64>,
        /// Syndicate stake (distinct tickets).
        #[arg(long)]
        s: u64,
        /// Number of groups.
        #[arg(long)]
        g: u64,
        /// Distinct tickets per group.
        #[arg(long)]
        l: u64,
    },
    /// Equilibrium machinery: worst-case crowds, best responses, the winning
    /// condition, and the share-kernel convexity profile.
    #[command(subcommand)]
    Equilibrium(EquilibriumCommand),
    /// Seeded Monte Carlo simulation of drawings.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct EvaluateArgs {
    /// Number of tickets.
    #[arg(long)]
    t: usize,
    /// Crowd size (defaults to g·l when groups are given).
    #[arg(long)]
    c: Option<u64>,
    /// Total syndicate stake (fractional allowed).
    #[arg(long)]
    s: f64,
    /// Carryover added to the pool.
    #[arg(long, default_value_t = 0.0)]
    a: f64,
    /// Operator take, as a fraction of sales.
    #[arg(long, default_value_t = 0.0)]
    x: f64,
    /// Win distribution: `uniform`, a comma list, or `@file` (one value per
    /// line).
    #[arg(long, default_value = "uniform")]
    p: VectorSpec,
    /// Crowd selection distribution: `uniform`, a comma list, or `@file`.
    #[arg(long, default_value = "uniform")]
    q: VectorSpec,
    /// Syndicate weights: `spread` (1 unit on each of the s lowest-index
    /// tickets), `uniform`, a comma list, or `@file`.
    #[arg(long, default_value = "spread")]
    r: VectorSpec,
    /// Computation route.
    #[arg(long, value_enum, default_value_t = MethodFlag::Exact)]
    method: MethodFlag,
    /// Number of groups (with --l: grouped crowd).
    #[arg(long, requires = "l")]
    g: Option<u64>,
    /// Distinct tickets per group (with --g: grouped crowd).
    #[arg(long, requires = "g")]
    l: Option<u64>,
    /// Trials for `--method simulate`.
    #[arg(long, default_value_t = 1_000_000)]
    trials: u64,
    /// Seed for `--method simulate` (generated and reported if omitted).
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for `--method simulate` (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodFlag {
    /// Full binomial triple sum.
    Exact,
    /// Placement-averaged closed form (equiprobable lotteries).
    ClosedForm,
    /// Large-stake limit.
    Asymptotic,
    /// Seeded Monte Carlo.
    Simulate,
    /// Brute force over every crowd configuration.
    Enumerate,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PmfFlag {
    Poisson,
    Binomial,
}

impl From<PmfFlag> for PmfMode {
    fn from(flag: PmfFlag) -> Self {
        match flag {
            PmfFlag::Poisson => PmfMode::Poisson,
            PmfFlag::Binomial => PmfMode::Binomial,
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    /// Number of tickets.
    #[arg(long)]
    t: u64,
    /// Fixed syndicate stake (when sweeping c).
    #[arg(long)]
    s: Option<u64>,
    /// Fixed crowd size (when sweeping s).
    #[arg(long)]
    c: Option<u64>,
    /// Stake range `lo:hi[:step]`.
    #[arg(long)]
    s_range: Option<RangeSpec>,
    /// Crowd range `lo:hi[:step]`.
    #[arg(long)]
    c_range: Option<RangeSpec>,
    /// Grid step when the range does not carry its own.
    #[arg(long, default_value_t = 1)]
    step: u64,
}

#[derive(Subcommand)]
enum EquilibriumCommand {
    /// Crowd distribution minimizing the syndicate's return.
    MinimizeCrowd {
        /// Number of tickets.
        #[arg(long)]
        t: u64,
        /// Crowd size.
        #[arg(long)]
        c: u64,
        /// Syndicate stake (distinct tickets).
        #[arg(long)]
        s: u64,
    },
    /// One side's large-stake best response against a proportional opponent.
    BestResponse {
        /// Win distribution: comma list or `@file` (or `uniform` with --t).
        #[arg(long)]
        p: VectorSpec,
        /// Number of tickets (needed only for `--p uniform`).
        #[arg(long)]
        t: Option<usize>,
        /// Crowd-to-syndicate stake ratio (must be positive).
        #[arg(long)]
        u: f64,
        /// Carryover per unit of syndicate stake.
        #[arg(long, default_value_t = 0.0)]
        a_rate: f64,
        /// Operator take.
        #[arg(long, default_value_t = 0.0)]
        x: f64,
        /// Which side responds.
        #[arg(long, value_enum)]
        side: SideFlag,
    },
    /// Existence bound for a profitable syndicate.
    WinningCondition {
        /// Carryover added to the pool.
        #[arg(long)]
        a: f64,
        /// Operator take.
        #[arg(long)]
        x: f64,
        /// Syndicate stake.
        #[arg(long)]
        s: f64,
        /// Crowd stake.
        #[arg(long)]
        c: f64,
    },
    /// Share kernel value and finite differences at one point.
    Convexity {
        /// Evaluation point in (0, 1).
        #[arg(long)]
        q: f64,
        /// Crowd size.
        #[arg(long)]
        c: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideFlag {
    Crowd,
    Syndicate,
}

#[derive(Args)]
struct SimulateArgs {
    /// Number of tickets.
    #[arg(long)]
    t: usize,
    /// Crowd size (defaults to g·l when groups are given).
    #[arg(long)]
    c: Option<u64>,
    /// Total syndicate stake (fractional allowed).
    #[arg(long)]
    s: f64,
    /// Carryover added to the pool.
    #[arg(long, default_value_t = 0.0)]
    a: f64,
    /// Operator take.
    #[arg(long, default_value_t = 0.0)]
    x: f64,
    /// Win distribution.
    #[arg(long, default_value = "uniform")]
    p: VectorSpec,
    /// Crowd selection distribution.
    #[arg(long, default_value = "uniform")]
    q: VectorSpec,
    /// Syndicate weights.
    #[arg(long, default_value = "spread")]
    r: VectorSpec,
    /// Trials to run.
    #[arg(long)]
    trials: u64,
    /// RNG seed; generated and reported if omitted.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (default: all cores); any count gives identical output.
    #[arg(long)]
    workers: Option<usize>,
    /// Number of groups (with --l: grouped crowd).
    #[arg(long, requires = "l")]
    g: Option<u64>,
    /// Distinct tickets per group (with --g: grouped crowd).
    #[arg(long, requires = "g")]
    l: Option<u64>,
}

/// How a probability/weight vector is given on the command line.
#[derive(Clone, Debug)]
enum VectorSpec {
    Uniform,
    Spread,
    List(Vec<f64>),
    File(PathBuf),
}

impl FromStr for VectorSpec {
    type Err = String;

    fn from_str(raw: &str) -> std::result::Result<Self, String> {
        match raw {
            "uniform" => Ok(VectorSpec::Uniform),
            "spread" => Ok(VectorSpec::Spread),
            _ if raw.starts_with('@') => Ok(VectorSpec::File(PathBuf::from(&raw[1..]))),
            _ => {
                let values = raw
                    .split(',')
                    .map(|tok| {
                        tok.trim()
                            .parse::<f64>()
                            .map_err(|_| format!("cannot parse '{tok}' as a number"))
                    })
                    .collect::<std::result::Result<Vec<f64>, String>>()?;
                Ok(VectorSpec::List(values))
            }
        }
    }
}

impl VectorSpec {
    /// Resolve to a length-`t` vector. `spread_stake` is the integer ticket
    /// count backing the `spread` form, available only for `--r`.
    fn resolve(&self, name: &'static str, t: usize, spread_stake: Option<f64>) -> Result<Vec<f64>> {
        match self {
            VectorSpec::Uniform => Ok(vec![1.0 / t as f64; t]),
            VectorSpec::Spread => {
                let s = spread_stake.ok_or_else(|| {
                    Error::invalid(name, "'spread' is only meaningful for --r".to_string())
                })?;
                if s == 0.0 {
                    // A zero stake needs some placeholder support.
                    return Ok(vec![1.0 / t as f64; t]);
                }
                if s.fract() != 0.0 || s < 1.0 || s > t as f64 {
                    return Err(Error::invalid(
                        name,
                        format!("'spread' needs an integer stake in 1..=t, got s = {s}"),
                    ));
                }
                uniform_support(s as usize, t)
            }
            VectorSpec::List(values) => {
                if values.len() != t {
                    return Err(Error::invalid(
                        name,
                        format!("expected {t} entries, got {}", values.len()),
                    ));
                }
                Ok(values.clone())
            }
            VectorSpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::invalid(name, format!("cannot read {}: {e}", path.display()))
                })?;
                let values = text
                    .lines()
                    .map(str::trim)
                    .filter(|line| !line.is_empty())
                    .enumerate()
                    .map(|(i, line)| {
                        line.parse::<f64>().map_err(|_| {
                            Error::invalid(
                                name,
                                format!("{} line {}: cannot parse '{line}'", path.display(), i + 1),
                            )
                        })
                    })
                    .collect::<Result<Vec<f64>>>()?;
                if values.len() != t {
                    return Err(Error::invalid(
                        name,
                        format!("{} holds {} values, expected {t}", path.display(), values.len()),
                    ));
                }
                Ok(values)
            }
        }
    }
}

/// Inclusive integer grid `lo:hi[:step]`.
#[derive(Clone, Debug)]
struct RangeSpec {
    lo: u64,
    hi: u64,
    step: Option<u64>,
}

impl FromStr for RangeSpec {
    type Err = String;

    fn from_str(raw: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = raw.split(':').collect();
        if parts.len() < 2 || parts.len() > 3 {
            return Err(format!("expected lo:hi or lo:hi:step, got '{raw}'"));
        }
        let parse = |tok: &str| {
            tok.parse::<u64>()
                .map_err(|_| format!("cannot parse '{tok}' as an integer"))
        };
        Ok(RangeSpec {
            lo: parse(parts[0])?,
            hi: parse(parts[1])?,
            step: parts.get(2).map(|tok| parse(tok)).transpose()?,
        })
    }
}

/// A command's result, ready for either output format.
struct Output {
    json: Value,
    csv_header: Vec<&'static str>,
    csv_rows: Vec<Vec<String>>,
    /// 0 normally; 4 when an optimizer failed to converge.
    exit: i32,
}

/// Reproducibility sidecar written next to every `--out` file.
#[derive(Serialize)]
struct RunManifest {
    command: String,
    parameters: Map<String, Value>,
    seed: Option<u64>,
    version: &'static str,
    timestamp_unix: u64,
}

impl RunManifest {
    fn new(command: &str, parameters: Map<String, Value>, seed: Option<u64>) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters,
            seed,
            version: env!("CARGO_PKG_VERSION"),
            timestamp_unix: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }
}

/// Round to 10 significant digits — the CLI's numeric output contract.
fn sig10(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.9e}").parse().expect("formatted float reparses")
}

/// Decimal rendering of an already-rounded number for CSV cells.
fn cell(x: f64) -> String {
    format!("{}", sig10(x))
}

fn cell_opt(x: Option<f64>) -> String {
    x.map(cell).unwrap_or_default()
}

/// Round every fractional number in a JSON tree to 10 significant digits.
fn round_numbers(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if !n.is_i64() && !n.is_u64() {
                if let Some(x) = n.as_f64() {
                    *value = json!(sig10(x));
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(map) => map.values_mut().for_each(round_numbers),
        _ => {}
    }
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("in-memory write");
    for row in rows {
        writer.write_record(row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

fn emit(format: Format, out: Option<&Path>, manifest: RunManifest, output: &Output) -> Result<i32> {
    let payload = match format {
        Format::Json => {
            let mut tree = output.json.clone();
            round_numbers(&mut tree);
            let mut text = serde_json::to_string_pretty(&tree).expect("serializable payload");
            text.push('\n');
            text
        }
        Format::Csv => csv_string(&output.csv_header, &output.csv_rows),
    };
    match out {
        Some(path) => {
            std::fs::write(path, payload).map_err(|e| {
                Error::invalid("out", format!("cannot write {}: {e}", path.display()))
            })?;
            let manifest_path = sibling_manifest_path(path);
            let manifest_text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
            std::fs::write(&manifest_path, manifest_text + "\n").map_err(|e| {
                Error::invalid("out", format!("cannot write {}: {e}", manifest_path.display()))
            })?;
        }
        None => print!("{payload}"),
    }
    Ok(output.exit)
}

fn sibling_manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    out.with_file_name(name)
}

fn execute(cli: &Cli) -> Result<i32> {
    let (output, manifest) = match &cli.command {
        Command::Evaluate(args) => cmd_evaluate(args)?,
        Command::Sweep(args) => cmd_sweep(args)?,
        Command::Breakeven { t, c } => cmd_breakeven(*t, *c)?,
        Command::Table1 { t, c, kmax, pmf } => cmd_table1(*t, *c, *kmax, *pmf)?,
        Command::Groups { t, c, s, g, l } => cmd_groups(*t, *c, *s, *g, *l)?,
        Command::Equilibrium(sub) => cmd_equilibrium(sub)?,
        Command::Simulate(args) => cmd_simulate(args)?,
    };
    emit(cli.format, cli.out.as_deref(), manifest, &output)
}

/// Shared flat rendering of an [`ExpectationReport`].
fn report_output(report: &ExpectationReport, extra: Map<String, Value>) -> Output {
    let mut tree = serde_json::to_value(report).expect("report serializes");
    if let Value::Object(map) = &mut tree {
        map.extend(extra);
    }
    Output {
        json: tree,
        csv_header: vec![
            "jackpot",
            "expected_win",
            "expected_gain",
            "expected_return",
            "crowd_expected_return",
            "carryover_probability",
            "method",
        ],
        csv_rows: vec![vec![
            cell(report.jackpot),
            cell(report.expected_win),
            cell(report.expected_gain),
            cell_opt(report.expected_return),
            cell_opt(report.crowd_expected_return),
            cell_opt(report.carryover_probability),
            method_name(report.method).to_string(),
        ]],
        exit: 0,
    }
}

fn method_name(method: Method) -> &'static str {
    match method {
        Method::Exact => "exact",
        Method::ClosedForm => "closed-form",
        Method::Asymptotic => "asymptotic",
        Method::Simulated => "simulated",
        Method::Enumerated => "enumerated",
    }
}

/// Build the crowd from either `--c`/`--q` or `--g`/`--l`.
fn resolve_crowd(
    t: usize,
    c: Option<u64>,
    q: &VectorSpec,
    g: Option<u64>,
    l: Option<u64>,
) -> Result<CrowdStrategy> {
    match (g, l) {
        (Some(g), Some(l)) => {
            if !matches!(q, VectorSpec::Uniform) {
                return Err(Error::invalid(
                    "q",
                    "grouped crowds choose uniformly; --q cannot be combined with --g/--l"
                        .to_string(),
                ));
            }
            if let Some(c) = c {
                if c != g * l {
                    return Err(Error::invalid(
                        "c",
                        format!("crowd size {c} contradicts g·l = {}", g * l),
                    ));
                }
            }
            CrowdStrategy::grouped(g as usize, l as usize, t)
        }
        _ => {
            let c = c.ok_or_else(|| Error::invalid("c", "crowd size is required".to_string()))?;
            CrowdStrategy::new(c as usize, q.resolve("q", t, None)?)
        }
    }
}

fn vector_json(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| json!(x)).collect())
}

fn cmd_evaluate(args: &EvaluateArgs) -> Result<(Output, RunManifest)> {
    let t = args.t;
    let p = args.p.resolve("p", t, None)?;
    let config = LotteryConfig::new(p.clone(), args.a, args.x)?;
    let crowd = resolve_crowd(t, args.c, &args.q, args.g, args.l)?;
    let r = args.r.resolve("r", t, Some(args.s))?;
    let syn = SyndicateStrategy::new(args.s, r.clone())?;

    let mut params = Map::new();
    params.insert("t".into(), json!(t));
    params.insert("c".into(), json!(crowd.c()));
    params.insert("s".into(), json!(args.s));
    params.insert("a".into(), json!(args.a));
    params.insert("x".into(), json!(args.x));
    params.insert("p".into(), vector_json(config.p()));
    params.insert("q".into(), vector_json(crowd.q()));
    params.insert("r".into(), vector_json(syn.r()));
    if let Some(gs) = crowd.groups() {
        params.insert("g".into(), json!(gs.g));
        params.insert("l".into(), json!(gs.l));
    }

    let mut seed_used = None;
    let report = match args.method {
        MethodFlag::Exact => {
            params.insert("method".into(), json!("exact"));
            let report = expected_win_exact(&config, &syn, &crowd)?;
            (report_output(&report, Map::new()), report)
        }
        MethodFlag::Enumerate => {
            params.insert("method".into(), json!("enumerate"));
            let report = enumerate_exact(&config, &syn, &crowd)?;
            (report_output(&report, Map::new()), report)
        }
        MethodFlag::ClosedForm => {
            params.insert("method".into(), json!("closed-form"));
            let uniform = 1.0 / t as f64;
            if config.p().iter().any(|&pi| (pi - uniform).abs() > 1e-12) {
                return Err(Error::invalid(
                    "p",
                    "the closed-form route needs an equiprobable lottery".to_string(),
                ));
            }
            if args.s.fract() != 0.0 {
                return Err(Error::invalid(
                    "s",
                    "the closed-form route needs an integer stake".to_string(),
                ));
            }
            if crowd.groups().is_some() {
                return Err(Error::invalid(
                    "g",
                    "the closed-form route does not take group structure; use `groups`"
                        .to_string(),
                ));
            }
            let c = crowd.c() as u64;
            let s_int = args.s as u64;
            let base = closed_forms::placement_averaged_win(t as u64, c, s_int, crowd.q())?;
            // The placement-averaged form is stated for v = s + c; rescale to
            // the configured jackpot.
            let v = config.jackpot(args.s, c as f64);
            let win = if args.s + c as f64 > 0.0 {
                base * v / (args.s + c as f64)
            } else {
                0.0
            };
            let report = ExpectationReport::from_win(v, win, args.s, None, None, Method::ClosedForm);
            (report_output(&report, Map::new()), report)
        }
        MethodFlag::Asymptotic => {
            params.insert("method".into(), json!("asymptotic"));
            if args.s <= 0.0 {
                return Err(Error::invalid(
                    "s",
                    "the asymptotic route needs a positive stake".to_string(),
                ));
            }
            let c = crowd.c() as f64;
            let cfg = AsymptoticConfig::new(c / args.s, args.a / args.s, args.x)?;
            let rets = asymptotic_return(config.p(), syn.r(), crowd.q(), &cfg)?;
            let v = config.jackpot(args.s, c);
            let report = ExpectationReport::from_win(
                v,
                args.s * (1.0 + rets.syndicate),
                args.s,
                rets.crowd,
                None,
                Method::Asymptotic,
            );
            (report_output(&report, Map::new()), report)
        }
        MethodFlag::Simulate => {
            params.insert("method".into(), json!("simulate"));
            params.insert("trials".into(), json!(args.trials));
            let seed = args.seed.unwrap_or_else(rand::random);
            seed_used = Some(seed);
            let workers = effective_workers(args.workers);
            let sim = simulate_with_workers(&config, &syn, &crowd, args.trials, seed, workers)?;
            let report = ExpectationReport::from_win(
                config.jackpot(args.s, crowd.c() as f64),
                args.s * (1.0 + sim.mean_syndicate_return),
                args.s,
                (crowd.c() > 0).then_some(sim.mean_crowd_return),
                Some(sim.carryover_frequency),
                Method::Simulated,
            );
            let mut extra = Map::new();
            extra.insert("std_error".into(), json!(sim.std_error));
            extra.insert("seed".into(), json!(seed));
            extra.insert("n_trials".into(), json!(sim.n_trials));
            (report_output(&report, extra), report)
        }
    };
    let (output, _) = report;
    Ok((output, RunManifest::new("evaluate", params, seed_used)))
}

fn cmd_sweep(args: &SweepArgs) -> Result<(Output, RunManifest)> {
    let mut params = Map::new();
    params.insert("t".into(), json!(args.t));
    let (range, over_s) = match (&args.s_range, &args.c_range) {
        (Some(r), None) => {
            let c = args.c.ok_or_else(|| {
                Error::invalid("c", "sweeping s needs a fixed crowd size --c".to_string())
            })?;
            params.insert("c".into(), json!(c));
            (r, true)
        }
        (None, Some(r)) => {
            let s = args.s.ok_or_else(|| {
                Error::invalid("s", "sweeping c needs a fixed stake --s".to_string())
            })?;
            params.insert("s".into(), json!(s));
            (r, false)
        }
        _ => {
            return Err(Error::invalid(
                "range",
                "exactly one of --s-range / --c-range is required".to_string(),
            ))
        }
    };
    let step = range.step.unwrap_or(args.step);
    if step < 1 {
        return Err(Error::invalid("step", "must be at least 1".to_string()));
    }
    if range.lo > range.hi {
        return Err(Error::invalid(
            "range",
            format!("empty range {}:{}", range.lo, range.hi),
        ));
    }
    params.insert(
        (if over_s { "s_range" } else { "c_range" }).into(),
        json!(format!("{}:{}:{}", range.lo, range.hi, step)),
    );

    let mut rows_json = Vec::new();
    let mut rows_csv = Vec::new();
    let mut var = range.lo;
    while var <= range.hi {
        let (s, c) = if over_s {
            (var, args.c.expect("validated above"))
        } else {
            (args.s.expect("validated above"), var)
        };
        let ret = closed_forms::uniform_return(args.t, c, s)?;
        let gain = ret * s as f64;
        rows_json.push(json!({ "var": var, "gain": gain, "return": ret }));
        rows_csv.push(vec![var.to_string(), cell(gain), cell(ret)]);
        match var.checked_add(step) {
            Some(next) => var = next,
            None => break,
        }
    }
    let output = Output {
        json: json!({ "rows": rows_json }),
        csv_header: vec!["var", "gain", "return"],
        csv_rows: rows_csv,
        exit: 0,
    };
    Ok((output, RunManifest::new("sweep", params, None)))
}

fn cmd_breakeven(t: u64, c: u64) -> Result<(Output, RunManifest)> {
    let report = closed_forms::breakeven(t, c)?;
    let mut params = Map::new();
    params.insert("t".into(), json!(t));
    params.insert("c".into(), json!(c));
    let mut tree = serde_json::to_value(&report).expect("report serializes");
    if let Value::Object(map) = &mut tree {
        map.insert(
            "notes".into(),
            json!(
                "s_star solves the exact stationarity condition of the continuous \
                 gain curve; the small-y series approximation puts it slightly lower \
                 (290.798 vs 291.089 at t = c = 1000). The discrepancy never moves \
                 first_profitable_integer, which comes from an exact integer scan."
            ),
        );
    }
    let output = Output {
        json: tree,
        csv_header: vec!["y", "s_star", "g_min", "s_zero", "first_profitable_integer"],
        csv_rows: vec![vec![
            cell(report.y),
            cell(report.s_star),
            cell(report.g_min),
            cell(report.s_zero),
            report.first_profitable_integer.to_string(),
        ]],
        exit: 0,
    };
    Ok((output, RunManifest::new("breakeven", params, None)))
}

fn cmd_table1(t: u64, c: u64, kmax: u64, pmf: PmfFlag) -> Result<(Output, RunManifest)> {
    let rows = closed_forms::table1(t, c, kmax, pmf.into())?;
    let mut params = Map::new();
    params.insert("t".into(), json!(t));
    params.insert("c".into(), json!(c));
    params.insert("kmax".into(), json!(kmax));
    params.insert(
        "pmf".into(),
        json!(match pmf {
            PmfFlag::Poisson => "poisson",
            PmfFlag::Binomial => "binomial",
        }),
    );
    let sum_full: f64 = rows.iter().map(|row| row.contrib_s_t).sum();
    let sum_single: f64 = rows.iter().map(|row| row.contrib_s_1).sum();
    let output = Output {
        json: json!({
            "rows": rows,
            "sum_contrib_s_t": sum_full,
            "sum_contrib_s_1": sum_single,
        }),
        csv_header: vec!["k", "prob", "payoff_s_t", "contrib_s_t", "payoff_s_1", "contrib_s_1"],
        csv_rows: rows
            .iter()
            .map(|row| {
                vec![
                    row.k.to_string(),
                    cell(row.prob),
                    cell(row.payoff_s_t),
                    cell(row.contrib_s_t),
                    cell(row.payoff_s_1),
                    cell(row.contrib_s_1),
                ]
            })
            .collect(),
        exit: 0,
    };
    Ok((output, RunManifest::new("table1", params, None)))
}

fn cmd_groups(t: u64, c: Option<u64>, s: u64, g: u64, l: u64) -> Result<(Output, RunManifest)> {
    let c = match c {
        Some(c) if c != g * l => {
            return Err(Error::invalid(
                "c",
                format!("crowd size {c} contradicts g·l = {}", g * l),
            ))
        }
        _ => g * l,
    };
    let report = closed_forms::group_adjusted_win(t, c, s, g, l)?;
    let mut params = Map::new();
    for (key, value) in [("t", t), ("c", c), ("s", s), ("g", g), ("l", l)] {
        params.insert(key.into(), json!(value));
    }
    let output = Output {
        json: serde_json::to_value(&report).expect("report serializes"),
        csv_header: vec!["adjusted_win", "ratio_to_ungrouped"],
        csv_rows: vec![vec![cell(report.adjusted_win), cell(report.ratio_to_ungrouped)]],
        exit: 0,
    };
    Ok((output, RunManifest::new("groups", params, None)))
}

fn optimizer_output(report: &OptimizerReport) -> Output {
    Output {
        json: serde_json::to_value(report).expect("report serializes"),
        csv_header: vec!["index", "weight"],
        csv_rows: report
            .argmin_vector
            .iter()
            .enumerate()
            .map(|(i, &w)| vec![i.to_string(), cell(w)])
            .collect(),
        exit: if report.converged { 0 } else { 4 },
    }
}

fn cmd_equilibrium(sub: &EquilibriumCommand) -> Result<(Output, RunManifest)> {
    match sub {
        EquilibriumCommand::MinimizeCrowd { t, c, s } => {
            let report = minimize_return_over_crowd(*t, *c, *s)?;
            let mut params = Map::new();
            for (key, value) in [("t", *t), ("c", *c), ("s", *s)] {
                params.insert(key.into(), json!(value));
            }
            params.insert("op".into(), json!("minimize-crowd"));
            Ok((optimizer_output(&report), RunManifest::new("equilibrium", params, None)))
        }
        EquilibriumCommand::BestResponse { p, t, u, a_rate, x, side } => {
            let p = match (p, t) {
                (VectorSpec::Uniform, Some(t)) => p.resolve("p", *t, None)?,
                (VectorSpec::Uniform, None) => {
                    return Err(Error::invalid(
                        "t",
                        "--p uniform needs an explicit --t".to_string(),
                    ))
                }
                (VectorSpec::List(values), t) => {
                    if let Some(t) = t {
                        if *t != values.len() {
                            return Err(Error::invalid(
                                "t",
                                format!("--t {t} contradicts a {}-entry --p", values.len()),
                            ));
                        }
                    }
                    values.clone()
                }
                (VectorSpec::File(_), Some(t)) => p.resolve("p", *t, None)?,
                (VectorSpec::File(path), None) => {
                    let probe = VectorSpec::File(path.clone());
                    // Length comes from the file itself: read once to count.
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        Error::invalid("p", format!("cannot read {}: {e}", path.display()))
                    })?;
                    let len = text.lines().map(str::trim).filter(|l| !l.is_empty()).count();
                    probe.resolve("p", len, None)?
                }
                (VectorSpec::Spread, _) => {
                    return Err(Error::invalid(
                        "p",
                        "'spread' is only meaningful for --r".to_string(),
                    ))
                }
            };
            let cfg = AsymptoticConfig::new(*u, *a_rate, *x)?;
            let side_enum = match side {
                SideFlag::Crowd => BestResponseSide::Crowd,
                SideFlag::Syndicate => BestResponseSide::Syndicate,
            };
            let report = asymptotic_best_response(&p, &cfg, side_enum)?;
            let mut params = Map::new();
            params.insert("op".into(), json!("best-response"));
            params.insert("p".into(), vector_json(&p));
            params.insert("u".into(), json!(u));
            params.insert("a_rate".into(), json!(a_rate));
            params.insert("x".into(), json!(x));
            params.insert(
                "side".into(),
                json!(match side {
                    SideFlag::Crowd => "crowd",
                    SideFlag::Syndicate => "syndicate",
                }),
            );
            Ok((optimizer_output(&report), RunManifest::new("equilibrium", params, None)))
        }
        EquilibriumCommand::WinningCondition { a, x, s, c } => {
            let report = winning_condition(*a, *x, *s, *c)?;
            let mut params = Map::new();
            params.insert("op".into(), json!("winning-condition"));
            for (key, value) in [("a", *a), ("x", *x), ("s", *s), ("c", *c)] {
                params.insert(key.into(), json!(value));
            }
            let output = Output {
                json: serde_json::to_value(report).expect("report serializes"),
                csv_header: vec!["holds", "bound"],
                csv_rows: vec![vec![report.holds.to_string(), cell(report.bound)]],
                exit: 0,
            };
            Ok((output, RunManifest::new("equilibrium", params, None)))
        }
        EquilibriumCommand::Convexity { q, c } => {
            let report = convexity_kernel(*q, *c)?;
            let mut params = Map::new();
            params.insert("op".into(), json!("convexity"));
            params.insert("q".into(), json!(q));
            params.insert("c".into(), json!(c));
            let output = Output {
                json: serde_json::to_value(report).expect("report serializes"),
                csv_header: vec!["value", "first_difference", "second_difference", "h"],
                csv_rows: vec![vec![
                    cell(report.value),
                    cell(report.first_difference),
                    cell(report.second_difference),
                    cell(report.h),
                ]],
                exit: 0,
            };
            Ok((output, RunManifest::new("equilibrium", params, None)))
        }
    }
}

fn effective_workers(flag: Option<usize>) -> usize {
    flag.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    })
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(Output, RunManifest)> {
    let t = args.t;
    let p = args.p.resolve("p", t, None)?;
    let config = LotteryConfig::new(p, args.a, args.x)?;
    let crowd = resolve_crowd(t, args.c, &args.q, args.g, args.l)?;
    let r = args.r.resolve("r", t, Some(args.s))?;
    let syn = SyndicateStrategy::new(args.s, r)?;
    let seed = args.seed.unwrap_or_else(rand::random);
    let workers = effective_workers(args.workers);
    let sim = simulate_with_workers(&config, &syn, &crowd, args.trials, seed, workers)?;

    let mut params = Map::new();
    params.insert("t".into(), json!(t));
    params.insert("c".into(), json!(crowd.c()));
    params.insert("s".into(), json!(args.s));
    params.insert("a".into(), json!(args.a));
    params.insert("x".into(), json!(args.x));
    params.insert("p".into(), vector_json(config.p()));
    params.insert("q".into(), vector_json(crowd.q()));
    params.insert("r".into(), vector_json(syn.r()));
    params.insert("trials".into(), json!(args.trials));
    if let Some(gs) = crowd.groups() {
        params.insert("g".into(), json!(gs.g));
        params.insert("l".into(), json!(gs.l));
    }

    let output = Output {
        json: serde_json::to_value(sim).expect("result serializes"),
        csv_header: vec![
            "n_trials",
            "mean_syndicate_return",
            "std_error",
            "mean_crowd_return",
            "carryover_frequency",
            "seed",
        ],
        csv_rows: vec![vec![
            sim.n_trials.to_string(),
            cell(sim.mean_syndicate_return),
            cell(sim.std_error),
            cell(sim.mean_crowd_return),
            cell(sim.carryover_frequency),
            sim.seed.to_string(),
        ]],
        exit: 0,
    };
    Ok((output, RunManifest::new("simulate", params, Some(seed))))
}
