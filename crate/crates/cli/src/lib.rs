//! Command-line front end for `gr1w`.
//!
//! [`run`] takes the raw argument list and two output streams and returns the
//! process exit code, so the binary is a thin wrapper and tests can drive the
//! whole tool in-process.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gr1w_core::dimension::{analyze, compare_weakness, spec_automaton, Analysis, Settings};
use gr1w_core::expr::MAX_VARS;
use gr1w_core::implication::{discrimination_stats, implies, Lasso};
use gr1w_core::{parse_spec, Error, Gr1Spec, SideSelection, StrictOrder, WeaknessOrder};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const CAP: i32 = 3;
    pub const MISMATCH: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Spec { path: PathBuf, source: Error },
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{0}")]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        let core = match self {
            CliError::Spec { source, .. } | CliError::Core(source) => source,
            CliError::Io { .. } | CliError::Output(_) => return exit::FAILURE,
        };
        match core {
            Error::Syntax { .. }
            | Error::UndeclaredVariable { .. }
            | Error::InvalidVariable(_)
            | Error::DuplicateVariable { .. }
            | Error::NextOutsideInvariant { .. } => exit::PARSE,
            Error::CapExceeded { .. } => exit::CAP,
            Error::VarMismatch(_) => exit::MISMATCH,
            Error::Precondition(_) | Error::NonConvergence { .. } => exit::FAILURE,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "gr1w",
    version,
    about = "Weakness measure for GR(1) specifications"
)]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Options {
    /// Which units to measure.
    #[arg(long, value_enum, default_value_t = SideArg::Env, global = true)]
    side: SideArg,
    /// Equality tolerance for weakness comparisons.
    #[arg(long, default_value_t = 1e-6, value_parser = parse_tolerance, global = true)]
    tolerance: f64,
    /// Largest accepted number of variables.
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u32).range(0..=MAX_VARS as i64), global = true)]
    max_vars: u32,
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Include wall-clock times (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x >= 0.0 => Ok(x),
        _ => Err(format!("`{s}` is not a non-negative number")),
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Env,
    Sys,
    All,
}

impl From<SideArg> for SideSelection {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Env => SideSelection::EnvOnly,
            SideArg::Sys => SideSelection::SysOnly,
            SideArg::All => SideSelection::All,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weakness pair of a spec, optionally conjoined with refinements.
    Weakness {
        file: PathBuf,
        /// Append the units of this file (repeatable).
        #[arg(long = "refine", value_name = "FILE")]
        refine: Vec<PathBuf>,
    },
    /// Order two specs by weakness.
    Compare {
        a: PathBuf,
        b: PathBuf,
        /// Conjoin both files onto this spec.
        #[arg(long, value_name = "FILE")]
        base: Option<PathBuf>,
    },
    /// Decide language inclusion in both directions.
    Implies {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_name = "FILE")]
        base: Option<PathBuf>,
        /// Print a counterexample word for each failing direction.
        #[arg(long)]
        witness: bool,
    },
    /// Rank refinements of a base spec, weakest first.
    Rank {
        base: PathBuf,
        #[arg(required = true, num_args = 1..)]
        refinements: Vec<PathBuf>,
    },
    /// Discriminating power of implication and weakness over a set of specs.
    Stats {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        #[arg(long, value_name = "FILE")]
        base: Option<PathBuf>,
    },
    /// Labelled automaton of a spec in Graphviz format.
    Dot {
        file: PathBuf,
        #[arg(long = "refine", value_name = "FILE")]
        refine: Vec<PathBuf>,
    },
}

/// Rounds to 12 significant digits so printed JSON numbers parse back exactly.
fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

#[derive(Serialize)]
struct Report {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    side: SideSelection,
    tolerance: f64,
    #[serde(flatten)]
    body: Body,
}

#[derive(Serialize)]
#[serde(untagged)]
enum Body {
    Weakness {
        result: SpecResult,
    },
    Compare {
        a: SpecResult,
        b: SpecResult,
        order: WeaknessOrder,
    },
    Implies {
        a: String,
        b: String,
        a_implies_b: bool,
        b_implies_a: bool,
        order: StrictOrder,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness_a_not_b: Option<WordReport>,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness_b_not_a: Option<WordReport>,
    },
    Rank {
        base: String,
        ranking: Vec<RankEntry>,
    },
    Stats {
        files: Vec<String>,
        n_specs: usize,
        n_pairs: usize,
        pct_impl: f64,
        pct_weak: f64,
    },
}

#[derive(Serialize)]
struct SpecResult {
    label: String,
    d1: f64,
    d2: f64,
    empty: bool,
    fairness_count: usize,
    states: usize,
    edges: usize,
    sccs: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<f64>,
}

#[derive(Serialize)]
struct RankEntry {
    rank: usize,
    /// Weakness equal to the previous entry within the tolerance.
    tied: bool,
    #[serde(flatten)]
    result: SpecResult,
}

#[derive(Serialize)]
struct WordReport {
    stem: Vec<String>,
    cycle: Vec<String>,
    word: String,
}

struct Ctx<'w> {
    side: SideSelection,
    settings: Settings,
    format: Format,
    timing: bool,
    out: &'w mut dyn Write,
}

fn load(path: &Path, settings: &Settings) -> Result<Gr1Spec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    let spec = parse_spec(&text).map_err(|source| CliError::Spec {
        path: path.to_owned(),
        source,
    })?;
    spec.vars()
        .check_cap(settings.max_vars)
        .map_err(|source| CliError::Spec {
            path: path.to_owned(),
            source,
        })?;
    Ok(spec)
}

fn load_refined(path: &Path, refine: &[PathBuf], settings: &Settings) -> Result<Gr1Spec, CliError> {
    let mut spec = load(path, settings)?;
    for r in refine {
        let extra = load(r, settings)?;
        spec = spec.conjoin_spec(&extra).map_err(|source| CliError::Spec {
            path: r.clone(),
            source,
        })?;
    }
    Ok(spec)
}

/// `path` on its own, or conjoined onto `base`.
fn load_over(path: &Path, base: Option<&Path>, settings: &Settings) -> Result<Gr1Spec, CliError> {
    match base {
        Some(b) => load_refined(b, &[path.to_owned()], settings),
        None => load(path, settings),
    }
}

fn label(path: &Path) -> String {
    path.display().to_string()
}

impl Ctx<'_> {
    fn measure(&self, spec: &Gr1Spec, label: String) -> Result<SpecResult, CliError> {
        let start = Instant::now();
        let Analysis {
            pair,
            states,
            edges,
            sccs,
        } = analyze(spec, self.side, &self.settings)?;
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        Ok(SpecResult {
            label,
            d1: sig12(pair.d1),
            d2: sig12(pair.d2),
            empty: pair.empty,
            fairness_count: pair.fairness_count,
            states,
            edges,
            sccs,
            wall_ms: self.timing.then(|| (elapsed * 1e3).round() / 1e3),
        })
    }

    fn emit(&mut self, command: &'static str, body: Body) -> Result<(), CliError> {
        if self.format == Format::Json {
            let report = Report {
                tool: "gr1w",
                version: VERSION,
                command,
                side: self.side,
                tolerance: self.settings.tolerance,
                body,
            };
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            writeln!(self.out, "{text}")?;
        } else {
            write_table(self.out, &body)?;
        }
        Ok(())
    }
}

fn pair_of(r: &SpecResult) -> gr1w_core::WeaknessPair {
    gr1w_core::WeaknessPair {
        d1: r.d1,
        d2: r.d2,
        empty: r.empty,
        fairness_count: r.fairness_count,
    }
}

fn word_report(w: &Lasso, spec: &Gr1Spec) -> WordReport {
    let vars = spec.vars();
    WordReport {
        stem: w.stem.iter().map(|&s| vars.format_symbol(s)).collect(),
        cycle: w.cycle.iter().map(|&s| vars.format_symbol(s)).collect(),
        word: w.display(vars).to_string(),
    }
}

/// Stable weakest-first insertion under the partial order. Incomparable
/// entries keep their input order; empty languages go last.
fn rank_order(results: &[SpecResult], eps: f64) -> Vec<usize> {
    let mut sorted: Vec<usize> = Vec::with_capacity(results.len());
    for i in (0..results.len()).filter(|&i| !results[i].empty) {
        let pos = sorted
            .iter()
            .position(|&j| {
                compare_weakness(&pair_of(&results[i]), &pair_of(&results[j]), eps)
                    == WeaknessOrder::StrictlyWeaker
            })
            .unwrap_or(sorted.len());
        sorted.insert(pos, i);
    }
    sorted.extend((0..results.len()).filter(|&i| results[i].empty));
    sorted
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_result_rows(out: &mut dyn Write, rows: &[(&str, &SpecResult)]) -> io::Result<()> {
    for (key, r) in rows {
        write!(out, "{key}  d1 {:.4}  d2 {:.4}", r.d1, r.d2)?;
        if r.empty {
            write!(out, "  (empty)")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn write_table(out: &mut dyn Write, body: &Body) -> io::Result<()> {
    match body {
        Body::Weakness { result: r } => {
            writeln!(out, "spec        {}", r.label)?;
            writeln!(out, "d1          {:.4}", r.d1)?;
            writeln!(out, "d2          {:.4}", r.d2)?;
            writeln!(out, "empty       {}", r.empty)?;
            writeln!(out, "fairness    {}", r.fairness_count)?;
            writeln!(
                out,
                "automaton   {} states, {} edges, {} SCCs",
                r.states, r.edges, r.sccs
            )?;
            if let Some(ms) = r.wall_ms {
                writeln!(out, "time        {ms:.3} ms")?;
            }
        }
        Body::Compare { a, b, order } => {
            writeln!(out, "A  {}", a.label)?;
            writeln!(out, "B  {}", b.label)?;
            write_result_rows(out, &[("A", a), ("B", b)])?;
            let verdict = match order {
                WeaknessOrder::StrictlyWeaker => "A is weaker than B",
                WeaknessOrder::StrictlyStronger => "B is weaker than A",
                WeaknessOrder::Equal => "A and B are equally weak",
                WeaknessOrder::Incomparable => "A and B are incomparable",
            };
            writeln!(out, "{verdict}")?;
        }
        Body::Implies {
            a,
            b,
            a_implies_b,
            b_implies_a,
            witness_a_not_b,
            witness_b_not_a,
            ..
        } => {
            writeln!(out, "A  {a}")?;
            writeln!(out, "B  {b}")?;
            writeln!(out, "A implies B: {}", yes_no(*a_implies_b))?;
            if let Some(w) = witness_a_not_b {
                writeln!(out, "  witness in A, not in B: {}", w.word)?;
            }
            writeln!(out, "B implies A: {}", yes_no(*b_implies_a))?;
            if let Some(w) = witness_b_not_a {
                writeln!(out, "  witness in B, not in A: {}", w.word)?;
            }
        }
        Body::Rank { base, ranking } => {
            writeln!(out, "base  {base}")?;
            let width = ranking
                .iter()
                .map(|e| e.result.label.len())
                .max()
                .unwrap_or(0);
            for e in ranking {
                let mark = if e.tied { "=" } else { " " };
                write!(
                    out,
                    "{:>3}{mark} {:<width$}  d1 {:.4}  d2 {:.4}",
                    e.rank, e.result.label, e.result.d1, e.result.d2
                )?;
                if e.result.empty {
                    write!(out, "  (empty)")?;
                }
                writeln!(out)?;
            }
        }
        Body::Stats {
            n_specs,
            n_pairs,
            pct_impl,
            pct_weak,
            ..
        } => {
            writeln!(out, "specs     {n_specs}")?;
            writeln!(out, "pairs     {n_pairs}")?;
            writeln!(out, "%impl     {pct_impl:.4}")?;
            writeln!(out, "%weak     {pct_weak:.4}")?;
        }
    }
    Ok(())
}

fn execute(command: Command, ctx: &mut Ctx<'_>) -> Result<(), CliError> {
    let settings = ctx.settings;
    match command {
        Command::Weakness { file, refine } => {
            let spec = load_refined(&file, &refine, &settings)?;
            let mut name = label(&file);
            for r in &refine {
                name.push_str(" + ");
                name.push_str(&label(r));
            }
            let result = ctx.measure(&spec, name)?;
            ctx.emit("weakness", Body::Weakness { result })
        }
        Command::Compare { a, b, base } => {
            let sa = load_over(&a, base.as_deref(), &settings)?;
            let sb = load_over(&b, base.as_deref(), &settings)?;
            sa.require_same_vars(&sb)?;
            let ra = ctx.measure(&sa, label(&a))?;
            let rb = ctx.measure(&sb, label(&b))?;
            let order = compare_weakness(&pair_of(&ra), &pair_of(&rb), settings.tolerance);
            ctx.emit(
                "compare",
                Body::Compare {
                    a: ra,
                    b: rb,
                    order,
                },
            )
        }
        Command::Implies {
            a,
            b,
            base,
            witness,
        } => {
            let sa = load_over(&a, base.as_deref(), &settings)?;
            let sb = load_over(&b, base.as_deref(), &settings)?;
            sa.require_same_vars(&sb)?;
            let ab = implies(&sa, &sb, ctx.side, &settings)?;
            let ba = implies(&sb, &sa, ctx.side, &settings)?;
            let keep = |w: Option<Lasso>, spec: &Gr1Spec| {
                w.filter(|_| witness).map(|w| word_report(&w, spec))
            };
            ctx.emit(
                "implies",
                Body::Implies {
                    a: label(&a),
                    b: label(&b),
                    a_implies_b: ab.holds,
                    b_implies_a: ba.holds,
                    order: StrictOrder::from_verdicts(ab.holds, ba.holds),
                    witness_a_not_b: keep(ab.witness, &sa),
                    witness_b_not_a: keep(ba.witness, &sb),
                },
            )
        }
        Command::Rank { base, refinements } => {
            let spec = load(&base, &settings)?;
            let mut results = Vec::with_capacity(refinements.len());
            for r in &refinements {
                let extra = load(r, &settings)?;
                let refined = spec.conjoin_spec(&extra).map_err(|source| CliError::Spec {
                    path: r.clone(),
                    source,
                })?;
                results.push(ctx.measure(&refined, label(r))?);
            }
            let order = rank_order(&results, settings.tolerance);
            let mut slots: Vec<Option<SpecResult>> = results.into_iter().map(Some).collect();
            let mut ranking: Vec<RankEntry> = Vec::with_capacity(order.len());
            for i in order {
                let result = slots[i].take().expect("each index ranked once");
                let tied = ranking.last().is_some_and(|prev| {
                    compare_weakness(
                        &pair_of(&prev.result),
                        &pair_of(&result),
                        settings.tolerance,
                    ) == WeaknessOrder::Equal
                });
                let rank = match ranking.last() {
                    Some(prev) if tied => prev.rank,
                    _ => ranking.len() + 1,
                };
                ranking.push(RankEntry { rank, tied, result });
            }
            ctx.emit(
                "rank",
                Body::Rank {
                    base: label(&base),
                    ranking,
                },
            )
        }
        Command::Stats { files, base } => {
            let specs: Vec<Gr1Spec> = files
                .iter()
                .map(|f| load_over(f, base.as_deref(), &settings))
                .collect::<Result<_, _>>()?;
            let st = discrimination_stats(&specs, ctx.side, &settings)?;
            ctx.emit(
                "stats",
                Body::Stats {
                    files: files.iter().map(|f| label(f)).collect(),
                    n_specs: st.n_specs,
                    n_pairs: st.n_pairs,
                    pct_impl: sig12(st.pct_impl),
                    pct_weak: sig12(st.pct_weak),
                },
            )
        }
        Command::Dot { file, refine } => {
            let spec = load_refined(&file, &refine, &settings)?;
            let a = spec_automaton(&spec, ctx.side, &settings)?;
            write!(ctx.out, "{}", a.to_dot(spec.vars()))?;
            Ok(())
        }
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return e.exit_code();
        }
    };
    let settings = Settings {
        max_vars: cli.opts.max_vars as usize,
        tolerance: cli.opts.tolerance,
        ..Settings::from_env()
    };
    let mut ctx = Ctx {
        side: cli.opts.side.into(),
        settings,
        format: cli.opts.format,
        timing: cli.opts.timing,
        out,
    };
    match execute(cli.command, &mut ctx) {
        Ok(()) => exit::OK,
        Err(e) => {
            let _ = writeln!(err, "gr1w: {e}");
            e.exit_code()
        }
    }
}
