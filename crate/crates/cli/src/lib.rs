//! Command implementations behind the `ribbon` binary.
//!
//! Every command returns its report as text; [`run`] turns errors into the
//! exit codes 1 (a verification failed) and 2 (bad input).

pub mod suites;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use ribbon_core::cobordism::verify::{compare, Verdict};
use ribbon_core::cobordism::{evaluate_movie, Mark, Movie};
use ribbon_core::frobenius::{parse_selector, AnyTheory};
use ribbon_core::homology::induced_map;
use ribbon_core::report::{BoundReport, Entry};
use ribbon_core::{knots, parse_pd, with_theory, ChainMap, Coefficient, Homology, HomologySummary, LinkDiagram, Theory};

use suites::{run_suite, Suite, SuiteConfig};

/// Environment variable naming a knot table that replaces the bundled one.
pub const TABLE_ENV: &str = "RIBBON_KNOT_TABLE";

#[derive(Parser, Debug)]
#[command(name = "ribbon", version, about = "Bar-Natan and alpha-homology, torsion orders and cobordism maps of knots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub output: Format,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// More detail on stderr.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    /// Knot table replacing the bundled one (`name<TAB>pd` per line).
    #[arg(long, env = TABLE_ENV, global = true)]
    pub table: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Homology summaries and torsion orders.
    Homology(HomologyArgs),
    /// Torsion orders of knots and the ribbon-distance bounds they give.
    Bound(BoundArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Evaluate a movie script.
    Movie(MovieArgs),
}

#[derive(Args, Debug)]
pub struct KnotSource {
    /// A PD code.
    #[arg(long)]
    pub pd: Vec<String>,
    /// A knot from the table, or `unknot`.
    #[arg(long)]
    pub knot: Vec<String>,
    /// A file of PD codes, one per line, optionally `name<TAB>pd`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Every table knot with at most this many crossings.
    #[arg(long)]
    pub max_crossings: Option<usize>,
}

#[derive(Args, Debug)]
pub struct HomologyArgs {
    /// Theory selector: bn, alpha, kh-f2, alpha@0,t/f2, alpha@1,-1/q, ...
    #[arg(long, default_value = "bn")]
    pub theory: String,
    #[command(flatten)]
    pub source: KnotSource,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(long, default_value = "bn")]
    pub theory: String,
    #[command(flatten)]
    pub source: KnotSource,
    /// Saddle count of a ribbon movie between the first two knots.
    #[arg(long)]
    pub saddles: Option<u32>,
    /// A movie script between the first two knots; its saddles are counted.
    #[arg(long)]
    pub movie: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// One of frobenius, neckcut, dot-crossing, saddle-split, symmetry,
    /// ribbon, movie-star.
    pub suite: String,
    /// Run only this theory instead of the suite's defaults.
    #[arg(long)]
    pub theory: Option<String>,
    #[arg(long)]
    pub max_crossings: Option<usize>,
}

#[derive(Args, Debug)]
pub struct MovieArgs {
    /// The movie script, or the name of a bundled movie.
    #[arg(long)]
    pub input: String,
    #[arg(long, default_value = "bn")]
    pub theory: String,
    /// Evaluate the movie followed by its reverse.
    #[arg(long)]
    pub compose_reverse: bool,
    /// Compare the map with `id`, `h^d` (the variable) or `star^d`.
    #[arg(long)]
    pub compare: Option<String>,
}

/// What went wrong, with its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit code 2.
    Input(String),
    /// A verification failed: exit code 1, with the full report.
    Verification(String),
    /// The input was understood but a result is refused: exit code 2, with
    /// the report and the reason.
    Refused { report: String, reason: String },
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Input(_) | Failure::Refused { .. } => 2,
            Failure::Verification(_) => 1,
        }
    }
}

impl From<ribbon_core::Error> for Failure {
    fn from(e: ribbon_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    if let Some(j) = cli.jobs {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    let start = std::time::Instant::now();
    let table = cli.table.as_deref();
    let out = match &cli.command {
        Command::Homology(a) => cmd_homology(a, table, cli.output),
        Command::Bound(a) => cmd_bound(a, table, cli.output),
        Command::Verify(a) => cmd_verify(a, table, cli.output),
        Command::Movie(a) => cmd_movie(a, cli.output),
    };
    if cli.verbose > 0 {
        eprintln!("{} thread(s), {:.2?}", rayon::current_num_threads(), start.elapsed());
    }
    out
}

/// The knot table: the given file or the bundled one.
pub fn load_table(path: Option<&Path>) -> Result<Vec<(String, LinkDiagram)>, Failure> {
    match path {
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Ok(knots::parse_table(&text)?)
        }
        None => Ok(knots::table().into_iter().map(|k| (k.name.to_string(), k.diagram().expect("bundled"))).collect()),
    }
}

fn crossings_in_name(name: &str) -> Option<usize> {
    name.split('_').next()?.parse().ok()
}

fn resolve_knots(src: &KnotSource, table: Option<&Path>) -> Result<Vec<(String, LinkDiagram)>, Failure> {
    let mut out = Vec::new();
    for (i, pd) in src.pd.iter().enumerate() {
        out.push((format!("pd{}", i + 1), parse_pd(pd)?));
    }
    let needs_table = !src.knot.is_empty() || src.max_crossings.is_some();
    let table = if needs_table { load_table(table)? } else { Vec::new() };
    for name in &src.knot {
        let d = if matches!(name.as_str(), "unknot" | "0_1") {
            LinkDiagram::unknot()
        } else {
            table
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, d)| d.clone())
                .ok_or_else(|| Failure::Input(format!("unknown knot {name:?}")))?
        };
        out.push((name.clone(), d));
    }
    if let Some(path) = &src.input {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, pd) = match line.split_once('\t') {
                Some((a, b)) => (a.trim().to_string(), b),
                None => (format!("{}:{}", path.display(), n + 1), line),
            };
            let d = parse_pd(pd).map_err(|e| Failure::Input(format!("{}:{}: {e}", path.display(), n + 1)))?;
            out.push((name, d));
        }
    }
    if let Some(max) = src.max_crossings {
        out.extend(table.into_iter().filter(|(n, d)| crossings_in_name(n).unwrap_or(d.crossing_count()) <= max));
    }
    if out.is_empty() {
        return Err(Failure::Input("no input: give --pd, --knot, --input or --max-crossings".into()));
    }
    Ok(out)
}

fn theory(selector: &str) -> Result<AnyTheory, Failure> {
    Ok(parse_selector(selector)?)
}

fn summaries<C: Coefficient>(t: &Theory<C>, knots: &[(String, LinkDiagram)]) -> Result<Vec<Entry>, Failure> {
    let results: Vec<Result<Entry, ribbon_core::Error>> = knots
        .par_iter()
        .map(|(name, d)| {
            let c = Arc::new(ribbon_core::complex::build_complex(d, t)?);
            let summary = Homology::compute(c)?.summary(name);
            Ok(Entry { name: name.clone(), components: d.component_count(), summary })
        })
        .collect();
    results.into_iter().map(|r| r.map_err(Failure::from)).collect()
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

/// A homology summary as a table.
pub fn summary_table(s: &HomologySummary) -> String {
    let mut out = format!("{} [{}]\n", s.knot, s.theory);
    let q = |q: Option<i32>| q.map_or("-".to_string(), |q| q.to_string());
    for f in &s.free {
        let _ = writeln!(out, "  free     r={:<3} q={:<4} rank {}", f.r, q(f.q), f.rank);
    }
    for t in &s.torsion {
        let _ = writeln!(out, "  torsion  r={:<3} q={:<4} order {}", t.r, q(t.q), t.order);
    }
    if let Some(mu) = s.mu {
        let _ = writeln!(out, "  mu = {mu}");
    }
    if let Some(nu) = s.nu_phi {
        let _ = writeln!(out, "  nu_phi = {nu}");
    }
    if let Some(n) = &s.note {
        let _ = writeln!(out, "  note: {n}");
    }
    out
}

fn cmd_homology(a: &HomologyArgs, table: Option<&Path>, format: Format) -> Outcome {
    let knots = resolve_knots(&a.source, table)?;
    let t = theory(&a.theory)?;
    let entries = with_theory!(&t, t => summaries(t, &knots))?;
    let list: Vec<&HomologySummary> = entries.iter().map(|e| &e.summary).collect();
    Ok(match format {
        Format::Json => json(&list),
        Format::Table => list.iter().map(|s| summary_table(s)).collect(),
    })
}

fn cmd_bound(a: &BoundArgs, table: Option<&Path>, format: Format) -> Outcome {
    let knots = resolve_knots(&a.source, table)?;
    let t = theory(&a.theory)?;
    let entries = with_theory!(&t, t => summaries(t, &knots))?;
    let mut report = BoundReport::new(t.name(), entries);
    let mut saddles = a.saddles;
    if let Some(path) = &a.movie {
        let movie = read_movie(&path.to_string_lossy())?;
        saddles = Some(movie.saddle_count() as u32);
    }
    if let Some(d) = saddles {
        report = report.with_movie(d);
    }
    let text = match format {
        Format::Json => json(&report.view()),
        Format::Table => report.render_table(),
    };
    if report.entries.iter().any(|e| !e.is_knot()) {
        return Err(Failure::Refused { report: text, reason: "bounds are stated for knots only".into() });
    }
    if report.movie_consistent() == Some(false) {
        return Err(Failure::Verification(text));
    }
    Ok(text)
}

fn cmd_verify(a: &VerifyArgs, table: Option<&Path>, format: Format) -> Outcome {
    let suite: Suite = a.suite.parse().map_err(Failure::Input)?;
    let mut config = SuiteConfig::new(suite, a.theory.as_deref(), a.max_crossings);
    if table.is_some() {
        let max = a.max_crossings.unwrap_or(suite.default_max_crossings());
        let table = load_table(table)?;
        config = config.with_knots(
            table.into_iter().filter(|(n, d)| crossings_in_name(n).unwrap_or(d.crossing_count()) <= max).collect(),
        );
    }
    let checks = run_suite(suite, &config)?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    let text = match format {
        Format::Json => json(&checks),
        Format::Table => {
            let mut s: String = checks.iter().map(|c| format!("{c}\n")).collect();
            let _ = writeln!(s, "{suite}: {} passed, {failed} failed", checks.len() - failed);
            s
        }
    };
    if failed > 0 {
        Err(Failure::Verification(text))
    } else {
        Ok(text)
    }
}

fn read_movie(input: &str) -> Result<Movie, Failure> {
    if ribbon_core::cobordism::bundled_movies().iter().any(|(n, _)| *n == input) {
        return Ok(ribbon_core::cobordism::bundled_movie(input)?);
    }
    let text = std::fs::read_to_string(input).map_err(|e| Failure::Input(format!("{input}: {e}")))?;
    Movie::parse(&text).map_err(|e| Failure::Input(format!("{input}: {e}")))
}

/// A `--compare` target: the identity scaled by `s^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Scale {
    Variable(u32),
    Star(u32),
}

fn parse_compare(s: &str) -> Result<Scale, Failure> {
    let bad = || Failure::Input(format!("--compare: expected id, h^d or star^d, found {s:?}"));
    if s == "id" {
        return Ok(Scale::Variable(0));
    }
    let (base, exp) = s.split_once('^').unwrap_or((s, "1"));
    let d: u32 = exp.parse().map_err(|_| bad())?;
    match base {
        "h" | "t" => Ok(Scale::Variable(d)),
        "star" | "X*" | "x*" => Ok(Scale::Star(d)),
        _ => Err(bad()),
    }
}

#[derive(Serialize)]
struct MovieReport {
    theory: String,
    frames: Vec<String>,
    r_shift: i32,
    q_shift: i32,
    /// Nonzero entries of the chain map per source degree.
    chain_map_entries: Vec<(i32, usize)>,
    /// Induced map per source degree, rows indexed by target generators.
    homology_map: Vec<(i32, Vec<Vec<String>>)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    comparison: Option<Comparison>,
}

#[derive(Serialize)]
struct Comparison {
    against: String,
    verdict: Verdict,
    passed: bool,
}

fn cmd_movie(a: &MovieArgs, format: Format) -> Outcome {
    let mut movie = read_movie(&a.input)?;
    if a.compose_reverse {
        movie = movie.then(&movie.reverse()?)?;
    }
    let compare_to = a.compare.as_deref().map(parse_compare).transpose()?;
    let t = theory(&a.theory)?;
    let report = with_theory!(&t, t => movie_report(t, &movie, compare_to, a.compare.as_deref()))?;
    let failed = report.comparison.as_ref().is_some_and(|c| !c.passed);
    let text = match format {
        Format::Json => json(&report),
        Format::Table => {
            let mut s = format!("theory: {}\n", report.theory);
            for (i, f) in report.frames.iter().enumerate() {
                let _ = writeln!(s, "frame {i}: {}", if f.is_empty() { "(empty)" } else { f });
            }
            let _ = writeln!(s, "chain map: r shift {}, q shift {}", report.r_shift, report.q_shift);
            for (r, n) in &report.chain_map_entries {
                let _ = writeln!(s, "  degree {r}: {n} nonzero entries");
            }
            s.push_str("induced map on homology:\n");
            for (r, block) in &report.homology_map {
                let _ = writeln!(s, "  degree {r}:");
                for row in block {
                    let _ = writeln!(s, "    [{}]", row.join(", "));
                }
            }
            if let Some(c) = &report.comparison {
                let _ = writeln!(s, "compare with {}: {}", c.against, c.verdict);
            }
            s
        }
    };
    if failed {
        Err(Failure::Verification(text))
    } else {
        Ok(text)
    }
}

fn movie_report<C: Coefficient>(
    t: &Theory<C>,
    movie: &Movie,
    compare_to: Option<Scale>,
    label: Option<&str>,
) -> Result<MovieReport, Failure> {
    let f = evaluate_movie(movie, t)?;
    let hs = Homology::compute(f.source.clone())?;
    let ht = Homology::compute(f.target.clone())?;
    let induced = induced_map(&f, &hs, &ht)?;
    let homology_map = induced
        .blocks
        .iter()
        .filter(|(_, b)| !b.is_empty() && !b[0].is_empty())
        .map(|(r, b)| {
            (*r, b.iter().map(|row| row.iter().map(|p| t.base().display(p).to_string()).collect()).collect())
        })
        .collect();
    let chain_map_entries = f.degrees().map(|r| (r, f.at(r).nnz())).filter(|(_, n)| *n > 0).collect();
    let comparison = match compare_to {
        None => None,
        Some(scale) => {
            if !f.source.same_shape(&f.target) {
                return Err(Failure::Input("--compare needs a movie from a diagram to itself".into()));
            }
            let ctx = ribbon_core::cobordism::verify::Context {
                complex: f.source.clone(),
                homology: hs.clone(),
            };
            let (step, d) = match scale {
                Scale::Variable(d) => (ctx.scalar(t.quadratic().0), d),
                Scale::Star(d) => {
                    let edge = movie.start.edges().first().copied().ok_or_else(|| Failure::Input("empty diagram".into()))?;
                    (ctx.decoration(Mark::Star, edge)?, d)
                }
            };
            let mut rhs = ChainMap::identity(f.source.clone());
            for _ in 0..d {
                rhs = step.compose(&rhs)?;
            }
            let verdict = compare(&f, &rhs, &hs, &hs)?;
            let slack = t.roots().is_some();
            Some(Comparison {
                against: label.unwrap_or("id").to_string(),
                verdict,
                passed: verdict.passed(slack),
            })
        }
    };
    Ok(MovieReport {
        theory: t.name().to_string(),
        frames: movie.frames()?.iter().map(LinkDiagram::to_pd_string).collect(),
        r_shift: f.r_shift,
        q_shift: f.q_shift,
        chain_map_entries,
        homology_map,
        comparison,
    })
}
