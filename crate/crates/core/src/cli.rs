//! Command-line front end.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::bench::{self, BenchEntry};
use crate::cycres::{quick_cyclic_resultant_with, CycresError, QuickOptions, DEFAULT_MAX_TERMS};
use crate::grid::{self, GridError, GridOptions, GridSpec, MembershipRecord, DEFAULT_MAX_POINTS};
use crate::lopsided::{choose_level, effective_degree, LopsidedError};
use crate::poly::{max_variable_index, parse, LaurentPoly, PolyError};
use crate::semialg::{self, RasterBox, SemialgError};

pub const THREADS_ENV: &str = "AMOEBA_THREADS";

const OVERLAY_COLORS: [&str; 6] = ["blue", "darkgreen", "red", "orange", "purple", "black"];

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Cycres(#[from] CycresError),
    #[error(transparent)]
    Lopsided(#[from] LopsidedError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Semialg(#[from] SemialgError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "amoeba",
    version,
    about = "Lopsided amoeba approximation via cyclic resultants"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print cres(f; 2^k).
    Cres(CresArgs),
    /// Classify a grid of log-points by lopsidedness certificates.
    Amoeba(AmoebaArgs),
    /// Semi-algebraic description of the unlog amoeba, optionally rasterized.
    Semialg(SemialgArgs),
    /// Time the quick resultant against the Sylvester baseline.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
    Ppm,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Sizes,
    Runtimes,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    /// Polynomial in the `z1, z2, ...` grammar.
    #[arg(short = 'f', long = "poly", conflicts_with = "poly_file")]
    pub poly: Option<String>,
    /// File holding the polynomial.
    #[arg(long)]
    pub poly_file: Option<PathBuf>,
    /// Number of variables; defaults to the largest index used.
    #[arg(short = 'n', long)]
    pub nvars: Option<usize>,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; stdout when absent.
    #[arg(short = 'o', long = "out")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CresArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    #[arg(short = 'k', long, conflicts_with = "eps")]
    pub level: Option<u32>,
    /// Target accuracy; the level is chosen to guarantee it.
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
    pub max_terms: u128,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct AmoebaArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    #[arg(long, conflicts_with = "eps")]
    pub kmax: Option<u32>,
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long = "box", num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
    pub bbox: Option<Vec<String>>,
    #[arg(long, default_value = "1/20")]
    pub step: String,
    #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
    pub max_terms: u128,
    #[arg(long, default_value_t = DEFAULT_MAX_POINTS)]
    pub max_grid: u128,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct SemialgArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    /// One or more levels, comma separated.
    #[arg(short = 'k', long, value_delimiter = ',', conflicts_with = "eps")]
    pub level: Vec<u32>,
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long = "box", num_args = 2, value_names = ["LO", "HI"])]
    pub bbox: Option<Vec<f64>>,
    #[arg(long, default_value_t = 512)]
    pub res: usize,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Polynomial to time instead of a built-in suite.
    #[command(flatten)]
    pub poly: PolyArgs,
    #[arg(long, value_enum, default_value_t = Suite::Runtimes)]
    pub suite: Suite,
    #[arg(short = 'k', long, value_delimiter = ',')]
    pub level: Vec<u32>,
    #[arg(long, default_value_t = 1)]
    pub runs: u32,
    #[arg(long)]
    pub no_baseline: bool,
    /// Baseline time budget per run, in seconds.
    #[arg(long, default_value_t = 300.0)]
    pub timeout: f64,
    #[command(flatten)]
    pub out: OutArgs,
}

/// Parses `p/q`, an integer, or a finite decimal such as `-0.125` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Usage(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if s.contains('/') {
        return BigRational::from_str(s).map_err(|_| bad());
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let numer = BigInt::from_str(&digits).map_err(|_| bad())?;
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let q = BigRational::new(numer, denom);
    Ok(if neg { -q } else { q })
}

fn load_poly(args: &PolyArgs) -> Result<LaurentPoly, CliError> {
    let text = match (&args.poly, &args.poly_file) {
        (Some(p), None) => p.clone(),
        (None, Some(path)) => fs::read_to_string(path)?,
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --poly or --poly-file".into(),
            ))
        }
    };
    let text = text.trim();
    let n = args
        .nvars
        .unwrap_or_else(|| max_variable_index(text).max(1));
    Ok(parse(text, n)?)
}

fn level_for_eps(f: &LaurentPoly, eps: &str) -> Result<u32, CliError> {
    let eps = parse_rational(eps)?;
    Ok(choose_level(f.nvars() as u32, effective_degree(f), &eps)?)
}

fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(|n| Some(n.max(1)))
            .map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a positive integer"))),
        Err(_) => Ok(None),
    }
}

fn run_in_pool<T: Send>(job: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match threads_from_env()? {
        None => Ok(job()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(pool.install(job))
        }
    }
}

type Sink = Box<dyn Write + Send>;

fn open_sink(out: &Option<PathBuf>) -> Result<Sink, CliError> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(fs::File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

/// Runs a parsed command, writing to `--out` or stdout. Returns the exit code.
pub fn run(cli: Cli) -> Result<i32, CliError> {
    let target = match &cli.command {
        Command::Cres(a) => &a.out.out,
        Command::Amoeba(a) => &a.out.out,
        Command::Semialg(a) => &a.out.out,
        Command::Bench(a) => &a.out.out,
    }
    .clone();
    let mut sink = open_sink(&target)?;
    let code = run_to(cli, &mut sink)?;
    sink.flush()?;
    Ok(code)
}

/// Like [`run`], but always writes to `out`.
pub fn run_to(cli: Cli, out: &mut Sink) -> Result<i32, CliError> {
    match cli.command {
        Command::Cres(a) => cmd_cres(&a, out),
        Command::Amoeba(a) => cmd_amoeba(&a, out),
        Command::Semialg(a) => cmd_semialg(&a, out),
        Command::Bench(a) => cmd_bench(&a, out),
    }
}

pub fn cmd_cres(a: &CresArgs, out: &mut Sink) -> Result<i32, CliError> {
    let f = load_poly(&a.poly)?;
    let k = match (&a.eps, a.level) {
        (Some(eps), _) => level_for_eps(&f, eps)?,
        (None, Some(k)) => k,
        (None, None) => return Err(CliError::Usage("cres needs --level or --eps".into())),
    };
    let opts = QuickOptions {
        max_terms: a.max_terms,
        var_order: None,
    };
    let g = quick_cyclic_resultant_with(&f, k, &opts)?;
    match a.out.format.unwrap_or(Format::Text) {
        Format::Text => writeln!(out, "{g}")?,
        Format::Json => {
            let v = serde_json::json!({
                "level": k,
                "terms": g.num_terms(),
                "degree": g.total_degree(),
                "polynomial": g.to_string(),
            });
            writeln!(out, "{v}")?;
        }
        other => {
            return Err(CliError::Usage(format!(
                "cres does not support {other:?} output"
            )))
        }
    }
    Ok(0)
}

pub fn cmd_amoeba(a: &AmoebaArgs, out: &mut Sink) -> Result<i32, CliError> {
    let f = load_poly(&a.poly)?;
    let kmax = match &a.eps {
        Some(eps) => level_for_eps(&f, eps)?,
        None => a.kmax.unwrap_or(4),
    };
    let (lo, hi) = match &a.bbox {
        Some(b) => (parse_rational(&b[0])?, parse_rational(&b[1])?),
        None => (
            BigRational::from_integer((-2).into()),
            BigRational::from_integer(2.into()),
        ),
    };
    let spec = GridSpec::new(lo, hi, parse_rational(&a.step)?, f.nvars())?;
    let opts = GridOptions {
        max_terms: a.max_terms,
        max_points: a.max_grid,
        threads: threads_from_env()?,
    };
    let format = a.out.format.unwrap_or(Format::Csv);
    let mut failures = 0usize;
    match format {
        Format::Csv | Format::Json => {
            if format == Format::Csv {
                writeln!(out, "{}", grid::csv_header(f.nvars()))?;
            }
            grid::approximate_amoeba_streaming(&f, &spec, kmax, &opts, |r: MembershipRecord| {
                failures += usize::from(r.diagnostic.is_some());
                let line = if format == Format::Csv {
                    grid::csv_line(&r)
                } else {
                    grid::json_line(&r)
                };
                writeln!(out, "{line}").map_err(GridError::Io)
            })?;
        }
        Format::Svg => {
            if f.nvars() != 2 {
                return Err(CliError::Usage(
                    "svg scatter needs a bivariate polynomial".into(),
                ));
            }
            let records = grid::approximate_amoeba(&f, &spec, kmax, &opts)?;
            failures = records.iter().filter(|r| r.diagnostic.is_some()).count();
            out.write_all(grid::scatter_svg(&records, &spec, 800).as_bytes())?;
        }
        other => {
            return Err(CliError::Usage(format!(
                "amoeba does not support {other:?} output"
            )))
        }
    }
    Ok(i32::from(failures > 0))
}

pub fn cmd_semialg(a: &SemialgArgs, out: &mut Sink) -> Result<i32, CliError> {
    let f = load_poly(&a.poly)?;
    let levels = match &a.eps {
        Some(eps) => vec![level_for_eps(&f, eps)?],
        None if a.level.is_empty() => vec![1],
        None => a.level.clone(),
    };
    let systems = levels
        .iter()
        .map(|&k| semialg::semialg_description(&f, k, None))
        .collect::<Result<Vec<_>, _>>()?;
    let bbox = match &a.bbox {
        Some(b) => RasterBox::square(b[0], b[1]),
        None => RasterBox::square(0.05, 3.0),
    };
    match a.out.format.unwrap_or(Format::Json) {
        Format::Json => {
            let v = if systems.len() == 1 {
                systems[0].to_json()
            } else {
                serde_json::Value::Array(systems.iter().map(|s| s.to_json()).collect())
            };
            writeln!(out, "{v}")?;
        }
        Format::Text => {
            for s in &systems {
                writeln!(out, "level {}:", s.level)?;
                write!(out, "{}", s.pretty())?;
            }
        }
        Format::Svg => {
            let rasters = run_in_pool(|| {
                systems
                    .iter()
                    .map(|s| semialg::rasterize(s, bbox, a.res))
                    .collect::<Result<Vec<_>, _>>()
            })??;
            let layers: Vec<_> = rasters
                .iter()
                .zip(OVERLAY_COLORS.iter().cycle())
                .map(|(r, c)| (r, *c))
                .collect();
            out.write_all(semialg::overlay_svg(&layers, 800).as_bytes())?;
        }
        Format::Ppm => {
            if systems.len() != 1 {
                return Err(CliError::Usage("ppm output takes a single level".into()));
            }
            let raster = run_in_pool(|| semialg::rasterize(&systems[0], bbox, a.res))??;
            out.write_all(&raster.to_ppm())?;
        }
        Format::Csv => {
            return Err(CliError::Usage(
                "semialg does not support csv output".into(),
            ))
        }
    }
    Ok(0)
}

pub fn cmd_bench(a: &BenchArgs, out: &mut Sink) -> Result<i32, CliError> {
    let suite = if a.poly.poly.is_some() || a.poly.poly_file.is_some() {
        let f = load_poly(&a.poly)?;
        let levels = if a.level.is_empty() {
            vec![1, 2, 3]
        } else {
            a.level.clone()
        };
        levels
            .into_iter()
            .map(|k| BenchEntry::new("input", f.clone(), k, a.runs))
            .collect()
    } else {
        let mut s = match a.suite {
            Suite::Sizes => bench::size_suite(),
            Suite::Runtimes => bench::runtime_suite(),
        };
        if !a.level.is_empty() {
            s.retain(|e| a.level.contains(&e.level));
        }
        s
    };
    if !(a.timeout.is_finite() && a.timeout >= 0.0) {
        return Err(CliError::Usage(
            "--timeout must be a nonnegative number of seconds".into(),
        ));
    }
    let results = bench::run_bench(&suite, !a.no_baseline, Duration::from_secs_f64(a.timeout));
    match a.out.format.unwrap_or(Format::Text) {
        Format::Text => out.write_all(bench::to_table(&results).as_bytes())?,
        Format::Csv => out.write_all(bench::to_csv(&results).as_bytes())?,
        other => {
            return Err(CliError::Usage(format!(
                "bench does not support {other:?} output"
            )))
        }
    }
    let failed = results
        .iter()
        .any(|r| r.error.is_some() || r.agrees == Some(false));
    Ok(i32::from(failed))
}

/// Parses the process arguments and runs; errors go to stderr with exit code 2.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
