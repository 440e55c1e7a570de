//! Command line front end. `run` takes the argument list and output streams
//! and returns the process exit code, so the binary is a one-liner.
//!
//! Configuration comes from a flat `key = value` file (`--config`) and from
//! flags; flags win. Recognised keys: `q`, `modulus`, `matrix`, `row`
//! (repeatable, one matrix row each), `degrees`, `md_budget`, `format`,
//! `threads`, `verify`.

use std::fmt::Write as _;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::codes::{
    check_table, torus_table, CodeAnalysis, CodeParameters, MinDistance, PipelineOptions, DEFAULT_MD_BUDGET,
};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::groebner::GroebnerBasis;
use crate::ideals::{enumerate_points_with, vanishing_ideals, EnumerationOptions, ExponentMatrix};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdealKind {
    /// The affine vanishing ideal `I(X*)`.
    Xstar,
    /// Its homogenization `I(Y)`.
    Y,
}

#[derive(Debug, Parser)]
#[command(
    name = "toric-codes",
    version,
    about = "Parameters of parameterized affine codes over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Length, dimension and minimum distance for a range of degrees.
    Params(ConfigArgs),
    /// Print the reduced Gröbner basis of I(X*) or I(Y).
    Ideal {
        #[arg(value_enum)]
        which: IdealKind,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Closed-form table for the affine torus (F_q^*)^s.
    Torus(TorusArgs),
    /// Run the pipeline with every cross-check enabled.
    Verify(ConfigArgs),
}

#[derive(Debug, Args)]
struct ConfigArgs {
    /// Flat key = value configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Field size q = p^k.
    #[arg(long)]
    q: Option<u64>,
    /// Monic irreducible modulus for q = p^k, k > 1: coefficients separated by commas, constant term first.
    #[arg(long)]
    modulus: Option<String>,
    /// Exponent matrix: rows separated by ';', entries by ','. Row i holds the exponents of y_1..y_n in t_i.
    #[arg(long)]
    matrix: Option<String>,
    /// Degrees as `a..b` (inclusive) or a single integer.
    #[arg(long)]
    degrees: Option<String>,
    /// Exhaustive minimum-distance search only when q^k does not exceed this.
    #[arg(long)]
    md_budget: Option<u128>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    verify: bool,
}

#[derive(Debug, Args)]
struct TorusArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    s: u32,
    #[arg(long)]
    degrees: String,
    /// Also run the Gröbner pipeline on the identity matrix and compare.
    #[arg(long)]
    cross_check: bool,
    #[arg(long)]
    md_budget: Option<u128>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

/// Fully resolved inputs for `params`, `ideal` and `verify`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub q: u64,
    pub modulus: Option<Vec<u32>>,
    pub matrix: ExponentMatrix,
    /// `None` means `1..=r`, with `r` the degree where the Hilbert function
    /// reaches the number of points.
    pub degrees: Option<RangeInclusive<u32>>,
    pub md_budget: u128,
    pub format: OutputFormat,
    pub threads: usize,
    pub verify: bool,
}

/// Settings read from a configuration file, all optional.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfigFile {
    pub q: Option<u64>,
    pub modulus: Option<Vec<u32>>,
    pub matrix: Option<Vec<Vec<u32>>>,
    pub degrees: Option<RangeInclusive<u32>>,
    pub md_budget: Option<u128>,
    pub format: Option<OutputFormat>,
    pub threads: Option<usize>,
    pub verify: Option<bool>,
}

impl ConfigFile {
    /// Parses `key = value` lines; `#` starts a comment. `row` lines
    /// accumulate matrix rows and may not be mixed with `matrix`.
    pub fn parse(text: &str) -> Result<ConfigFile> {
        let mut cfg = ConfigFile::default();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let loc = |key: &str| format!("line {}, key '{key}'", i + 1);
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::parse(format!("line {}", i + 1), "expected 'key = value'"));
            };
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            let wrap = |e: Error| match e {
                Error::Parse { message, .. } => Error::parse(loc(&key), message),
                other => Error::parse(loc(&key), other.to_string()),
            };
            match key.as_str() {
                "q" => cfg.q = Some(parse_int(value).map_err(wrap)?),
                "modulus" => cfg.modulus = Some(parse_list(value).map_err(wrap)?),
                "matrix" => cfg.matrix = Some(parse_matrix(value).map_err(wrap)?),
                "row" => rows.push(parse_list(value).map_err(wrap)?),
                "degrees" => cfg.degrees = Some(parse_degrees(value).map_err(wrap)?),
                "md_budget" => cfg.md_budget = Some(parse_int(value).map_err(wrap)?),
                "format" => {
                    cfg.format = Some(OutputFormat::from_str(value, true).map_err(|_| {
                        Error::parse(
                            loc(&key),
                            format!("unknown format '{value}', expected table, csv or json"),
                        )
                    })?)
                }
                "threads" => cfg.threads = Some(parse_int(value).map_err(wrap)?),
                "verify" => {
                    cfg.verify = Some(match value {
                        "true" | "yes" | "1" => true,
                        "false" | "no" | "0" => false,
                        _ => {
                            return Err(Error::parse(
                                loc(&key),
                                format!("expected true or false, got '{value}'"),
                            ))
                        }
                    })
                }
                _ => return Err(Error::parse(loc(&key), "unknown key")),
            }
        }
        if !rows.is_empty() {
            if cfg.matrix.is_some() {
                return Err(Error::parse("config", "both 'matrix' and 'row' given"));
            }
            cfg.matrix = Some(rows);
        }
        Ok(cfg)
    }
}

fn parse_int<T: std::str::FromStr>(text: &str) -> Result<T> {
    text.trim().parse().map_err(|_| {
        Error::parse(
            "value",
            format!("expected a non-negative integer, got '{}'", text.trim()),
        )
    })
}

fn parse_list(text: &str) -> Result<Vec<u32>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(parse_int)
        .collect()
}

/// `"1,1,0;0,1,1"`.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<u32>>> {
    text.split(';').map(parse_list).collect()
}

/// `"a..b"`, `"a..=b"` or `"a"`. A reversed range is empty.
pub fn parse_degrees(text: &str) -> Result<RangeInclusive<u32>> {
    let text = text.trim();
    match text.split_once("..") {
        Some((a, b)) => Ok(parse_int(a)?..=parse_int(b.trim_start_matches('='))?),
        None => {
            let d = parse_int(text)?;
            Ok(d..=d)
        }
    }
}

impl RunConfig {
    fn resolve(args: &ConfigArgs) -> Result<RunConfig> {
        let file = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
                ConfigFile::parse(&text)?
            }
            None => ConfigFile::default(),
        };
        let q = args
            .q
            .or(file.q)
            .ok_or_else(|| Error::parse("--q", "field size is required"))?;
        let modulus = match &args.modulus {
            Some(m) => Some(parse_list(m).map_err(|e| relabel(e, "--modulus"))?),
            None => file.modulus,
        };
        let rows = match &args.matrix {
            Some(m) => parse_matrix(m).map_err(|e| relabel(e, "--matrix"))?,
            None => file
                .matrix
                .ok_or_else(|| Error::parse("--matrix", "exponent matrix is required"))?,
        };
        let matrix = ExponentMatrix::new(rows)?;
        let degrees = match &args.degrees {
            Some(d) => Some(parse_degrees(d).map_err(|e| relabel(e, "--degrees"))?),
            None => file.degrees,
        };
        if degrees.as_ref().is_some_and(|d| d.is_empty()) {
            return Err(Error::domain("degree range is empty"));
        }
        let threads = args.threads.or(file.threads).unwrap_or(1);
        if threads == 0 {
            return Err(Error::domain("threads must be at least 1"));
        }
        Ok(RunConfig {
            q,
            modulus,
            matrix,
            degrees,
            md_budget: args.md_budget.or(file.md_budget).unwrap_or(DEFAULT_MD_BUDGET),
            format: args.format.or(file.format).unwrap_or_default(),
            threads,
            verify: args.verify || file.verify.unwrap_or(false),
        })
    }

    pub fn field(&self) -> Result<Field> {
        Field::new(self.q, self.modulus.as_deref())
    }

    pub fn pipeline_options(&self) -> PipelineOptions {
        PipelineOptions {
            md_budget: self.md_budget,
            threads: self.threads,
            verify: self.verify,
            ..PipelineOptions::default()
        }
    }

    pub fn analysis(&self) -> Result<CodeAnalysis> {
        let field = self.field()?;
        let set = enumerate_points_with(
            &self.matrix,
            &field,
            EnumerationOptions {
                threads: self.threads,
                ..EnumerationOptions::default()
            },
        )?;
        CodeAnalysis::new(set, self.pipeline_options())
    }
}

fn relabel(e: Error, location: &str) -> Error {
    match e {
        Error::Parse { message, .. } => Error::parse(location, message),
        other => other,
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the exit code: 0 ok, 1 usage or domain error, 2 resource limit,
/// 3 internal inconsistency.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Params(args) => RunConfig::resolve(&args).and_then(|cfg| cmd_params(&cfg)),
        Command::Ideal { which, config } => RunConfig::resolve(&config).and_then(|cfg| cmd_ideal(&cfg, which)),
        Command::Torus(args) => cmd_torus(&args, err),
        Command::Verify(args) => RunConfig::resolve(&args).and_then(|mut cfg| {
            cfg.verify = true;
            cmd_verify(&cfg)
        }),
    };
    match result {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// The parameter table for the configured degrees, rendered.
pub fn cmd_params(cfg: &RunConfig) -> Result<String> {
    let analysis = cfg.analysis()?;
    let table = analysis.table(degrees_or_default(cfg, &analysis))?;
    Ok(render_table(&table, cfg.format))
}

/// The reduced Gröbner basis of `I(X*)` or `I(Y)`, one generator per line.
pub fn cmd_ideal(cfg: &RunConfig, which: IdealKind) -> Result<String> {
    let field = cfg.field()?;
    let set = enumerate_points_with(
        &cfg.matrix,
        &field,
        EnumerationOptions {
            threads: cfg.threads,
            ..EnumerationOptions::default()
        },
    )?;
    let ideals = vanishing_ideals(&set, Default::default())?;
    if cfg.verify {
        CodeAnalysis::new(set, cfg.pipeline_options())?;
    }
    let gb = match which {
        IdealKind::Xstar => &ideals.affine,
        IdealKind::Y => &ideals.projective,
    };
    Ok(render_basis(gb, cfg.format))
}

/// Runs every cross-check and reports them; any failure is an error.
pub fn cmd_verify(cfg: &RunConfig) -> Result<String> {
    let analysis = cfg.analysis()?;
    let degrees = degrees_or_default(cfg, &analysis);
    let table = analysis.table(degrees.clone())?;
    check_table(&table)?;
    let set = analysis.set();
    let mut report = String::new();
    let _ = writeln!(report, "points: {}", set.len());
    let _ = writeln!(
        report,
        "I(X*): {} generators, Buchberger criterion ok, binomial, vanishes on X*",
        analysis.ideals().affine.len()
    );
    let _ = writeln!(
        report,
        "I(Y): {} generators, Buchberger criterion ok, binomial, vanishes on Y",
        analysis.ideals().projective.len()
    );
    let _ = writeln!(report, "degree of S[u]/I(Y): {} = |X*|", analysis.ring_degree());
    let _ = writeln!(
        report,
        "degrees {}..{}: rank = H_Y(d) = affine Hilbert value, Singleton bound and monotonicity ok",
        degrees.start(),
        degrees.end()
    );
    let _ = writeln!(report, "all checks passed");
    Ok(report)
}

fn degrees_or_default(cfg: &RunConfig, analysis: &CodeAnalysis) -> RangeInclusive<u32> {
    cfg.degrees
        .clone()
        .unwrap_or_else(|| 1..=analysis.profile().stabilized_at.unwrap_or(1).max(1))
}

fn cmd_torus(args: &TorusArgs, err: &mut dyn Write) -> Result<String> {
    let degrees = parse_degrees(&args.degrees).map_err(|e| relabel(e, "--degrees"))?;
    let table = torus_table(args.q, args.s, degrees.clone())?;
    if args.cross_check && !degrees.is_empty() {
        let field = Field::new(args.q, None)?;
        let set = enumerate_points_with(
            &ExponentMatrix::identity(args.s as usize)?,
            &field,
            EnumerationOptions {
                threads: args.threads,
                ..EnumerationOptions::default()
            },
        )?;
        let options = PipelineOptions {
            md_budget: args.md_budget.unwrap_or(DEFAULT_MD_BUDGET),
            threads: args.threads,
            ..PipelineOptions::default()
        };
        let computed = CodeAnalysis::new(set, options)?.table(degrees)?;
        let mut compared = 0;
        for (formula, pipeline) in table.iter().zip(&computed) {
            if formula.length != pipeline.length || formula.dimension != pipeline.dimension {
                return Err(Error::inconsistency(format!(
                    "d = {}: formula gives length {} dim {}, pipeline gives length {} dim {}",
                    formula.d, formula.length, formula.dimension, pipeline.length, pipeline.dimension
                )));
            }
            if let Some(delta) = pipeline.min_distance.value() {
                if Some(delta) != formula.min_distance.value() {
                    return Err(Error::inconsistency(format!(
                        "d = {}: formula gives distance {}, search gives {delta}",
                        formula.d, formula.min_distance
                    )));
                }
                compared += 1;
            }
        }
        let _ = writeln!(
            err,
            "cross-check: lengths and dimensions agree on {} degrees, distances on {compared}",
            table.len()
        );
    }
    Ok(render_table(&table, args.format))
}

#[derive(Serialize)]
struct Row {
    d: u32,
    length: u64,
    dim: u64,
    delta: Option<u64>,
    delta_lower: Option<u64>,
    delta_upper: Option<u64>,
    delta_status: &'static str,
    singleton_defect: Option<i64>,
    mds: Option<bool>,
}

impl Row {
    fn new(p: &CodeParameters) -> Row {
        let (delta_lower, delta_upper) = match p.min_distance {
            MinDistance::Bounded { lower, upper } => (Some(lower), Some(upper)),
            _ => (None, None),
        };
        let singleton_defect = p.singleton_defect();
        Row {
            d: p.d,
            length: p.length,
            dim: p.dimension,
            delta: p.min_distance.value(),
            delta_lower,
            delta_upper,
            delta_status: p.min_distance.status(),
            singleton_defect,
            mds: singleton_defect.map(|x| x == 0),
        }
    }

    fn cells(&self, p: &CodeParameters) -> [String; 7] {
        let opt = |x: Option<String>| x.unwrap_or_default();
        [
            self.d.to_string(),
            self.length.to_string(),
            self.dim.to_string(),
            p.min_distance.to_string(),
            self.delta_status.to_string(),
            opt(self.singleton_defect.map(|x| x.to_string())),
            opt(self.mds.map(|x| x.to_string())),
        ]
    }
}

const COLUMNS: [&str; 7] = ["d", "length", "dim", "delta", "delta_status", "singleton_defect", "mds"];

pub fn render_table(table: &[CodeParameters], format: OutputFormat) -> String {
    let rows: Vec<Row> = table.iter().map(Row::new).collect();
    let mut out = String::new();
    match format {
        OutputFormat::Json => {
            out = serde_json::to_string_pretty(&rows).expect("rows serialize");
            out.push('\n');
        }
        OutputFormat::Csv => {
            out.push_str(&COLUMNS.join(","));
            out.push('\n');
            for (r, p) in rows.iter().zip(table) {
                out.push_str(&r.cells(p).join(","));
                out.push('\n');
            }
        }
        OutputFormat::Table => {
            let cells: Vec<[String; 7]> = rows.iter().zip(table).map(|(r, p)| r.cells(p)).collect();
            let widths: Vec<usize> = (0..COLUMNS.len())
                .map(|c| {
                    cells
                        .iter()
                        .map(|r| r[c].len())
                        .chain([COLUMNS[c].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |items: &[&str]| {
                let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(&COLUMNS));
            for r in &cells {
                out.push_str(&line(&r.iter().map(String::as_str).collect::<Vec<_>>()));
            }
        }
    }
    out
}

pub fn render_basis(gb: &GroebnerBasis, format: OutputFormat) -> String {
    let lines = gb.display_lines();
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(&lines).expect("strings serialize") + "\n",
        OutputFormat::Table | OutputFormat::Csv => lines.iter().map(|l| format!("{l}\n")).collect(),
    }
}
