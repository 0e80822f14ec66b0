//! Flag and config-file handling. A config file holds `key=value` lines
//! mirroring the long flags; explicit flags override file values, which
//! override the defaults.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use howe_core::branching::TableVariant;
use howe_core::{ModuleParams, Scalar};

#[derive(Debug, Parser)]
#[command(
    name = "howe",
    about = "Exact branching engine for degree-1 weight modules of sl(2n) under the (sl2, sln) dual pair",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Optional key=value config file; flags override file entries.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Rank parameter n (the module lives inside sl(2n)).
    #[arg(long, global = true)]
    pub n: Option<usize>,

    /// Parameter a1 as a non-integer rational "p/q".
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a1: Option<String>,

    /// Parameter a2 as a non-integer rational "p/q".
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a2: Option<String>,

    #[arg(long = "b-min", global = true, allow_hyphen_values = true)]
    pub b_min: Option<i64>,

    #[arg(long = "b-max", global = true, allow_hyphen_values = true)]
    pub b_max: Option<i64>,

    #[arg(long = "c-max", global = true)]
    pub c_max: Option<u32>,

    /// String depth for the finite simplicity certificates.
    #[arg(long, global = true)]
    pub depth: Option<u32>,

    /// Offset box bound for enumeration and sampling.
    #[arg(long = "box", global = true)]
    pub box_bound: Option<i64>,

    /// Sample count for the randomized bracket checks.
    #[arg(long, global = true)]
    pub samples: Option<u32>,

    /// Seed of the deterministic sample generator.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Table variant: plain, s (semisimplified), ss (bi-semisimplified).
    #[arg(long, global = true)]
    pub variant: Option<String>,

    /// Also run the brute-force kernel oracle (hwv command).
    #[arg(long, global = true)]
    pub oracle: bool,

    /// Singular label b (hwv and series commands).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b: Option<i64>,

    /// Singular label c (hwv command).
    #[arg(long, global = true)]
    pub c: Option<u32>,

    /// Worker threads for independent table rows.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Run the full invariant suite.
    Verify,
    /// Emit one singular vector x(b, c), optionally with the kernel oracle.
    Hwv,
    /// Emit the plain correspondence table.
    Branch,
    /// Composition-series detail for a single b.
    Series,
    /// Correspondence table in a chosen variant.
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
}

/// Fully resolved run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub params: ModuleParams,
    pub b_min: i64,
    pub b_max: i64,
    pub c_max: u32,
    pub depth: u32,
    pub box_bound: i64,
    pub samples: u32,
    pub seed: u64,
    pub format: Format,
    pub variant: TableVariant,
    pub oracle: bool,
    pub b: i64,
    pub c: u32,
    pub jobs: usize,
}

/// Configuration error; maps to exit code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration: {}", self.0)
    }
}

fn parse_file(path: &PathBuf) -> Result<BTreeMap<String, String>, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(ConfigError(format!(
                "{}:{}: expected key=value",
                path.display(),
                lineno + 1
            )));
        };
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn pick<T: FromStr>(
    flag: Option<T>,
    file: &BTreeMap<String, String>,
    key: &str,
    default: T,
) -> Result<T, ConfigError> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match file.get(key) {
        Some(raw) => raw
            .parse()
            .map_err(|_| ConfigError(format!("bad value for {key}: {raw}"))),
        None => Ok(default),
    }
}

/// Parses a rational parameter and rejects integers.
pub fn parse_rational(s: &str, slot: &str) -> Result<Scalar, ConfigError> {
    let v: Scalar = s
        .parse()
        .map_err(|_| ConfigError(format!("malformed rational for {slot}: {s:?}")))?;
    if v.is_integer() {
        return Err(ConfigError(format!(
            "parameter {slot} must be a non-integer rational, got {s:?}"
        )));
    }
    Ok(v)
}

impl RunConfig {
    pub fn resolve(cli: Cli) -> Result<Self, ConfigError> {
        let file = match &cli.config {
            Some(path) => parse_file(path)?,
            None => BTreeMap::new(),
        };

        let n = pick(cli.n, &file, "n", 2)?;
        let a1_raw = pick(cli.a1, &file, "a1", "1/2".to_string())?;
        let a2_raw = pick(cli.a2, &file, "a2", "1/3".to_string())?;
        let a1 = parse_rational(&a1_raw, "a1")?;
        let a2 = parse_rational(&a2_raw, "a2")?;
        let params = ModuleParams::new(n, a1, a2).map_err(|e| ConfigError(e.to_string()))?;

        let b_min = pick(cli.b_min, &file, "b_min", -3)?;
        let b_max = pick(cli.b_max, &file, "b_max", 3)?;
        if b_min > b_max {
            return Err(ConfigError(format!("b_min {b_min} exceeds b_max {b_max}")));
        }

        let variant_raw = pick(cli.variant, &file, "variant", "plain".to_string())?;
        let variant = match variant_raw.as_str() {
            "plain" => TableVariant::Plain,
            "s" | "semisimplified" => TableVariant::Semisimplified,
            "ss" | "bi_semisimplified" => TableVariant::BiSemisimplified,
            other => return Err(ConfigError(format!("unknown variant {other:?}"))),
        };

        let format_raw = match cli.format {
            Some(f) => f,
            None => match file.get("format").map(String::as_str) {
                Some("json") | None => Format::Json,
                Some("md") => Format::Md,
                Some(other) => return Err(ConfigError(format!("unknown format {other:?}"))),
            },
        };

        Ok(RunConfig {
            command: cli.command,
            params,
            b_min,
            b_max,
            c_max: pick(cli.c_max, &file, "c_max", 4)?,
            depth: pick(cli.depth, &file, "depth", 5)?,
            box_bound: pick(cli.box_bound, &file, "box", 4)?,
            samples: pick(cli.samples, &file, "samples", 30)?,
            seed: pick(cli.seed, &file, "seed", 0)?,
            format: format_raw,
            variant,
            oracle: cli.oracle || file.get("oracle").map(String::as_str) == Some("true"),
            b: pick(cli.b, &file, "b", 0)?,
            c: pick(cli.c, &file, "c", 0)?,
            jobs: pick(cli.jobs, &file, "jobs", 1)?.max(1),
        })
    }
}
