use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Exact window-level analysis of non-uniform cellular automata.
#[derive(Parser, Debug)]
#[command(name = "nuca", version, about, propagate_version = true)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Cap on enumerated assignments per operation.
    #[arg(long, global = true, env = "NUCA_MAX_PATTERNS", value_parser = positive_u128)]
    pub max_patterns: Option<u128>,
    /// Cap on the cells of one enumerated window.
    #[arg(long, global = true, env = "NUCA_MAX_WINDOW", value_parser = positive_usize)]
    pub max_window: Option<usize>,
    /// Cap on witness support sizes.
    #[arg(long, global = true, env = "NUCA_MAX_SUPPORT", value_parser = positive_usize)]
    pub max_support: Option<usize>,
    /// Wall-clock limit in seconds.
    #[arg(long, global = true, env = "NUCA_TIME_LIMIT", value_parser = positive_f64)]
    pub time_limit: Option<f64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = positive_usize)]
    pub threads: Option<usize>,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed recorded in the report header.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Omit timing lines.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

fn positive_u128(s: &str) -> Result<u128, String> {
    match s.parse::<u128>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(_) => Err("must be positive".into()),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Iterate the automaton on a configuration and print a window.
    Simulate(Simulate),
    /// Exact image patterns on a window.
    Image(Image),
    /// Search for a pre-injectivity witness (or a kernel vector for linear rules).
    Preinj(Preinj),
    /// Counting certificate for injectivity on one window.
    #[command(name = "certB")]
    CertB(CertB),
    /// Pattern-count entropy profile.
    Entropy(Entropy),
    /// Rank profile of a linear rule file.
    Mdim(Mdim),
    /// Natural and Banach densities of a set expression.
    Density(Density),
    /// Pre-injectivity locus of a linear rule file on a quasi-tiling.
    Locus(Locus),
    /// Language of an SFT on a window.
    #[command(name = "sft-lang")]
    SftLang(SftLang),
    /// Periodic points or the periodic-approximation check.
    #[command(name = "sft-periodic")]
    SftPeriodic(SftPeriodic),
    /// Injectivity-counting chain for a CA preserving an SFT.
    #[command(name = "sft-certC")]
    SftCertC(SftCertC),
    /// Strong irreducibility check.
    #[command(name = "sft-irred")]
    SftIrred(SftIrred),
    /// Greedy quasi-tiling of a region with verification.
    Tiling(Tiling),
    /// Open-image probe.
    Probe(Probe),
    /// Re-verify a witness from a report.
    Replay(Replay),
}

#[derive(Args, Debug)]
pub struct Simulate {
    #[arg(long)]
    pub rules: PathBuf,
    /// Initial configuration, e.g. `const(0) with [0:1]`.
    #[arg(long, allow_hyphen_values = true)]
    pub config: String,
    #[arg(long, allow_hyphen_values = true)]
    pub window: String,
    #[arg(long, default_value_t = 1)]
    pub steps: usize,
}

#[derive(Args, Debug)]
pub struct Image {
    #[arg(long)]
    pub rules: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub window: String,
    #[arg(long, allow_hyphen_values = true, default_value = "full")]
    pub cylinder: String,
    /// List every image pattern.
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug)]
pub struct Preinj {
    #[arg(long)]
    pub rules: PathBuf,
    /// Largest support size searched.
    #[arg(long)]
    pub bound: usize,
    /// Supports lie in `[-radius, radius]^d`.
    #[arg(long)]
    pub radius: i64,
    /// Cylinder for rule tables.
    #[arg(long, allow_hyphen_values = true, default_value = "full")]
    pub cylinder: String,
    /// Set where kernel vectors must vanish (linear rules).
    #[arg(long, allow_hyphen_values = true, default_value = "empty")]
    pub pinned: String,
}

#[derive(Args, Debug)]
pub struct CertB {
    #[arg(long)]
    pub rules: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub window: String,
    #[arg(long)]
    pub filler: u8,
    #[arg(long, allow_hyphen_values = true, default_value = "full")]
    pub cylinder: String,
}

#[derive(Args, Debug)]
pub struct Entropy {
    /// Rule file: count image patterns.
    #[arg(long, conflicts_with_all = ["sft", "full"])]
    pub rules: Option<PathBuf>,
    /// SFT file: count language patterns.
    #[arg(long, conflicts_with = "full")]
    pub sft: Option<PathBuf>,
    /// Full shift over this many symbols.
    #[arg(long)]
    pub full: Option<u8>,
    /// Dimension for `--full`.
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, allow_hyphen_values = true, default_value = "full")]
    pub cylinder: String,
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    /// Explicit window radii instead of `n`.
    #[arg(long, value_delimiter = ',')]
    pub radii: Option<Vec<i64>>,
    /// Compare with the free-fraction bound and run the certificate per window.
    #[arg(long, requires = "rules")]
    pub compare: bool,
    #[arg(long, default_value_t = 0)]
    pub filler: u8,
}

#[derive(Args, Debug)]
pub struct Mdim {
    #[arg(long)]
    pub rules: PathBuf,
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    #[arg(long, value_delimiter = ',')]
    pub radii: Option<Vec<i64>>,
}

#[derive(Args, Debug)]
pub struct Density {
    #[arg(long, allow_hyphen_values = true)]
    pub set: String,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, default_value_t = 16)]
    pub n_max: usize,
    /// Second set for the complement and subadditivity checks.
    #[arg(long, allow_hyphen_values = true)]
    pub laws_with: Option<String>,
}

#[derive(Args, Debug)]
pub struct Locus {
    #[arg(long)]
    pub rules: PathBuf,
    /// Report file containing `tiling` lines.
    #[arg(long)]
    pub tiling: PathBuf,
    /// Target density, e.g. `2/5`.
    #[arg(long, allow_hyphen_values = true)]
    pub target: String,
    /// Print the extracted set.
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug)]
pub struct SftLang {
    #[arg(long)]
    pub sft: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub window: String,
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug)]
pub struct SftPeriodic {
    #[arg(long)]
    pub sft: PathBuf,
    /// Period lattice: `n` for `nZ^d`, or generators `(a,b),(c,d)`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "n")]
    pub period: Option<String>,
    #[arg(long)]
    pub list: bool,
    #[arg(long, requires_all = ["n", "r"])]
    pub n0: Option<i64>,
    #[arg(long)]
    pub r: Option<i64>,
    /// Window index of the periodic-approximation check.
    #[arg(long, requires = "n0")]
    pub n: Option<i64>,
}

#[derive(Args, Debug)]
pub struct SftCertC {
    #[arg(long)]
    pub sft: PathBuf,
    /// Uniform rule file (a CA).
    #[arg(long)]
    pub rules: PathBuf,
    /// Finite cylinder, e.g. `[0:0]`.
    #[arg(long, allow_hyphen_values = true)]
    pub cylinder: String,
    #[arg(long)]
    pub n: i64,
    #[arg(long)]
    pub n0: i64,
    #[arg(long)]
    pub r: i64,
}

#[derive(Args, Debug)]
pub struct SftIrred {
    #[arg(long)]
    pub sft: PathBuf,
    /// Separation window Δ.
    #[arg(long, allow_hyphen_values = true)]
    pub gap: String,
    #[arg(long)]
    pub radius: i64,
}

#[derive(Args, Debug)]
pub struct Tiling {
    #[arg(long, allow_hyphen_values = true)]
    pub region: String,
    /// Shape windows; repeat the flag for several shapes.
    #[arg(long = "shape", allow_hyphen_values = true, required = true)]
    pub shapes: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: String,
    #[arg(long, allow_hyphen_values = true)]
    pub memory: String,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Disjointness parameter for verification (default: epsilon).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Covering parameter for verification (default: 1 - epsilon).
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Boundary slack of the covering check.
    #[arg(long, allow_hyphen_values = true, default_value = "1/20")]
    pub slack: String,
}

#[derive(Args, Debug)]
pub struct Probe {
    #[arg(long)]
    pub rules: PathBuf,
    /// Probe support E.
    #[arg(long, allow_hyphen_values = true)]
    pub support: String,
    #[arg(long, allow_hyphen_values = true)]
    pub window: String,
}

#[derive(Args, Debug)]
pub struct Replay {
    #[arg(long)]
    pub rules: PathBuf,
    /// Pre-injectivity witness text.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "kernel", required_unless_present = "kernel")]
    pub witness: Option<String>,
    /// Kernel vector text (linear rules).
    #[arg(long, allow_hyphen_values = true)]
    pub kernel: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "full")]
    pub cylinder: String,
    #[arg(long, allow_hyphen_values = true, default_value = "empty")]
    pub pinned: String,
}
