use std::fmt;
use std::fs;
use std::path::Path;
use std::time::Duration;

use nuca_core::format::{self, parse_cylinder, parse_window};
use nuca_core::linear::LinearAssignment;
use nuca_core::report::Report;
use nuca_core::sft::Sft;
use nuca_core::{engine::Cylinder, engine::RuleAssignment, Budget, Dim, Error, FiniteSet, Rational};

use crate::args::Global;

/// Exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_FAIL: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_PRECONDITION: u8 = 4;

#[derive(Debug)]
pub enum CliError {
    /// A core error, optionally prefixed by the file or flag it came from.
    Core { context: Option<String>, error: Error },
    Io(String),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core { error, .. } if error.is_budget() => EXIT_BUDGET,
            CliError::Core {
                error: Error::Precondition(_),
                ..
            } => EXIT_PRECONDITION,
            _ => EXIT_USAGE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core { context: Some(c), error } => write!(f, "{c}: {error}"),
            CliError::Core { context: None, error } => write!(f, "{error}"),
            CliError::Io(m) | CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(error: Error) -> Self {
        CliError::Core { context: None, error }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub trait Context<T> {
    fn context(self, what: impl fmt::Display) -> CliResult<T>;
}

impl<T> Context<T> for Result<T, Error> {
    fn context(self, what: impl fmt::Display) -> CliResult<T> {
        self.map_err(|error| CliError::Core {
            context: Some(what.to_string()),
            error,
        })
    }
}

/// Shared state for one invocation.
pub struct Ctx {
    pub budget: Budget,
    pub command: String,
    pub seed: u64,
}

impl Ctx {
    pub fn new(global: &Global, command: String) -> Ctx {
        let mut budget = Budget::default();
        if let Some(v) = global.max_patterns {
            budget = budget.with_max_patterns(v);
        }
        if let Some(v) = global.max_window {
            budget = budget.with_max_window(v);
        }
        if let Some(v) = global.max_support {
            budget = budget.with_max_support(v);
        }
        if let Some(v) = global.time_limit {
            budget = budget.with_time_limit(Duration::from_secs_f64(v));
        }
        Ctx {
            budget,
            command,
            seed: global.seed,
        }
    }

    pub fn report(&self) -> Report {
        Report::new(self.command.clone()).with_seed(self.seed)
    }
}

/// Shell-safe rendering of one argument.
pub fn quote(arg: &str) -> String {
    let safe = !arg.is_empty()
        && arg
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || "_-./:=,+@%".contains(c));
    if safe {
        arg.to_string()
    } else {
        format!("'{}'", arg.replace('\'', r"'\''"))
    }
}

pub fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub enum Rules {
    Table(RuleAssignment),
    Linear(LinearAssignment),
}

fn first_word(text: &str) -> Option<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next())
}

pub fn load_rules(path: &Path) -> CliResult<Rules> {
    let text = read(path)?;
    let ctx = path.display().to_string();
    if first_word(&text) == Some("lnuca") {
        Ok(Rules::Linear(format::parse_linear(&text).context(&ctx)?))
    } else {
        Ok(Rules::Table(format::parse_rules(&text).context(&ctx)?))
    }
}

/// Rule tables; linear files are converted to their symbol tables.
pub fn load_table(path: &Path) -> CliResult<RuleAssignment> {
    match load_rules(path)? {
        Rules::Table(a) => Ok(a),
        Rules::Linear(l) => l.to_rule_assignment().context(path.display()),
    }
}

pub fn load_linear(path: &Path) -> CliResult<LinearAssignment> {
    match load_rules(path)? {
        Rules::Linear(l) => Ok(l),
        Rules::Table(_) => Err(CliError::Usage(format!(
            "{}: expected a linear rule file ('lnuca 1' header)",
            path.display()
        ))),
    }
}

pub fn load_sft(path: &Path) -> CliResult<Sft> {
    let text = read(path)?;
    format::parse_sft(&text).context(path.display())
}

pub fn dim_arg(d: usize) -> CliResult<Dim> {
    Dim::from_rank(d).ok_or_else(|| CliError::Usage(format!("--dim must be 1 or 2, got {d}")))
}

pub fn window_arg(flag: &str, text: &str, dim: Dim) -> CliResult<FiniteSet> {
    parse_window(text, dim).context(format!("--{flag}"))
}

pub fn cylinder_arg(text: &str, dim: Dim) -> CliResult<Cylinder> {
    parse_cylinder(text, dim).context("--cylinder")
}

pub fn rational_arg(flag: &str, text: &str) -> CliResult<Rational> {
    format::parse_rational(text).context(format!("--{flag}"))
}
