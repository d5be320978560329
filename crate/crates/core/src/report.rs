//! Line-oriented report format shared by every analysis.
//!
//! ```text
//! # nuca report
//! schema: 1
//! command: <command line>
//! seed: <u64>
//! <kind> <key> = <value>
//! ```
//!
//! Numeric values carry the kind `exact`, `estimate` or `bracket`; `timing`
//! lines are the only nondeterministic content.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const SCHEMA: u32 = 1;
const MAGIC: &str = "# nuca report";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Exact,
    Estimate,
    Bracket,
    Verdict,
    Witness,
    Replay,
    Info,
    Tiling,
    Timing,
}

impl Kind {
    pub const ALL: [Kind; 9] = [
        Kind::Exact,
        Kind::Estimate,
        Kind::Bracket,
        Kind::Verdict,
        Kind::Witness,
        Kind::Replay,
        Kind::Info,
        Kind::Tiling,
        Kind::Timing,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Exact => "exact",
            Kind::Estimate => "estimate",
            Kind::Bracket => "bracket",
            Kind::Verdict => "verdict",
            Kind::Witness => "witness",
            Kind::Replay => "replay",
            Kind::Info => "info",
            Kind::Tiling => "tiling",
            Kind::Timing => "timing",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown report line kind '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub kind: Kind,
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub entries: Vec<Entry>,
}

/// `PASS` or `FAIL`.
pub fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            seed: 0,
            entries: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Report {
        self.seed = seed;
        self
    }

    /// Keys and values must be single-line; keys must not contain spaces or `=`.
    pub fn push(&mut self, kind: Kind, key: impl Into<String>, value: impl fmt::Display) {
        let key = key.into();
        debug_assert!(!key.contains([' ', '=', '\n']), "bad report key {key:?}");
        let value = value.to_string().replace('\n', " ");
        self.entries.push(Entry { kind, key, value });
    }

    pub fn exact(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.push(Kind::Exact, key, value);
    }

    pub fn estimate(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.push(Kind::Estimate, key, value);
    }

    pub fn verdict(&mut self, key: impl Into<String>, ok: bool) {
        self.push(Kind::Verdict, key, pass_fail(ok));
    }

    pub fn info(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.push(Kind::Info, key, value);
    }

    pub fn witness(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.push(Kind::Witness, key, value);
    }

    pub fn replay(&mut self, value: impl fmt::Display) {
        self.push(Kind::Replay, "command", value);
    }

    pub fn timing(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.push(Kind::Timing, key, value);
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn value(&self, key: &str) -> Option<&str> {
        self.get(key).map(|e| e.value.as_str())
    }

    pub fn of_kind(&self, kind: Kind) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(move |e| e.kind == kind)
    }

    /// The rendered report without `timing` lines.
    pub fn render_stable(&self) -> String {
        self.render_filtered(|e| e.kind != Kind::Timing)
    }

    pub fn render(&self) -> String {
        self.render_filtered(|_| true)
    }

    fn render_filtered(&self, keep: impl Fn(&Entry) -> bool) -> String {
        let mut out = format!("{MAGIC}\nschema: {SCHEMA}\ncommand: {}\nseed: {}\n", self.command, self.seed);
        for e in self.entries.iter().filter(|e| keep(e)) {
            out.push_str(&format!("{} {} = {}\n", e.kind, e.key, e.value));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Report> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let bad = |line: usize, msg: &str| Error::parse(line, 1, msg);
        match lines.next() {
            Some((_, l)) if l.trim() == MAGIC => {}
            _ => return Err(bad(1, "missing '# nuca report' header")),
        }
        let mut header = |name: &str| -> Result<String> {
            let (n, l) = lines.next().ok_or_else(|| bad(0, "truncated header"))?;
            l.strip_prefix(&format!("{name}: "))
                .map(str::to_string)
                .ok_or_else(|| bad(n, &format!("expected '{name}:' header line")))
        };
        let schema = header("schema")?;
        if schema.trim() != SCHEMA.to_string() {
            return Err(bad(2, &format!("unsupported schema {schema}")));
        }
        let command = header("command")?;
        let seed = header("seed")?
            .trim()
            .parse()
            .map_err(|_| bad(4, "seed must be an unsigned integer"))?;
        let mut entries = Vec::new();
        for (n, l) in lines {
            if l.trim().is_empty() {
                continue;
            }
            let (kind, rest) = l.split_once(' ').ok_or_else(|| bad(n, "expected '<kind> <key> = <value>'"))?;
            let (key, value) = rest.split_once(" = ").ok_or_else(|| bad(n, "expected '<key> = <value>'"))?;
            entries.push(Entry {
                kind: kind.parse().map_err(|e: Error| bad(n, &e.to_string()))?,
                key: key.to_string(),
                value: value.to_string(),
            });
        }
        Ok(Report { command, seed, entries })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
