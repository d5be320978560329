#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

/// Runs `nuca` inside the data directory with budget variables cleared.
pub fn nuca(args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nuca"));
    cmd.current_dir(data_dir()).args(args);
    for v in ["NUCA_MAX_PATTERNS", "NUCA_MAX_WINDOW", "NUCA_MAX_SUPPORT", "NUCA_TIME_LIMIT"] {
        cmd.env_remove(v);
    }
    cmd.output().expect("nuca runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 report")
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 stderr")
}

pub fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

/// The report without `timing` lines.
pub fn stable(report: &str) -> String {
    report
        .lines()
        .filter(|l| !l.starts_with("timing "))
        .map(|l| format!("{l}\n"))
        .collect()
}
