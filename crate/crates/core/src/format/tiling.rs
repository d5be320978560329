//! Quasi-tilings as `tiling` lines of a report.
//!
//! ```text
//! tiling dim = 1
//! tiling memory = -1..1
//! tiling region = 0..10000
//! tiling shape.0 = 0..119
//! tiling tile.0 = 0@0          shape index '@' center
//! ```

use super::cursor::Cursor;
use super::values::{parse_window, write_window};
use crate::density::parse_cell;
use crate::error::{Error, Result};
use crate::lattice::{Cell, Dim};
use crate::quasitiling::QuasiTiling;
use crate::report::{Kind, Report};

pub fn write_tiling(report: &mut Report, t: &QuasiTiling) {
    report.push(Kind::Tiling, "dim", t.dim().rank());
    report.push(Kind::Tiling, "memory", write_window(&t.memory));
    report.push(Kind::Tiling, "region", write_window(&t.region));
    for (i, s) in t.shapes.iter().enumerate() {
        report.push(Kind::Tiling, format!("shape.{i}"), write_window(s));
    }
    for (i, tile) in t.tiles.iter().enumerate() {
        report.push(Kind::Tiling, format!("tile.{i}"), format!("{}@{}", tile.shape, tile.center));
    }
}

fn indexed(key: &str, prefix: &str) -> Option<usize> {
    key.strip_prefix(prefix)?.strip_prefix('.')?.parse().ok()
}

/// Reads the `tiling` lines written by [`write_tiling`].
pub fn read_tiling(report: &Report) -> Result<QuasiTiling> {
    let bad = |msg: String| Error::Invalid(format!("tiling lines: {msg}"));
    let lines: Vec<_> = report.of_kind(Kind::Tiling).collect();
    let field = |name: &str| {
        lines
            .iter()
            .find(|e| e.key == name)
            .map(|e| e.value.as_str())
            .ok_or_else(|| bad(format!("missing '{name}'")))
    };
    let dim = field("dim")?
        .parse()
        .ok()
        .and_then(Dim::from_rank)
        .ok_or_else(|| bad("dim must be 1 or 2".into()))?;
    let memory = parse_window(field("memory")?, dim)?;
    let region = parse_window(field("region")?, dim)?;
    let mut shapes = Vec::new();
    let mut placements = Vec::new();
    for e in &lines {
        if let Some(i) = indexed(&e.key, "shape") {
            if i != shapes.len() {
                return Err(bad(format!("shape.{i} out of order")));
            }
            shapes.push(parse_window(&e.value, dim)?);
        } else if let Some(i) = indexed(&e.key, "tile") {
            if i != placements.len() {
                return Err(bad(format!("tile.{i} out of order")));
            }
            let (s, c) = e
                .value
                .split_once('@')
                .ok_or_else(|| bad(format!("expected 'shape@center', found '{}'", e.value)))?;
            let shape: usize = s.parse().map_err(|_| bad(format!("bad shape index '{s}'")))?;
            let mut cur = Cursor::new(c, 1, 1);
            let center: Cell = parse_cell(&mut cur, dim)?;
            if !cur.at_end() {
                return Err(bad(format!("bad tile center '{c}'")));
            }
            placements.push((shape, center));
        }
    }
    QuasiTiling::from_placements(memory, region, shapes, &placements)
}
