//! SFT files (`.sft`).
//!
//! ```text
//! file      := 'sft 1'  'dim' (1|2)  'alphabet' int  'window' window  body
//! body      := 'full' | {'allow' sym{|Δ|}} | {'forbid' sym{|Δ|}}
//! ```
//!
//! `window` is a box in range syntax (`0..1`, `0..1 x 0..1`); pattern symbols
//! follow the window cells in increasing order (lexicographic in `(x, y)`).
//! Allow and forbid lines cannot be mixed.

use std::collections::HashSet;

use super::lines::{expect_header, lines, Line};
use super::values::{parse_window_at, write_window};
use crate::error::Result;
use crate::lattice::{Dim, Symbol};
use crate::sft::Sft;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Body {
    Full,
    Allow,
    Forbid,
}

pub fn parse_sft(src: &str) -> Result<Sft> {
    let ls = lines(src);
    expect_header(&ls, "sft")?;
    let mut dim = None;
    let mut alphabet: Option<u8> = None;
    let mut window = None;
    let mut body: Option<(Body, Line<'_>)> = None;
    let mut words: HashSet<Vec<Symbol>> = HashSet::new();
    for line in &ls[1..] {
        let (word, rest) = line.split_word();
        let header_done = |l: &Line<'_>| -> Result<()> {
            if body.is_some() {
                return Err(l.error(format!("'{word}' must come before the pattern list")));
            }
            Ok(())
        };
        match word {
            "dim" => {
                header_done(line)?;
                dim = Some(Dim::from_rank(rest.parse_int("1 or 2")?).ok_or_else(|| rest.error("dim must be 1 or 2"))?);
            }
            "alphabet" => {
                header_done(line)?;
                let q: u8 = rest.parse_int("an alphabet size")?;
                if q == 0 {
                    return Err(rest.error("alphabet size must be positive"));
                }
                alphabet = Some(q);
            }
            "window" => {
                header_done(line)?;
                let d = dim.ok_or_else(|| line.error("'dim' must come before 'window'"))?;
                let w = parse_window_at(rest.text, d, rest.no, rest.col)?;
                if !w.is_box() {
                    return Err(rest.error("the SFT window must be a box"));
                }
                window = Some(w);
            }
            "full" | "allow" | "forbid" => {
                let kind = match word {
                    "full" => Body::Full,
                    "allow" => Body::Allow,
                    _ => Body::Forbid,
                };
                if let Some((k, _)) = body {
                    if k != kind || kind == Body::Full {
                        return Err(line.error("'full', 'allow' and 'forbid' lines cannot be mixed"));
                    }
                }
                body = Some((kind, *line));
                if kind == Body::Full {
                    if !rest.text.is_empty() {
                        return Err(rest.error("'full' takes no arguments"));
                    }
                    continue;
                }
                let (Some(q), Some(w)) = (alphabet, window.as_ref()) else {
                    return Err(line.error("'alphabet' and 'window' must come before patterns"));
                };
                let syms = rest
                    .text
                    .split_whitespace()
                    .map(|t| t.parse::<Symbol>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| rest.error("pattern symbols must be integers"))?;
                if syms.len() != w.len() {
                    return Err(rest.error(format!("expected {} symbols, found {}", w.len(), syms.len())));
                }
                if let Some(s) = syms.iter().find(|&&s| s >= q) {
                    return Err(rest.error(format!("symbol {s} is outside the alphabet")));
                }
                if !words.insert(syms) {
                    return Err(line.error("pattern listed twice"));
                }
            }
            other => return Err(line.error(format!("unexpected '{other}'"))),
        }
    }
    let end = *ls.last().expect("header present");
    dim.ok_or_else(|| end.error("missing 'dim' line"))?;
    let q = alphabet.ok_or_else(|| end.error("missing 'alphabet' line"))?;
    let w = window.ok_or_else(|| end.error("missing 'window' line"))?;
    let (kind, at) = body.ok_or_else(|| end.error("missing 'full', 'allow' or 'forbid' lines"))?;
    let sft = match kind {
        Body::Full => Sft::full(w, q),
        Body::Allow => Sft::from_fn(w, q, |x| words.contains(x)),
        Body::Forbid => Sft::from_fn(w, q, |x| !words.contains(x)),
    };
    sft.map_err(|e| at.error(e.to_string()))
}

/// Canonical text using the shorter of the allow and forbid lists.
pub fn write_sft(s: &Sft) -> String {
    let mut out = format!(
        "sft 1\ndim {}\nalphabet {}\nwindow {}\n",
        s.dim().rank(),
        s.alphabet(),
        write_window(s.window())
    );
    let forbidden = s.forbidden_patterns();
    if forbidden.is_empty() {
        out.push_str("full\n");
        return out;
    }
    let allowed = s.allowed_patterns();
    let (word, list) = if !allowed.is_empty() && allowed.len() < forbidden.len() {
        ("allow", allowed)
    } else {
        ("forbid", forbidden)
    };
    for p in list {
        let syms: Vec<String> = p.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("{word} {}\n", syms.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::error::Error;
    use crate::lattice::FiniteSet;

    #[test]
    fn golden_mean_text() {
        let s = parse_sft("sft 1\ndim 1\nalphabet 2\nwindow 0..1\nforbid 1 1\n").unwrap();
        assert_eq!(s, catalog::golden_mean());
        assert_eq!(write_sft(&s), "sft 1\ndim 1\nalphabet 2\nwindow 0..1\nforbid 1 1\n");
    }

    #[test]
    fn round_trips() {
        for s in [
            catalog::golden_mean(),
            catalog::hard_square(),
            catalog::period_two(),
            Sft::full(FiniteSet::interval(0, 2), 3).unwrap(),
        ] {
            let text = write_sft(&s);
            assert_eq!(parse_sft(&text).unwrap(), s, "{text}");
        }
    }

    #[test]
    fn errors() {
        let base = "sft 1\ndim 1\nalphabet 2\nwindow 0..1\n";
        for (src, line) in [
            (format!("{base}forbid 1 2\n"), 5),
            (format!("{base}forbid 1\n"), 5),
            (format!("{base}forbid 1 1\nallow 0 0\n"), 6),
            ("sft 1\ndim 1\nalphabet 2\nwindow {0,2}\nfull\n".to_string(), 4),
            (base.to_string(), 4),
        ] {
            match parse_sft(&src) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
    }
}
