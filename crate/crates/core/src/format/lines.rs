//! Comment stripping and word splitting shared by the file grammars.

use super::cursor::Cursor;
use crate::error::{Error, Result};

/// A non-empty source line with `#` comments removed.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Line<'a> {
    pub no: usize,
    /// 1-based column of `text` in the source line.
    pub col: usize,
    pub text: &'a str,
}

impl<'a> Line<'a> {
    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.no, self.col, message)
    }

    /// Splits off the first whitespace-delimited word.
    pub(crate) fn split_word(&self) -> (&'a str, Line<'a>) {
        let end = self.text.find(char::is_whitespace).unwrap_or(self.text.len());
        let rest = &self.text[end..];
        let trimmed = rest.trim_start();
        let col = self.col + end + (rest.len() - trimmed.len());
        (
            &self.text[..end],
            Line {
                no: self.no,
                col,
                text: trimmed,
            },
        )
    }

    /// Sub-line starting at byte `at`.
    pub(crate) fn slice(&self, at: usize, end: usize) -> Line<'a> {
        let raw = &self.text[at..end];
        let trimmed = raw.trim_start();
        Line {
            no: self.no,
            col: self.col + at + (raw.len() - trimmed.len()),
            text: trimmed.trim_end(),
        }
    }

    pub(crate) fn cursor(&self) -> Cursor<'a> {
        Cursor::new(self.text, self.no, self.col)
    }

    pub(crate) fn parse_int<T: std::str::FromStr>(&self, what: &str) -> Result<T> {
        self.text
            .parse()
            .map_err(|_| self.error(format!("expected {what}, found '{}'", self.text)))
    }
}

pub(crate) fn lines(src: &str) -> Vec<Line<'_>> {
    src.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let trimmed = body.trim_start();
            let text = trimmed.trim_end();
            (!text.is_empty()).then(|| Line {
                no: i + 1,
                col: body.len() - trimmed.len() + 1,
                text,
            })
        })
        .collect()
}

/// Checks the `<magic> 1` header line.
pub(crate) fn expect_header<'a>(ls: &[Line<'a>], magic: &str) -> Result<()> {
    let Some(first) = ls.first() else {
        return Err(Error::parse(1, 1, format!("empty file, expected '{magic} 1'")));
    };
    let (word, rest) = first.split_word();
    if word != magic {
        return Err(first.error(format!("expected header '{magic} 1', found '{}'", first.text)));
    }
    if rest.text != "1" {
        return Err(rest.error(format!("unsupported {magic} format version '{}'", rest.text)));
    }
    Ok(())
}

/// Names: ASCII letters, digits, `_` and `-`, not starting with a digit.
pub(crate) fn check_name(line: &Line<'_>) -> Result<String> {
    let ok = !line.text.is_empty()
        && !line.text.starts_with(|c: char| c.is_ascii_digit())
        && line.text.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
    if ok {
        Ok(line.text.to_string())
    } else {
        Err(line.error(format!("invalid name '{}'", line.text)))
    }
}
