use crate::error::{Error, Result};

/// Character cursor with 1-based line/column tracking for error messages.
pub(crate) struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col0: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    /// `line`/`col` locate the first character of `src` in the enclosing file.
    pub(crate) fn new(src: &'a str, line: usize, col: usize) -> Cursor<'a> {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line,
            col0: col,
            _src: src,
        }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.line, self.col0 + self.pos, message)
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map(|c| format!("'{c}'")).unwrap_or_else(|| "end of input".into());
            Err(self.error(format!("expected '{c}', found {found}")))
        }
    }

    pub(crate) fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        if self.pos + n <= self.chars.len() && self.chars[self.pos..self.pos + n].iter().copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    pub(crate) fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_' || self.chars[self.pos] == '-')
        {
            if self.pos == start && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '-') {
                break;
            }
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    pub(crate) fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<i64>().map_err(|_| {
            self.pos = start;
            self.error(format!("expected an integer, found '{}'", self.rest_preview()))
        })
    }

    pub(crate) fn rest_preview(&self) -> String {
        self.chars[self.pos..].iter().take(12).collect()
    }
}
