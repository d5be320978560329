//! Inline value syntax used on the command line and in reports.
//!
//! ```text
//! cells     := cell {[','] cell}
//! pattern   := '[' [cell ':' sym {',' cell ':' sym}] ']'
//! set       := '{' [cell {',' cell}] '}'
//! window    := int '..' int                    Z
//!            | int '..' int 'x' int '..' int   Z^2
//!            | <finite set expression>
//! cylinder  := 'full' | pattern | <set expression> '=' sym ['with' pattern]
//! config    := ('const' '(' sym ')'
//!             | 'periodic' '(' period ';' sym {sym} ')') ['shift' cell] ['with' pattern]
//! period    := int | cell {',' cell}
//! rational  := int ['/' int]
//! ```

use super::cursor::Cursor;
use crate::density::{parse_cell, parse_set, LatticeSet};
use crate::engine::{Cylinder, PreinjWitness};
use crate::error::{Error, Result};
use crate::lattice::{Background, Cell, Configuration, Dim, FiniteSet, Pattern, PeriodLattice, Symbol};
use crate::linear::KernelWitness;
use crate::Rational;

fn finish(cur: &mut Cursor<'_>) -> Result<()> {
    if cur.at_end() {
        Ok(())
    } else {
        Err(cur.error(format!("unexpected trailing input '{}'", cur.rest_preview())))
    }
}

fn wrap<T>(cur: &Cursor<'_>, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => cur.error(other.to_string()),
    })
}

pub(crate) fn symbol(cur: &mut Cursor<'_>) -> Result<Symbol> {
    let v = cur.int()?;
    Symbol::try_from(v).map_err(|_| cur.error(format!("symbol {v} is out of range 0..=255")))
}

/// Whitespace- or comma-separated cells up to the end of input.
pub(crate) fn cells(cur: &mut Cursor<'_>, dim: Dim) -> Result<Vec<Cell>> {
    let mut out = Vec::new();
    while !cur.at_end() {
        out.push(parse_cell(cur, dim)?);
        cur.eat(',');
    }
    Ok(out)
}

pub(crate) fn pattern(cur: &mut Cursor<'_>, dim: Dim) -> Result<Pattern> {
    cur.expect('[')?;
    let mut pairs: Vec<(Cell, Symbol)> = Vec::new();
    if !cur.eat(']') {
        loop {
            let c = parse_cell(cur, dim)?;
            cur.expect(':')?;
            let v = symbol(cur)?;
            if pairs.iter().any(|(d, _)| *d == c) {
                return Err(cur.error(format!("cell {c} appears twice in the pattern")));
            }
            pairs.push((c, v));
            if cur.eat(']') {
                break;
            }
            cur.expect(',')?;
        }
    }
    pairs.sort();
    let support = wrap(cur, FiniteSet::new(dim, pairs.iter().map(|p| p.0)))?;
    wrap(cur, Pattern::new(support, pairs.into_iter().map(|p| p.1).collect()))
}

fn brace_set(cur: &mut Cursor<'_>, dim: Dim) -> Result<FiniteSet> {
    cur.expect('{')?;
    let mut out = Vec::new();
    if !cur.eat('}') {
        loop {
            out.push(parse_cell(cur, dim)?);
            if cur.eat('}') {
                break;
            }
            cur.expect(',')?;
        }
    }
    wrap(cur, FiniteSet::new(dim, out))
}

fn range(cur: &mut Cursor<'_>) -> Result<(i64, i64)> {
    let a = cur.int()?;
    if !cur.eat_str("..") {
        return Err(cur.error("expected '..'"));
    }
    let b = cur.int()?;
    if a > b {
        return Err(cur.error(format!("empty range {a}..{b}")));
    }
    Ok((a, b))
}

fn window_at(cur: &mut Cursor<'_>, dim: Dim) -> Result<FiniteSet> {
    let starts_numeric = matches!(cur.peek(), Some(c) if c.is_ascii_digit() || c == '-' || c == '+');
    if starts_numeric {
        let (x0, x1) = range(cur)?;
        return match dim {
            Dim::One => Ok(FiniteSet::interval(x0, x1)),
            Dim::Two => {
                if !cur.eat('x') {
                    return Err(cur.error("expected 'x' between the two ranges of a 2D window"));
                }
                let (y0, y1) = range(cur)?;
                Ok(FiniteSet::rect(x0, x1, y0, y1))
            }
        };
    }
    if cur.peek() == Some('{') {
        return brace_set(cur, dim);
    }
    let set = parse_set(cur, dim)?;
    set.as_finite().ok_or_else(|| cur.error("window must be a finite set"))
}

/// Parses a window: a range box, a `{..}` cell list or a finite set expression.
pub fn parse_window(text: &str, dim: Dim) -> Result<FiniteSet> {
    let mut cur = Cursor::new(text, 1, 1);
    let w = window_at(&mut cur, dim)?;
    finish(&mut cur)?;
    Ok(w)
}

pub(crate) fn parse_window_at(text: &str, dim: Dim, line: usize, col: usize) -> Result<FiniteSet> {
    let mut cur = Cursor::new(text, line, col);
    let w = window_at(&mut cur, dim)?;
    finish(&mut cur)?;
    Ok(w)
}

/// Range syntax for boxes, `finite{..}` otherwise.
pub fn write_window(w: &FiniteSet) -> String {
    match w.bounds() {
        Some((lo, hi)) if w.is_box() => match w.dim() {
            Dim::One => format!("{}..{}", lo.x(), hi.x()),
            Dim::Two => format!("{}..{}x{}..{}", lo.x(), hi.x(), lo.y(), hi.y()),
        },
        _ => format!("finite{w}"),
    }
}

pub fn parse_pattern(text: &str, dim: Dim) -> Result<Pattern> {
    let mut cur = Cursor::new(text, 1, 1);
    let p = pattern(&mut cur, dim)?;
    finish(&mut cur)?;
    Ok(p)
}

/// Parses a `{c,c,...}` cell list.
pub fn parse_finite_set(text: &str, dim: Dim) -> Result<FiniteSet> {
    let mut cur = Cursor::new(text, 1, 1);
    let s = brace_set(&mut cur, dim)?;
    finish(&mut cur)?;
    Ok(s)
}

pub fn parse_cylinder(text: &str, dim: Dim) -> Result<Cylinder> {
    let mut cur = Cursor::new(text, 1, 1);
    let u = if cur.eat_str("full") {
        Cylinder::full(dim)
    } else if cur.peek() == Some('[') {
        Cylinder::from_pattern(&pattern(&mut cur, dim)?)
    } else {
        let set = parse_set(&mut cur, dim)?;
        wrap(&cur, set.validate().map(|_| ()))?;
        cur.expect('=')?;
        let bg = symbol(&mut cur)?;
        let mut u = wrap(&cur, Cylinder::new(set, bg))?;
        if cur.eat_str("with") {
            let p = pattern(&mut cur, dim)?;
            for (c, v) in p.iter() {
                u = wrap(&cur, u.with_override(c, v))?;
            }
        }
        u
    };
    finish(&mut cur)?;
    Ok(u)
}

/// Inverse of [`parse_cylinder`].
pub fn write_cylinder(u: &Cylinder) -> String {
    if let LatticeSet::All(_) = u.set() {
        if u.background() == 0 && u.overrides().is_empty() {
            return "full".into();
        }
    }
    if let LatticeSet::Empty(_) = u.set() {
        return "full".into();
    }
    if let LatticeSet::Finite(s) = u.set() {
        if u.overrides().len() == s.len() {
            return u.pattern_on(s).to_string();
        }
    }
    let mut out = format!("{}={}", u.set(), u.background());
    if !u.overrides().is_empty() {
        let cells = FiniteSet::new(u.dim(), u.overrides().keys().copied()).expect("dimension checked");
        out.push_str(&format!(" with {}", u.pattern_on(&cells)));
    }
    out
}

pub fn parse_configuration(text: &str, dim: Dim) -> Result<Configuration> {
    let mut cur = Cursor::new(text, 1, 1);
    let word = cur.ident().ok_or_else(|| cur.error("expected 'const(..)' or 'periodic(..)'"))?;
    let mut x = match word.as_str() {
        "const" => {
            cur.expect('(')?;
            let s = symbol(&mut cur)?;
            cur.expect(')')?;
            Configuration::constant(dim, s)
        }
        "periodic" => {
            cur.expect('(')?;
            let lattice = if dim == Dim::One && cur.peek() != Some('(') {
                let n = cur.int()?;
                wrap(&cur, PeriodLattice::scalar(dim, n))?
            } else {
                let mut gens = vec![parse_cell(&mut cur, dim)?];
                while cur.eat(',') {
                    gens.push(parse_cell(&mut cur, dim)?);
                }
                wrap(&cur, PeriodLattice::from_generators(dim, &gens))?
            };
            cur.expect(';')?;
            let mut domain = Vec::new();
            while cur.peek() != Some(')') && !cur.at_end() {
                domain.push(symbol(&mut cur)?);
            }
            cur.expect(')')?;
            wrap(&cur, Configuration::periodic(lattice, domain))?
        }
        other => return Err(cur.error(format!("unknown configuration kind '{other}'"))),
    };
    if cur.eat_str("shift") {
        let g = parse_cell(&mut cur, dim)?;
        x = wrap(&cur, x.shift(g))?;
    }
    if cur.eat_str("with") {
        let p = pattern(&mut cur, dim)?;
        x = wrap(&cur, x.with_pattern(&p))?;
    }
    finish(&mut cur)?;
    Ok(x)
}

/// Inverse of [`parse_configuration`].
pub fn write_configuration(x: &Configuration) -> String {
    let mut out = match x.background() {
        Background::Constant(s) => format!("const({s})"),
        Background::Periodic { lattice, domain } => {
            let period = match lattice.dim() {
                Dim::One => lattice.index().to_string(),
                Dim::Two => {
                    let b = lattice.basis();
                    format!("({},{}),({},{})", b[0].x(), b[0].y(), b[1].x(), b[1].y())
                }
            };
            let syms: Vec<String> = domain.iter().map(|s| s.to_string()).collect();
            format!("periodic({period};{})", syms.join(" "))
        }
    };
    let offset = x.background_offset();
    if offset != Cell::origin(offset.dim()) {
        out.push_str(&format!(" shift {offset}"));
    }
    if !x.overrides().is_empty() {
        let pairs: Vec<String> = x.overrides().iter().map(|(c, v)| format!("{c}:{v}")).collect();
        out.push_str(&format!(" with [{}]", pairs.join(",")));
    }
    out
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let mut cur = Cursor::new(text, 1, 1);
    let n = cur.int()?;
    let d = if cur.eat('/') { cur.int()? } else { 1 };
    finish(&mut cur)?;
    if d == 0 {
        return Err(Error::parse(1, 1, "zero denominator"));
    }
    Ok(Rational::new(n as i128, d as i128))
}

/// Parses the `E=.. q1=.. q2=.. context=.. filler=..` text of a witness.
pub fn parse_preinj_witness(text: &str, dim: Dim) -> Result<PreinjWitness> {
    let mut fields: [Option<&str>; 5] = [None; 5];
    const KEYS: [&str; 5] = ["E", "q1", "q2", "context", "filler"];
    for token in text.split_whitespace() {
        let (k, v) = token
            .split_once('=')
            .ok_or_else(|| Error::parse(1, 1, format!("expected key=value, found '{token}'")))?;
        let i = KEYS
            .iter()
            .position(|&key| key == k)
            .ok_or_else(|| Error::parse(1, 1, format!("unknown witness field '{k}'")))?;
        if fields[i].replace(v).is_some() {
            return Err(Error::parse(1, 1, format!("witness field '{k}' given twice")));
        }
    }
    let get = |i: usize| fields[i].ok_or_else(|| Error::parse(1, 1, format!("witness field '{}' is missing", KEYS[i])));
    let filler: Symbol = get(4)?
        .parse()
        .map_err(|_| Error::parse(1, 1, "filler must be a symbol"))?;
    Ok(PreinjWitness {
        support: parse_finite_set(get(0)?, dim)?,
        q1: parse_pattern(get(1)?, dim)?,
        q2: parse_pattern(get(2)?, dim)?,
        context: parse_pattern(get(3)?, dim)?,
        filler,
    })
}

/// Parses `cell:v,..,v` tokens of a kernel witness with `k` components.
pub fn parse_kernel_witness(text: &str, dim: Dim, k: usize) -> Result<KernelWitness> {
    let mut pairs: Vec<(Cell, Vec<u8>)> = Vec::new();
    for token in text.split_whitespace() {
        let (c, v) = token
            .rsplit_once(':')
            .ok_or_else(|| Error::parse(1, 1, format!("expected cell:values, found '{token}'")))?;
        let mut cur = Cursor::new(c, 1, 1);
        let cell = parse_cell(&mut cur, dim)?;
        finish(&mut cur)?;
        let values = v
            .split(',')
            .map(|s| s.parse::<u8>())
            .collect::<std::result::Result<Vec<u8>, _>>()
            .map_err(|_| Error::parse(1, 1, format!("bad values in '{token}'")))?;
        if values.len() != k {
            return Err(Error::parse(1, 1, format!("cell {cell} has {} components, expected {k}", values.len())));
        }
        pairs.push((cell, values));
    }
    pairs.sort();
    let support = FiniteSet::new(dim, pairs.iter().map(|p| p.0))?;
    if support.len() != pairs.len() {
        return Err(Error::parse(1, 1, "a cell appears twice in the kernel witness"));
    }
    Ok(KernelWitness {
        search_box: support.clone(),
        support,
        values: pairs.into_iter().flat_map(|p| p.1).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::CellSource;

    #[test]
    fn windows() {
        assert_eq!(parse_window("-2..2", Dim::One).unwrap(), FiniteSet::interval(-2, 2));
        assert_eq!(parse_window("0..1 x -1..1", Dim::Two).unwrap(), FiniteSet::rect(0, 1, -1, 1));
        assert_eq!(parse_window("{1,3}", Dim::One).unwrap().len(), 2);
        assert_eq!(parse_window("interval(0,4)", Dim::One).unwrap().len(), 5);
        assert!(parse_window("coset(2,0)", Dim::One).is_err());
        assert!(parse_window("3..1", Dim::One).is_err());
        for w in [FiniteSet::interval(-3, 5), FiniteSet::rect(0, 2, -1, 1), FiniteSet::new(Dim::One, [Cell::d1(0), Cell::d1(2)]).unwrap()] {
            assert_eq!(parse_window(&write_window(&w), w.dim()).unwrap(), w);
        }
    }

    #[test]
    fn patterns_round_trip() {
        let p = parse_pattern("[(0,1):2, (0,0):1]", Dim::Two).unwrap();
        assert_eq!(p.get(&Cell::d2(0, 0)), Some(1));
        assert_eq!(parse_pattern(&p.to_string(), Dim::Two).unwrap(), p);
        assert_eq!(parse_pattern("[]", Dim::One).unwrap(), Pattern::empty(Dim::One));
        assert!(parse_pattern("[0:1,0:2]", Dim::One).is_err());
        assert!(parse_pattern("[0:300]", Dim::One).is_err());
    }

    #[test]
    fn cylinders_round_trip() {
        for (text, dim) in [
            ("full", Dim::One),
            ("[-1:0,0:1]", Dim::One),
            ("coset(3,0)=1", Dim::One),
            ("coset(3,0)=0 with [3:2]", Dim::One),
            ("halfspace(1,0;>=;0)=1", Dim::Two),
        ] {
            let u = parse_cylinder(text, dim).unwrap();
            assert_eq!(parse_cylinder(&write_cylinder(&u), dim).unwrap(), u, "{text}");
        }
        assert!(parse_cylinder("coset(3,0)=0 with [1:2]", Dim::One).is_err());
    }

    #[test]
    fn configurations_round_trip() {
        let x = parse_configuration("periodic(3;0 1 1) shift 1 with [0:2]", Dim::One).unwrap();
        assert_eq!(x.symbol_at(Cell::d1(0)), 2);
        assert_eq!(x.symbol_at(Cell::d1(1)), 0);
        assert_eq!(x.symbol_at(Cell::d1(2)), 1);
        assert_eq!(parse_configuration(&write_configuration(&x), Dim::One).unwrap(), x);
        let y = parse_configuration("periodic((2,0),(1,1);0 1)", Dim::Two).unwrap();
        assert_eq!(parse_configuration(&write_configuration(&y), Dim::Two).unwrap(), y);
        assert!(parse_configuration("periodic(3;0 1)", Dim::One).is_err());
        assert!(parse_configuration("random(1)", Dim::One).is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/10").unwrap(), Rational::new(1, 10));
        assert_eq!(parse_rational("-3").unwrap(), Rational::from_integer(-3));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn kernel_witness_text() {
        let w = KernelWitness {
            search_box: FiniteSet::interval(0, 1),
            support: FiniteSet::interval(0, 1),
            values: vec![1, 0, 1, 1],
        };
        let back = parse_kernel_witness(&w.to_string(), Dim::One, 2).unwrap();
        assert_eq!((back.support, back.values), (w.support, w.values));
    }
}
