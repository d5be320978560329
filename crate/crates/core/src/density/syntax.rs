//! Text syntax for [`LatticeSet`].
//!
//! ```text
//! set       := 'empty' | 'all'
//!            | 'finite' '{' [cell {',' cell}] '}'
//!            | 'interval' '(' int ',' int ')'                 Z only
//!            | 'rect' '(' int ',' int ',' int ',' int ')'     Z^2: x0,x1,y0,y1
//!            | 'coset' '(' int ',' int ')'                    Z only: aZ + b
//!            | 'coset' '(' [cell {',' cell}] ';' cell ')'     generators ; offset
//!            | 'halfspace' '(' int {',' int} ';' ('>='|'<=') ';' int ')'
//!            | 'powers' '(' int [',' int] ')'                 Z only: {m^k + b}
//!            | ('union'|'inter'|'intersection') '(' set {',' set} ')'
//!            | ('diff'|'difference') '(' set ',' set ')'
//!            | 'complement' '(' set ')'
//! cell      := int | '(' int [',' int] ')'
//! ```

use std::fmt;

use super::set::LatticeSet;
use crate::error::Result;
use crate::format::cursor::Cursor;
use crate::lattice::{Cell, Dim, FiniteSet};

impl LatticeSet {
    /// Parses a set expression over `Z^dim`.
    pub fn parse(text: &str, dim: Dim) -> Result<LatticeSet> {
        parse_at(text, dim, 1, 1)
    }
}

/// Parses with error positions offset to (`line`, `col`).
pub(crate) fn parse_at(text: &str, dim: Dim, line: usize, col: usize) -> Result<LatticeSet> {
    let mut cur = Cursor::new(text, line, col);
    let set = parse_set(&mut cur, dim)?;
    if !cur.at_end() {
        return Err(cur.error(format!("unexpected trailing input '{}'", cur.rest_preview())));
    }
    set.validate().map_err(|e| cur.error(e.to_string()))?;
    Ok(set)
}

pub(crate) fn parse_cell(cur: &mut Cursor<'_>, dim: Dim) -> Result<Cell> {
    if cur.eat('(') {
        let mut coords = vec![cur.int()?];
        while cur.eat(',') {
            coords.push(cur.int()?);
        }
        cur.expect(')')?;
        if coords.len() != dim.rank() {
            return Err(cur.error(format!(
                "cell has {} coordinates, expected {}",
                coords.len(),
                dim.rank()
            )));
        }
        Ok(Cell::from_slice(&coords).expect("length checked"))
    } else if dim == Dim::One {
        Ok(Cell::d1(cur.int()?))
    } else {
        Err(cur.error("expected a cell '(x,y)'"))
    }
}

pub(crate) fn parse_set(cur: &mut Cursor<'_>, dim: Dim) -> Result<LatticeSet> {
    let Some(word) = cur.ident() else {
        return Err(cur.error(format!("expected a set expression, found '{}'", cur.rest_preview())));
    };
    let wrap = |cur: &Cursor<'_>, r: Result<LatticeSet>| r.map_err(|e| cur.error(e.to_string()));
    match word.as_str() {
        "empty" => Ok(LatticeSet::Empty(dim)),
        "all" => Ok(LatticeSet::All(dim)),
        "finite" => {
            cur.expect('{')?;
            let mut cells = Vec::new();
            if !cur.eat('}') {
                loop {
                    cells.push(parse_cell(cur, dim)?);
                    if cur.eat('}') {
                        break;
                    }
                    cur.expect(',')?;
                }
            }
            Ok(LatticeSet::Finite(FiniteSet::new(dim, cells)?))
        }
        "interval" => {
            if dim != Dim::One {
                return Err(cur.error("interval(...) is only available in dimension 1"));
            }
            cur.expect('(')?;
            let lo = cur.int()?;
            cur.expect(',')?;
            let hi = cur.int()?;
            cur.expect(')')?;
            Ok(LatticeSet::Finite(FiniteSet::interval(lo, hi)))
        }
        "rect" => {
            if dim != Dim::Two {
                return Err(cur.error("rect(...) is only available in dimension 2"));
            }
            cur.expect('(')?;
            let mut v = [0i64; 4];
            for (i, slot) in v.iter_mut().enumerate() {
                if i > 0 {
                    cur.expect(',')?;
                }
                *slot = cur.int()?;
            }
            cur.expect(')')?;
            Ok(LatticeSet::Finite(FiniteSet::rect(v[0], v[1], v[2], v[3])))
        }
        "coset" => {
            cur.expect('(')?;
            let mut gens = Vec::new();
            if dim == Dim::One && cur.peek() != Some('(') && cur.peek() != Some(';') {
                // short form aZ + b
                let a = cur.int()?;
                if cur.eat(',') {
                    let b = cur.int()?;
                    cur.expect(')')?;
                    return wrap(cur, LatticeSet::coset(dim, vec![Cell::d1(a)], Cell::d1(b)));
                }
                gens.push(Cell::d1(a));
                cur.expect(';')?;
            } else if !cur.eat(';') {
                loop {
                    gens.push(parse_cell(cur, dim)?);
                    if cur.eat(';') {
                        break;
                    }
                    cur.expect(',')?;
                }
            }
            let offset = parse_cell(cur, dim)?;
            cur.expect(')')?;
            wrap(cur, LatticeSet::coset(dim, gens, offset))
        }
        "halfspace" => {
            cur.expect('(')?;
            let mut normal = vec![cur.int()?];
            while cur.eat(',') {
                normal.push(cur.int()?);
            }
            if normal.len() != dim.rank() {
                return Err(cur.error(format!("half-space normal needs {} coefficients", dim.rank())));
            }
            cur.expect(';')?;
            let sign = if cur.eat_str(">=") {
                1
            } else if cur.eat_str("<=") {
                -1
            } else {
                return Err(cur.error("expected '>=' or '<='"));
            };
            cur.expect(';')?;
            let bound = cur.int()?;
            cur.expect(')')?;
            let n = Cell::from_slice(&normal).expect("length checked").scale(sign);
            wrap(cur, LatticeSet::half_space(n, bound * sign))
        }
        "powers" => {
            if dim != Dim::One {
                return Err(cur.error("powers(...) is only available in dimension 1"));
            }
            cur.expect('(')?;
            let k = cur.int()?;
            let b = if cur.eat(',') { cur.int()? } else { 0 };
            cur.expect(')')?;
            if !(2..=62).contains(&k) {
                return Err(cur.error("power exponent must lie in 2..=62"));
            }
            wrap(cur, LatticeSet::powers(k as u32, b))
        }
        "union" | "inter" | "intersection" => {
            cur.expect('(')?;
            let mut parts = vec![parse_set(cur, dim)?];
            while cur.eat(',') {
                parts.push(parse_set(cur, dim)?);
            }
            cur.expect(')')?;
            Ok(if word == "union" {
                LatticeSet::Union(parts)
            } else {
                LatticeSet::Intersection(parts)
            })
        }
        "diff" | "difference" => {
            cur.expect('(')?;
            let a = parse_set(cur, dim)?;
            cur.expect(',')?;
            let b = parse_set(cur, dim)?;
            cur.expect(')')?;
            Ok(LatticeSet::difference(a, b))
        }
        "complement" => {
            cur.expect('(')?;
            let a = parse_set(cur, dim)?;
            cur.expect(')')?;
            Ok(LatticeSet::complement(a))
        }
        other => Err(cur.error(format!("unknown set constructor '{other}'"))),
    }
}

fn write_cell_tuple(f: &mut fmt::Formatter<'_>, c: &Cell) -> fmt::Result {
    match c.dim() {
        Dim::One => write!(f, "({})", c.x()),
        Dim::Two => write!(f, "({},{})", c.x(), c.y()),
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, name: &str, parts: &[LatticeSet]) -> fmt::Result {
    write!(f, "{name}(")?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{p}")?;
    }
    write!(f, ")")
}

impl fmt::Display for LatticeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeSet::Empty(_) => write!(f, "empty"),
            LatticeSet::All(_) => write!(f, "all"),
            LatticeSet::Finite(s) => write!(f, "finite{s}"),
            LatticeSet::Coset { generators, offset, .. } => {
                if offset.dim() == Dim::One && generators.len() == 1 {
                    return write!(f, "coset({},{})", generators[0].x(), offset.x());
                }
                write!(f, "coset(")?;
                for (i, g) in generators.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write_cell_tuple(f, g)?;
                }
                write!(f, ";")?;
                write_cell_tuple(f, offset)?;
                write!(f, ")")
            }
            LatticeSet::HalfSpace { normal, bound } => {
                let coeffs: Vec<String> = normal.coords().iter().map(|c| c.to_string()).collect();
                write!(f, "halfspace({};>=;{bound})", coeffs.join(","))
            }
            LatticeSet::Powers { exponent, offset } => {
                if *offset == 0 {
                    write!(f, "powers({exponent})")
                } else {
                    write!(f, "powers({exponent},{offset})")
                }
            }
            LatticeSet::Union(v) => write_list(f, "union", v),
            LatticeSet::Intersection(v) => write_list(f, "inter", v),
            LatticeSet::Complement(s) => write!(f, "complement({s})"),
            LatticeSet::Difference(a, b) => write!(f, "diff({a},{b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_examples() {
        let s = LatticeSet::parse("coset(3,0)", Dim::One).unwrap();
        assert!(s.contains(Cell::d1(-3)) && !s.contains(Cell::d1(1)));

        let h = LatticeSet::parse("halfspace(1,-1;>=;1)", Dim::Two).unwrap();
        assert!(h.contains(Cell::d2(2, 1)));
        assert!(!h.contains(Cell::d2(1, 1)));

        let u = LatticeSet::parse("union(finite{(0,0),(1,2)}, coset((1,1);(0,0)))", Dim::Two).unwrap();
        assert!(u.contains(Cell::d2(1, 2)) && u.contains(Cell::d2(4, 4)));
        assert!(!u.contains(Cell::d2(1, 0)));

        let le = LatticeSet::parse("halfspace(1;<=;-1)", Dim::One).unwrap();
        assert!(le.contains(Cell::d1(-1)) && !le.contains(Cell::d1(0)));
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "coset(2,1)",
            "finite{}",
            "complement(union(coset(4,0),coset(6,0)))",
            "diff(all,powers(2))",
            "inter(halfspace(-1;>=;1),coset(3,2))",
        ] {
            let s = LatticeSet::parse(text, Dim::One).unwrap();
            assert_eq!(LatticeSet::parse(&s.to_string(), Dim::One).unwrap(), s, "{text}");
        }
        let s = LatticeSet::parse("coset((2,0),(0,3);(1,1))", Dim::Two).unwrap();
        assert_eq!(LatticeSet::parse(&s.to_string(), Dim::Two).unwrap(), s);
    }

    #[test]
    fn errors_carry_positions() {
        let err = LatticeSet::parse("union(coset(2,1), bogus(1))", Dim::One).unwrap_err();
        match err {
            crate::Error::Parse { line, column, .. } => {
                assert_eq!(line, 1);
                assert!(column > 15);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(LatticeSet::parse("halfspace(0;>=;1)", Dim::One).is_err());
        assert!(LatticeSet::parse("coset(2,1) extra", Dim::One).is_err());
    }
}
