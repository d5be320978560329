//! Rule files (`.nuca`).
//!
//! ```text
//! file      := 'nuca 1' header {item}
//! header    := 'dim' (1|2)  'alphabet' int  'memory' cells
//! item      := 'rule' NAME NEWLINE {row} 'end'
//!            | 'rule' NAME '=' ('project' cell | 'constant' sym | 'sum')
//!            | 'default' NAME
//!            | 'region' <set expression> '->' NAME
//! row       := sym{|M|} '->' sym
//! ```
//!
//! Memory cells are listed in increasing order and table rows read inputs in
//! that order. Every input tuple appears exactly once. Regions are matched
//! in file order; the first containing a cell decides its rule.

use std::collections::BTreeMap;

use super::lines::{check_name, expect_header, lines, Line};
use super::values::{cells, symbol};
use crate::density::{parse_at, LatticeSet};
use crate::engine::{RuleAssignment, RuleTable};
use crate::error::Result;
use crate::lattice::{Cell, Dim, FiniteSet, Symbol};

pub(crate) struct Header {
    pub dim: Dim,
    pub memory: FiniteSet,
}

/// Reads `dim` and `memory` lines plus any extra `key value` header lines.
pub(crate) fn read_header<'a>(
    ls: &[Line<'a>],
    extra: &[&str],
) -> Result<(Header, BTreeMap<String, Line<'a>>, usize)> {
    let mut dim = None;
    let mut memory = None;
    let mut values = BTreeMap::new();
    let mut i = 1;
    while i < ls.len() {
        let (word, rest) = ls[i].split_word();
        match word {
            "dim" => {
                let d: usize = rest.parse_int("1 or 2")?;
                dim = Some(Dim::from_rank(d).ok_or_else(|| rest.error("dim must be 1 or 2"))?);
            }
            "memory" => {
                let d = dim.ok_or_else(|| ls[i].error("'dim' must come before 'memory'"))?;
                let cs = cells(&mut rest.cursor(), d)?;
                if cs.is_empty() {
                    return Err(rest.error("memory must not be empty"));
                }
                if cs.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(rest.error("memory cells must be listed in strictly increasing order"));
                }
                memory = Some(FiniteSet::new(d, cs)?);
            }
            w if extra.contains(&w) => {
                if values.insert(w.to_string(), rest).is_some() {
                    return Err(ls[i].error(format!("'{w}' given twice")));
                }
            }
            _ => break,
        }
        i += 1;
    }
    let at = ls.get(i).or(ls.last()).copied().expect("header line exists");
    let dim = dim.ok_or_else(|| at.error("missing 'dim' line"))?;
    let memory = memory.ok_or_else(|| at.error("missing 'memory' line"))?;
    for w in extra {
        if !values.contains_key(*w) {
            return Err(at.error(format!("missing '{w}' line")));
        }
    }
    Ok((Header { dim, memory }, values, i))
}

/// Splits `NAME = definition` or bare `NAME`.
pub(crate) fn rule_head<'a>(rest: &Line<'a>) -> Result<(String, Option<Line<'a>>)> {
    match rest.text.find('=') {
        Some(eq) => {
            let name = check_name(&rest.slice(0, eq))?;
            Ok((name, Some(rest.slice(eq + 1, rest.text.len()))))
        }
        None => Ok((check_name(rest)?, None)),
    }
}

/// `<set> -> NAME`.
pub(crate) fn region_line(rest: &Line<'_>, dim: Dim) -> Result<(LatticeSet, String)> {
    let arrow = rest
        .text
        .rfind("->")
        .ok_or_else(|| rest.error("expected 'region <set> -> NAME'"))?;
    let set_part = rest.slice(0, arrow);
    let set = parse_at(set_part.text, dim, set_part.no, set_part.col)?;
    let name = check_name(&rest.slice(arrow + 2, rest.text.len()))?;
    Ok((set, name))
}

pub(crate) fn parse_cell_text(line: &Line<'_>, dim: Dim) -> Result<Cell> {
    let mut cur = line.cursor();
    let c = crate::density::parse_cell(&mut cur, dim)?;
    if !cur.at_end() {
        return Err(cur.error(format!("unexpected trailing input '{}'", cur.rest_preview())));
    }
    Ok(c)
}

/// Collects `default` and `region` lines into an assignment.
pub(crate) fn assemble<R: Clone>(
    items: &[(Line<'_>, Item)],
    rules: &BTreeMap<String, R>,
    mut build: impl FnMut(R, Vec<(LatticeSet, R)>) -> Result<()>,
    end: Line<'_>,
) -> Result<()> {
    let lookup = |line: &Line<'_>, name: &str| {
        rules
            .get(name)
            .cloned()
            .ok_or_else(|| line.error(format!("unknown rule '{name}'")))
    };
    let mut default = None;
    let mut regions = Vec::new();
    for (line, item) in items {
        match item {
            Item::Default(name) => {
                if default.replace(lookup(line, name)?).is_some() {
                    return Err(line.error("'default' given twice"));
                }
            }
            Item::Region(set, name) => regions.push((set.clone(), lookup(line, name)?)),
        }
    }
    let default = default.ok_or_else(|| end.error("missing 'default' line"))?;
    build(default, regions)
}

pub(crate) enum Item {
    Default(String),
    Region(LatticeSet, String),
}

pub fn parse_rules(src: &str) -> Result<RuleAssignment> {
    let ls = lines(src);
    expect_header(&ls, "nuca")?;
    let (header, values, mut i) = read_header(&ls, &["alphabet"])?;
    let q_line = values["alphabet"];
    let q: u8 = q_line.parse_int("an alphabet size")?;
    if q < 1 {
        return Err(q_line.error("alphabet size must be positive"));
    }
    let Header { dim, memory } = header;
    let mut rules: BTreeMap<String, RuleTable> = BTreeMap::new();
    let mut items = Vec::new();
    while i < ls.len() {
        let line = ls[i];
        let (word, rest) = line.split_word();
        match word {
            "rule" => {
                let (name, def) = rule_head(&rest)?;
                if rules.contains_key(&name) {
                    return Err(rest.error(format!("rule '{name}' defined twice")));
                }
                let table = match def {
                    Some(def) => shorthand(&name, &def, &memory, q, dim)?,
                    None => {
                        let (t, next) = table_block(&ls, i + 1, &name, &memory, q)?;
                        i = next;
                        t
                    }
                };
                rules.insert(name, table);
            }
            "default" => items.push((line, Item::Default(check_name(&rest)?))),
            "region" => {
                let (set, name) = region_line(&rest, dim)?;
                items.push((line, Item::Region(set, name)));
            }
            other => return Err(line.error(format!("unexpected '{other}'"))),
        }
        i += 1;
    }
    let mut out = None;
    let end = *ls.last().expect("header present");
    assemble(
        &items,
        &rules,
        |d, r| {
            out = Some(RuleAssignment::new(d, r)?);
            Ok(())
        },
        end,
    )?;
    Ok(out.expect("assembled"))
}

fn shorthand(name: &str, def: &Line<'_>, memory: &FiniteSet, q: u8, dim: Dim) -> Result<RuleTable> {
    let (kind, arg) = def.split_word();
    let wrap = |r: Result<RuleTable>| r.map_err(|e| def.error(e.to_string()));
    match kind {
        "project" => {
            let c = parse_cell_text(&arg, dim)?;
            wrap(RuleTable::projection(name, memory.clone(), q, c))
        }
        "constant" => {
            let s: Symbol = arg.parse_int("a symbol")?;
            wrap(RuleTable::constant(name, memory.clone(), q, s))
        }
        "sum" if arg.text.is_empty() => wrap(RuleTable::from_fn(name, memory.clone(), q, |x| {
            (x.iter().map(|&v| v as u32).sum::<u32>() % q as u32) as Symbol
        })),
        _ => Err(def.error(format!("unknown rule shorthand '{}'", def.text))),
    }
}

fn table_block(ls: &[Line<'_>], start: usize, name: &str, memory: &FiniteSet, q: u8) -> Result<(RuleTable, usize)> {
    let probe = RuleTable::constant(name, memory.clone(), q, 0).map_err(|e| ls[start - 1].error(e.to_string()))?;
    let codec = probe.codec();
    let mut table: Vec<Option<Symbol>> = vec![None; codec.count() as usize];
    let mut i = start;
    loop {
        let Some(line) = ls.get(i) else {
            return Err(ls[start - 1].error(format!("rule '{name}' is missing its 'end' line")));
        };
        if line.text == "end" {
            break;
        }
        let arrow = line
            .text
            .find("->")
            .ok_or_else(|| line.error("expected 'inputs -> output'"))?;
        let lhs = line.slice(0, arrow);
        let rhs = line.slice(arrow + 2, line.text.len());
        let mut cur = lhs.cursor();
        let mut input = Vec::with_capacity(memory.len());
        while !cur.at_end() {
            let v = symbol(&mut cur)?;
            if v >= q {
                return Err(cur.error(format!("symbol {v} is outside the alphabet")));
            }
            input.push(v);
        }
        if input.len() != memory.len() {
            return Err(lhs.error(format!("expected {} input symbols, found {}", memory.len(), input.len())));
        }
        let out: Symbol = rhs.parse_int("an output symbol")?;
        if out >= q {
            return Err(rhs.error(format!("output {out} is outside the alphabet")));
        }
        let slot = &mut table[codec.encode(&input) as usize];
        if slot.replace(out).is_some() {
            return Err(line.error("input tuple listed twice"));
        }
        i += 1;
    }
    let missing = table.iter().filter(|v| v.is_none()).count();
    if missing > 0 {
        return Err(ls[i].error(format!("rule '{name}' leaves {missing} input tuples undefined")));
    }
    let table = RuleTable::new(name, memory.clone(), q, table.into_iter().map(|v| v.expect("checked")).collect())
        .map_err(|e| ls[start - 1].error(e.to_string()))?;
    Ok((table, i))
}

fn memory_line(memory: &FiniteSet) -> String {
    let cs: Vec<String> = memory.iter().map(|c| c.to_string()).collect();
    cs.join(" ")
}

/// Named rules, the default's name, and each region with its rule name.
pub(crate) type NamedRules<'r, R> = (Vec<(String, &'r R)>, String, Vec<(&'r LatticeSet, String)>);

/// Distinct names for the rules of an assignment, default first.
pub(crate) fn named_rules<'r, R>(
    default: &'r R,
    regions: impl Iterator<Item = (&'r LatticeSet, &'r R)>,
    name: impl Fn(&R) -> &str,
    same: impl Fn(&R, &R) -> bool,
) -> NamedRules<'r, R> {
    let mut named: Vec<(String, &R)> = Vec::new();
    let assign = |r: &'r R, named: &mut Vec<(String, &'r R)>| -> String {
        if let Some((n, _)) = named.iter().find(|(n, s)| n == name(r) && same(s, r)) {
            return n.clone();
        }
        let base = if name(r).is_empty() { "rule" } else { name(r) };
        let mut candidate = base.to_string();
        let mut k = 2;
        while named.iter().any(|(n, _)| *n == candidate) {
            candidate = format!("{base}_{k}");
            k += 1;
        }
        named.push((candidate.clone(), r));
        candidate
    };
    let d = assign(default, &mut named);
    let regions: Vec<(&LatticeSet, String)> = regions.map(|(s, r)| (s, assign(r, &mut named))).collect();
    (named, d, regions)
}

/// Canonical text with explicit tables; `parse_rules` inverts it.
pub fn write_rules(a: &RuleAssignment) -> String {
    let mut out = format!(
        "nuca 1\ndim {}\nalphabet {}\nmemory {}\n",
        a.dim().rank(),
        a.alphabet(),
        memory_line(a.memory())
    );
    let (named, default, regions) = named_rules(a.default_rule(), a.regions(), |r| r.name(), |x, y| x.same_map(y));
    let codec = a.default_rule().codec();
    let mut buf = vec![0; a.memory().len()];
    for (name, rule) in &named {
        out.push_str(&format!("\nrule {name}\n"));
        for (k, v) in rule.entries().iter().enumerate() {
            codec.decode_into(k as u128, &mut buf);
            let ins: Vec<String> = buf.iter().map(|s| s.to_string()).collect();
            out.push_str(&format!("  {} -> {v}\n", ins.join(" ")));
        }
        out.push_str("end\n");
    }
    out.push_str(&format!("\ndefault {default}\n"));
    for (set, name) in regions {
        out.push_str(&format!("region {set} -> {name}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::error::Error;

    const EXAMPLE: &str = "\
# Identity with zeros on 3Z.
nuca 1
dim 1
alphabet 2
memory -1 0 1

rule id = project 0
rule zero = constant 0
default id
region coset(3,0) -> zero
";

    #[test]
    fn parses_shorthands() {
        let a = parse_rules(EXAMPLE).unwrap();
        assert_eq!(a.rule_at(Cell::d1(3)).name(), "zero");
        assert_eq!(a.rule_at(Cell::d1(4)).apply(&[0, 1, 0]), 1);
        let text = write_rules(&a);
        assert_eq!(write_rules(&parse_rules(&text).unwrap()), text);
    }

    #[test]
    fn catalog_round_trips() {
        for a in [catalog::example1(), catalog::example2_tau(), catalog::example2_sigma(), catalog::example3()] {
            let text = write_rules(&a);
            let b = parse_rules(&text).unwrap();
            assert_eq!(write_rules(&b), text);
            assert!(b.default_rule().same_map(a.default_rule()));
            assert_eq!(b.regions().count(), a.regions().count());
        }
    }

    #[test]
    fn explicit_tables() {
        let src = "nuca 1\ndim 1\nalphabet 2\nmemory 0 1\nrule x\n0 0 -> 0\n0 1 -> 1\n1 0 -> 1\n1 1 -> 0\nend\ndefault x\n";
        let a = parse_rules(src).unwrap();
        assert_eq!(a.default_rule().apply(&[1, 1]), 0);
        assert_eq!(a.default_rule().apply(&[0, 1]), 1);
    }

    fn err_line(src: &str) -> usize {
        match parse_rules(src).unwrap_err() {
            Error::Parse { line, .. } => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_have_positions() {
        let base = "nuca 1\ndim 1\nalphabet 2\nmemory 0 1\n";
        assert_eq!(err_line(&format!("{base}rule x\n0 0 -> 0\nend\ndefault x\n")), 7);
        assert_eq!(err_line(&format!("{base}rule x\n0 0 -> 2\nend\n")), 6);
        assert_eq!(err_line(&format!("{base}default y\n")), 5);
        assert_eq!(err_line(&format!("{base}rule x = constant 0\ndefault x\nregion bogus(1) -> x\n")), 7);
        assert_eq!(err_line("nuca 1\ndim 1\nalphabet 2\nmemory 1 0\n"), 4);
        assert_eq!(err_line("nuca 2\n"), 1);
        assert!(matches!(parse_rules(&format!("{base}rule x = constant 0\n")), Err(Error::Parse { .. })));
    }
}
