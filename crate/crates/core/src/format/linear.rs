//! Linear rule files (`.lnuca`).
//!
//! ```text
//! file      := 'lnuca 1' header {item}
//! header    := 'dim' (1|2)  'field' p  'k' int  'memory' cells
//! item      := 'rule' NAME NEWLINE {'at' cell '=' matrix} 'end'
//!            | 'rule' NAME '=' ('scalar' int{|M|} | 'project' cell | 'zero')
//!            | 'default' NAME
//!            | 'region' <set expression> '->' NAME
//! matrix    := row {';' row}         k rows of k entries in 0..p
//! ```
//!
//! Offsets missing from a block rule have the zero matrix. Symbols of the
//! equivalent rule table encode `(x_0, .., x_{k-1})` in base `p`, `x_0` most
//! significant.

use std::collections::BTreeMap;

use super::lines::{check_name, expect_header, lines, Line};
use super::rules::{assemble, named_rules, parse_cell_text, read_header, region_line, rule_head, Item};
use crate::error::Result;
use crate::lattice::{Dim, FiniteSet};
use crate::linear::{Field, LinearAssignment, LinearRule, Matrix};

pub fn parse_linear(src: &str) -> Result<LinearAssignment> {
    let ls = lines(src);
    expect_header(&ls, "lnuca")?;
    let (header, values, mut i) = read_header(&ls, &["field", "k"])?;
    let p_line = values["field"];
    let field = Field::new(p_line.parse_int("a prime")?).map_err(|e| p_line.error(e.to_string()))?;
    let k_line = values["k"];
    let k: usize = k_line.parse_int("a positive integer")?;
    if k == 0 || k > 16 {
        return Err(k_line.error("k must lie in 1..=16"));
    }
    let (dim, memory) = (header.dim, header.memory);
    let mut rules: BTreeMap<String, LinearRule> = BTreeMap::new();
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
                let rule = match def {
                    Some(def) => shorthand(&name, &def, field, &memory, k, dim)?,
                    None => {
                        let (r, next) = block(&ls, i + 1, &name, field, &memory, k, dim)?;
                        i = next;
                        r
                    }
                };
                rules.insert(name, rule);
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
            out = Some(LinearAssignment::new(field, d, r)?);
            Ok(())
        },
        end,
    )?;
    Ok(out.expect("assembled"))
}

fn shorthand(name: &str, def: &Line<'_>, field: Field, memory: &FiniteSet, k: usize, dim: Dim) -> Result<LinearRule> {
    let (kind, arg) = def.split_word();
    let wrap = |r: Result<LinearRule>| r.map_err(|e| def.error(e.to_string()));
    match kind {
        "scalar" => {
            let ws = arg
                .text
                .split_whitespace()
                .map(|w| w.parse::<u8>())
                .collect::<std::result::Result<Vec<u8>, _>>()
                .map_err(|_| arg.error("scalar weights must be integers in 0..p"))?;
            if ws.len() != memory.len() {
                return Err(arg.error(format!("expected {} weights, found {}", memory.len(), ws.len())));
            }
            if ws.iter().any(|&w| !field.contains(w)) {
                return Err(arg.error(format!("scalar weight outside {field}")));
            }
            wrap(LinearRule::scalar(name, field, memory.clone(), k, &ws))
        }
        "project" => wrap(LinearRule::projection(name, field, memory.clone(), k, parse_cell_text(&arg, dim)?)),
        "zero" if arg.text.is_empty() => wrap(LinearRule::zero(name, field, memory.clone(), k)),
        _ => Err(def.error(format!("unknown rule shorthand '{}'", def.text))),
    }
}

fn matrix(line: &Line<'_>, field: Field, k: usize) -> Result<Matrix> {
    let rows: Vec<&str> = line.text.split(';').collect();
    if rows.len() != k {
        return Err(line.error(format!("expected {k} matrix rows, found {}", rows.len())));
    }
    let mut out = Vec::with_capacity(k);
    for r in rows {
        let row = r
            .split_whitespace()
            .map(|w| w.parse::<u8>())
            .collect::<std::result::Result<Vec<u8>, _>>()
            .map_err(|_| line.error("matrix entries must be integers"))?;
        if row.len() != k {
            return Err(line.error(format!("expected {k} entries per row, found {}", row.len())));
        }
        if row.iter().any(|&v| !field.contains(v)) {
            return Err(line.error(format!("matrix entry outside {field}")));
        }
        out.push(row);
    }
    Ok(Matrix::from_rows(k, &out))
}

fn block(
    ls: &[Line<'_>],
    start: usize,
    name: &str,
    field: Field,
    memory: &FiniteSet,
    k: usize,
    dim: Dim,
) -> Result<(LinearRule, usize)> {
    let mut coeffs: Vec<Option<Matrix>> = vec![None; memory.len()];
    let mut i = start;
    loop {
        let Some(line) = ls.get(i) else {
            return Err(ls[start - 1].error(format!("rule '{name}' is missing its 'end' line")));
        };
        if line.text == "end" {
            break;
        }
        let (word, rest) = line.split_word();
        if word != "at" {
            return Err(line.error("expected 'at CELL = MATRIX' or 'end'"));
        }
        let eq = rest.text.find('=').ok_or_else(|| rest.error("expected '='"))?;
        let cell = parse_cell_text(&rest.slice(0, eq), dim)?;
        let idx = memory
            .index_of(&cell)
            .ok_or_else(|| rest.error(format!("offset {cell} is not in the memory")))?;
        let m = matrix(&rest.slice(eq + 1, rest.text.len()), field, k)?;
        if coeffs[idx].replace(m).is_some() {
            return Err(line.error(format!("offset {cell} given twice")));
        }
        i += 1;
    }
    let coeffs = coeffs.into_iter().map(|m| m.unwrap_or_else(|| Matrix::zeros(k, k))).collect();
    let rule = LinearRule::new(name, field, memory.clone(), k, coeffs).map_err(|e| ls[start - 1].error(e.to_string()))?;
    Ok((rule, i))
}

/// Canonical text with one `at` line per nonzero block.
pub fn write_linear(a: &LinearAssignment) -> String {
    let cs: Vec<String> = a.memory().iter().map(|c| c.to_string()).collect();
    let mut out = format!(
        "lnuca 1\ndim {}\nfield {}\nk {}\nmemory {}\n",
        a.dim().rank(),
        a.field().order(),
        a.k(),
        cs.join(" ")
    );
    let (named, default, regions) = named_rules(a.default_rule(), a.regions(), |r| r.name(), |x, y| x.coeffs() == y.coeffs());
    for (name, rule) in &named {
        out.push_str(&format!("\nrule {name}\n"));
        for (m, b) in a.memory().iter().zip(rule.coeffs()) {
            if b.is_zero() {
                continue;
            }
            let rows: Vec<String> = (0..b.rows())
                .map(|r| b.row(r).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            out.push_str(&format!("  at {m} = {}\n", rows.join("; ")));
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
    use crate::lattice::Cell;

    #[test]
    fn round_trips() {
        for a in [
            catalog::linear_xor_pair(),
            catalog::linear_example1(),
            catalog::linear_identity_off(3),
            catalog::linear_zero(Dim::Two),
        ] {
            let text = write_linear(&a);
            let b = parse_linear(&text).unwrap();
            assert_eq!(write_linear(&b), text);
            assert_eq!(b.default_rule().coeffs(), a.default_rule().coeffs());
        }
    }

    #[test]
    fn block_rules_over_f3() {
        let src = "lnuca 1\ndim 1\nfield 3\nk 2\nmemory 0 1\nrule r\n  at 1 = 1 2; 0 1\nend\nrule s = scalar 2 0\ndefault r\nregion finite{0} -> s\n";
        let a = parse_linear(src).unwrap();
        assert_eq!(a.k(), 2);
        assert!(a.rule_at(Cell::d1(1)).coeffs()[0].is_zero());
        assert_eq!(a.rule_at(Cell::d1(1)).coeffs()[1].get(0, 1), 2);
        assert_eq!(a.rule_at(Cell::d1(0)).name(), "s");
    }

    #[test]
    fn errors() {
        let base = "lnuca 1\ndim 1\nfield 2\nk 1\nmemory 0 1\n";
        for (src, line) in [
            (format!("{base}rule r\n at 0 = 2\nend\ndefault r\n"), 7),
            (format!("{base}rule r\n at 5 = 1\nend\ndefault r\n"), 7),
            (format!("{base}rule r = scalar 1\ndefault r\n"), 6),
            ("lnuca 1\ndim 1\nfield 4\nk 1\nmemory 0\n".to_string(), 3),
        ] {
            match parse_linear(&src) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
    }
}
