use std::sync::Arc;

use crate::density::LatticeSet;
use crate::error::{Error, Result};
use crate::lattice::{check_dim, Cell, Dim, FiniteSet, KeyCodec, Symbol};

/// Largest rule table accepted (`q^|M|` entries).
pub const MAX_TABLE_ENTRIES: u128 = 1 << 24;

/// A local map `A^M -> A`. Inputs are read in the sorted order of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleTable {
    name: String,
    memory: FiniteSet,
    alphabet: u8,
    codec: KeyCodec,
    table: Vec<Symbol>,
}

impl RuleTable {
    pub fn new(name: impl Into<String>, memory: FiniteSet, alphabet: u8, table: Vec<Symbol>) -> Result<RuleTable> {
        let codec = KeyCodec::new(alphabet, memory.len())?;
        if codec.count() > MAX_TABLE_ENTRIES {
            return Err(Error::budget(
                "building a rule table",
                format!("{alphabet}^{}", memory.len()),
                MAX_TABLE_ENTRIES,
            ));
        }
        if table.len() as u128 != codec.count() {
            return Err(Error::Invalid(format!(
                "rule table needs {} entries, got {}",
                codec.count(),
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= alphabet) {
            return Err(Error::Invalid(format!("rule output {bad} is outside the alphabet")));
        }
        Ok(RuleTable {
            name: name.into(),
            memory,
            alphabet,
            codec,
            table,
        })
    }

    /// Table built by evaluating `f` on every input in lexicographic order.
    pub fn from_fn(
        name: impl Into<String>,
        memory: FiniteSet,
        alphabet: u8,
        mut f: impl FnMut(&[Symbol]) -> Symbol,
    ) -> Result<RuleTable> {
        let codec = KeyCodec::new(alphabet, memory.len())?;
        if codec.count() > MAX_TABLE_ENTRIES {
            return Err(Error::budget(
                "building a rule table",
                format!("{alphabet}^{}", memory.len()),
                MAX_TABLE_ENTRIES,
            ));
        }
        let mut buf = vec![0; memory.len()];
        let table = (0..codec.count())
            .map(|k| {
                codec.decode_into(k, &mut buf);
                f(&buf)
            })
            .collect();
        RuleTable::new(name, memory, alphabet, table)
    }

    /// `x(g + offset)`.
    pub fn projection(name: impl Into<String>, memory: FiniteSet, alphabet: u8, offset: Cell) -> Result<RuleTable> {
        let i = memory
            .index_of(&offset)
            .ok_or_else(|| Error::Invalid(format!("projection offset {offset} is not in the memory set")))?;
        RuleTable::from_fn(name, memory, alphabet, |x| x[i])
    }

    pub fn constant(name: impl Into<String>, memory: FiniteSet, alphabet: u8, s: Symbol) -> Result<RuleTable> {
        RuleTable::from_fn(name, memory, alphabet, |_| s)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> RuleTable {
        self.name = name.into();
        self
    }

    pub fn memory(&self) -> &FiniteSet {
        &self.memory
    }

    pub fn alphabet(&self) -> u8 {
        self.alphabet
    }

    pub fn entries(&self) -> &[Symbol] {
        &self.table
    }

    pub fn codec(&self) -> KeyCodec {
        self.codec
    }

    #[inline]
    pub fn apply(&self, input: &[Symbol]) -> Symbol {
        self.table[self.codec.encode(input) as usize]
    }

    /// Same outputs, ignoring names.
    pub fn same_map(&self, other: &RuleTable) -> bool {
        self.memory == other.memory && self.alphabet == other.alphabet && self.table == other.table
    }
}

/// A configuration of local rules: first matching region wins, else the default.
#[derive(Clone, Debug)]
pub struct RuleAssignment {
    dim: Dim,
    alphabet: u8,
    memory: FiniteSet,
    regions: Vec<(LatticeSet, Arc<RuleTable>)>,
    default: Arc<RuleTable>,
}

impl RuleAssignment {
    /// A cellular automaton: one rule everywhere.
    pub fn uniform(rule: RuleTable) -> RuleAssignment {
        RuleAssignment {
            dim: rule.memory.dim(),
            alphabet: rule.alphabet,
            memory: rule.memory.clone(),
            regions: Vec::new(),
            default: Arc::new(rule),
        }
    }

    pub fn new(default: RuleTable, regions: Vec<(LatticeSet, RuleTable)>) -> Result<RuleAssignment> {
        let mut a = RuleAssignment::uniform(default);
        for (set, rule) in regions {
            a.push_region(set, rule)?;
        }
        Ok(a)
    }

    pub fn push_region(&mut self, set: LatticeSet, rule: RuleTable) -> Result<()> {
        let d = set.validate()?;
        check_dim(self.dim, d)?;
        if rule.memory != self.memory {
            return Err(Error::Invalid(format!(
                "rule '{}' has memory {} but the assignment uses {}",
                rule.name, rule.memory, self.memory
            )));
        }
        if rule.alphabet != self.alphabet {
            return Err(Error::Invalid(format!(
                "rule '{}' has alphabet {} but the assignment uses {}",
                rule.name, rule.alphabet, self.alphabet
            )));
        }
        self.regions.push((set, Arc::new(rule)));
        Ok(())
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn alphabet(&self) -> u8 {
        self.alphabet
    }

    pub fn memory(&self) -> &FiniteSet {
        &self.memory
    }

    /// `max |m|` over the memory set.
    pub fn memory_radius(&self) -> i64 {
        self.memory.radius()
    }

    pub fn regions(&self) -> impl Iterator<Item = (&LatticeSet, &RuleTable)> {
        self.regions.iter().map(|(s, r)| (s, r.as_ref()))
    }

    pub fn default_rule(&self) -> &RuleTable {
        &self.default
    }

    pub fn is_uniform(&self) -> bool {
        self.regions.is_empty()
    }

    /// Index of the rule at `g`: region position, or `regions.len()` for the default.
    pub fn rule_index(&self, g: Cell) -> usize {
        self.regions
            .iter()
            .position(|(s, _)| s.contains(g))
            .unwrap_or(self.regions.len())
    }

    pub fn rule_by_index(&self, i: usize) -> &RuleTable {
        match self.regions.get(i) {
            Some((_, r)) => r,
            None => &self.default,
        }
    }

    pub fn rule_at(&self, g: Cell) -> &RuleTable {
        self.rule_by_index(self.rule_index(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_total_and_checked() {
        let m = FiniteSet::interval(0, 1);
        let xor = RuleTable::from_fn("xor", m.clone(), 2, |x| x[0] ^ x[1]).unwrap();
        assert_eq!(xor.entries(), &[0, 1, 1, 0]);
        assert_eq!(xor.apply(&[1, 0]), 1);
        assert!(RuleTable::new("bad", m.clone(), 2, vec![0, 1, 1]).is_err());
        assert!(RuleTable::new("bad", m.clone(), 2, vec![0, 1, 1, 2]).is_err());
        assert!(RuleTable::projection("p", m, 2, Cell::d1(3)).is_err());
    }

    #[test]
    fn first_region_wins() {
        let m = FiniteSet::interval(-1, 1);
        let id = RuleTable::projection("id", m.clone(), 2, Cell::d1(0)).unwrap();
        let left = RuleTable::projection("left", m.clone(), 2, Cell::d1(-1)).unwrap();
        let right = RuleTable::projection("right", m.clone(), 2, Cell::d1(1)).unwrap();
        let a = RuleAssignment::new(
            id,
            vec![
                (LatticeSet::half_space(Cell::d1(1), 1).unwrap(), left),
                (LatticeSet::half_space(Cell::d1(1), 0).unwrap(), right),
            ],
        )
        .unwrap();
        assert_eq!(a.rule_at(Cell::d1(5)).name(), "left");
        assert_eq!(a.rule_at(Cell::d1(0)).name(), "right");
        assert_eq!(a.rule_at(Cell::d1(-2)).name(), "id");
    }

    #[test]
    fn mismatched_memory_is_rejected() {
        let id = RuleTable::projection("id", FiniteSet::interval(-1, 1), 2, Cell::d1(0)).unwrap();
        let other = RuleTable::projection("o", FiniteSet::interval(0, 1), 2, Cell::d1(0)).unwrap();
        assert!(RuleAssignment::new(id, vec![(LatticeSet::All(Dim::One), other)]).is_err());
    }
}
