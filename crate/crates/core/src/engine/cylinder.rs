use std::collections::BTreeMap;

use crate::density::LatticeSet;
use crate::error::{Error, Result};
use crate::lattice::{check_dim, Cell, Dim, FiniteSet, Pattern, Symbol};

/// `U = {p} × A^{G \ S}` with `p` given by a background symbol on `S` and
/// finitely many overrides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cylinder {
    set: LatticeSet,
    background: Symbol,
    overrides: BTreeMap<Cell, Symbol>,
}

impl Cylinder {
    /// The whole configuration space (`S = ∅`).
    pub fn full(dim: Dim) -> Cylinder {
        Cylinder {
            set: LatticeSet::Empty(dim),
            background: 0,
            overrides: BTreeMap::new(),
        }
    }

    pub fn new(set: LatticeSet, background: Symbol) -> Result<Cylinder> {
        set.validate()?;
        Ok(Cylinder {
            set,
            background,
            overrides: BTreeMap::new(),
        })
    }

    /// Cylinder pinned to a finite pattern.
    pub fn from_pattern(p: &Pattern) -> Cylinder {
        Cylinder {
            set: LatticeSet::Finite(p.support().clone()),
            background: 0,
            overrides: p.iter().collect(),
        }
    }

    pub fn with_override(mut self, c: Cell, s: Symbol) -> Result<Cylinder> {
        check_dim(self.set.dim(), c.dim())?;
        if !self.set.contains(c) {
            return Err(Error::Invalid(format!("override at {c} lies outside the pinned set")));
        }
        self.overrides.insert(c, s);
        Ok(self)
    }

    pub fn dim(&self) -> Dim {
        self.set.dim()
    }

    pub fn set(&self) -> &LatticeSet {
        &self.set
    }

    pub fn background(&self) -> Symbol {
        self.background
    }

    pub fn overrides(&self) -> &BTreeMap<Cell, Symbol> {
        &self.overrides
    }

    /// `p(c)` when `c ∈ S`.
    pub fn pinned(&self, c: Cell) -> Option<Symbol> {
        if self.set.contains(c) {
            Some(self.overrides.get(&c).copied().unwrap_or(self.background))
        } else {
            None
        }
    }

    pub fn is_pinned(&self, c: Cell) -> bool {
        self.set.contains(c)
    }

    /// `p` restricted to `S ∩ window`.
    pub fn pattern_on(&self, window: &FiniteSet) -> Pattern {
        let cells = window.filter(|c| self.set.contains(*c));
        Pattern::from_fn(cells, |c| self.pinned(c).expect("filtered to S"))
    }

    /// Checks symbols against the alphabet.
    pub fn check_alphabet(&self, alphabet: u8) -> Result<()> {
        let bg = (!matches!(self.set, LatticeSet::Empty(_))).then_some(&self.background);
        match self.overrides.values().chain(bg).find(|&&v| v >= alphabet) {
            Some(v) => Err(Error::Invalid(format!(
                "cylinder symbol {v} is outside the alphabet of size {alphabet}"
            ))),
            None => Ok(()),
        }
    }
}
