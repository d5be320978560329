use std::collections::BTreeMap;

use super::cell::{Cell, Dim};
use super::finite::{check_dim, FiniteSet};
use super::pattern::{Pattern, Symbol};
use super::period::PeriodLattice;
use crate::error::{Error, Result};

/// Anything that assigns a symbol to every cell of `Z^d`.
pub trait CellSource {
    fn dim(&self) -> Dim;
    fn symbol_at(&self, c: Cell) -> Symbol;

    /// `x|_F`.
    fn restrict(&self, window: &FiniteSet) -> Pattern {
        Pattern::from_fn(window.clone(), |c| self.symbol_at(c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Background {
    Constant(Symbol),
    /// `domain[i]` is the symbol on the `i`-th class of `lattice`.
    Periodic {
        lattice: PeriodLattice,
        domain: Vec<Symbol>,
    },
}

/// A configuration given by a structured background plus finitely many
/// overrides. Overrides win over the background.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    dim: Dim,
    background: Background,
    /// Translation applied to the background.
    offset: Cell,
    overrides: BTreeMap<Cell, Symbol>,
}

impl Configuration {
    pub fn constant(dim: Dim, s: Symbol) -> Configuration {
        Configuration {
            dim,
            background: Background::Constant(s),
            offset: Cell::origin(dim),
            overrides: BTreeMap::new(),
        }
    }

    pub fn periodic(lattice: PeriodLattice, domain: Vec<Symbol>) -> Result<Configuration> {
        if domain.len() as u64 != lattice.index() {
            return Err(Error::Invalid(format!(
                "periodic background needs {} symbols, got {}",
                lattice.index(),
                domain.len()
            )));
        }
        let dim = lattice.dim();
        Ok(Configuration {
            dim,
            background: Background::Periodic { lattice, domain },
            offset: Cell::origin(dim),
            overrides: BTreeMap::new(),
        })
    }

    /// Replaces the value at each cell of `p`.
    pub fn with_pattern(mut self, p: &Pattern) -> Result<Configuration> {
        check_dim(self.dim, p.dim())?;
        for (c, v) in p.iter() {
            self.overrides.insert(c, v);
        }
        Ok(self)
    }

    pub fn with_override(mut self, c: Cell, s: Symbol) -> Result<Configuration> {
        check_dim(self.dim, c.dim())?;
        self.overrides.insert(c, s);
        Ok(self)
    }

    pub fn background(&self) -> &Background {
        &self.background
    }

    pub fn overrides(&self) -> &BTreeMap<Cell, Symbol> {
        &self.overrides
    }

    pub fn background_offset(&self) -> Cell {
        self.offset
    }

    /// `y(h) = x(h - g)`.
    pub fn shift(&self, g: Cell) -> Result<Configuration> {
        check_dim(self.dim, g.dim())?;
        Ok(Configuration {
            dim: self.dim,
            background: self.background.clone(),
            offset: self.offset + g,
            overrides: self.overrides.iter().map(|(&c, &v)| (c + g, v)).collect(),
        })
    }

    fn background_at(&self, c: Cell) -> Symbol {
        match &self.background {
            Background::Constant(s) => *s,
            Background::Periodic { lattice, domain } => domain[lattice.class_index(c - self.offset)],
        }
    }

    pub fn max_symbol(&self) -> Symbol {
        let bg = match &self.background {
            Background::Constant(s) => *s,
            Background::Periodic { domain, .. } => domain.iter().copied().max().unwrap_or(0),
        };
        self.overrides.values().copied().fold(bg, Symbol::max)
    }
}

impl CellSource for Configuration {
    fn dim(&self) -> Dim {
        self.dim
    }

    fn symbol_at(&self, c: Cell) -> Symbol {
        match self.overrides.get(&c) {
            Some(&v) => v,
            None => self.background_at(c),
        }
    }
}

/// `shift(x, g)`.
pub fn shift(x: &Configuration, g: Cell) -> Result<Configuration> {
    x.shift(g)
}

/// `x|_F`.
pub fn restrict<S: CellSource + ?Sized>(x: &S, window: &FiniteSet) -> Result<Pattern> {
    check_dim(x.dim(), window.dim())?;
    Ok(x.restrict(window))
}
