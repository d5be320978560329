use std::fmt;

use super::cell::{Cell, Dim};
use super::finite::FiniteSet;
use crate::error::{Error, Result};

/// Alphabet symbols are indices `0..q`.
pub type Symbol = u8;

/// A finite assignment of symbols to the cells of its support.
///
/// `values[i]` belongs to `support.cells()[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    support: FiniteSet,
    values: Vec<Symbol>,
}

impl Pattern {
    pub fn new(support: FiniteSet, values: Vec<Symbol>) -> Result<Pattern> {
        if support.len() != values.len() {
            return Err(Error::Invalid(format!(
                "pattern has {} values for {} cells",
                values.len(),
                support.len()
            )));
        }
        Ok(Pattern { support, values })
    }

    /// The unique pattern on the empty set.
    pub fn empty(dim: Dim) -> Pattern {
        Pattern {
            support: FiniteSet::empty(dim),
            values: Vec::new(),
        }
    }

    pub fn from_fn(support: FiniteSet, mut f: impl FnMut(Cell) -> Symbol) -> Pattern {
        let values = support.iter().map(|&c| f(c)).collect();
        Pattern { support, values }
    }

    pub fn constant(support: FiniteSet, s: Symbol) -> Pattern {
        let values = vec![s; support.len()];
        Pattern { support, values }
    }

    pub fn support(&self) -> &FiniteSet {
        &self.support
    }

    pub fn values(&self) -> &[Symbol] {
        &self.values
    }

    pub fn dim(&self) -> Dim {
        self.support.dim()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, c: &Cell) -> Option<Symbol> {
        self.support.index_of(c).map(|i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Cell, Symbol)> + '_ {
        self.support.iter().copied().zip(self.values.iter().copied())
    }

    /// Restriction to `sub`, which must be contained in the support.
    pub fn restrict(&self, sub: &FiniteSet) -> Result<Pattern> {
        let mut values = Vec::with_capacity(sub.len());
        for c in sub {
            match self.get(c) {
                Some(v) => values.push(v),
                None => {
                    return Err(Error::Invalid(format!(
                        "cell {c} is outside the pattern support"
                    )))
                }
            }
        }
        Ok(Pattern {
            support: sub.clone(),
            values,
        })
    }

    pub fn translate(&self, g: Cell) -> Result<Pattern> {
        Ok(Pattern {
            support: self.support.translate(g)?,
            values: self.values.clone(),
        })
    }

    pub fn max_symbol(&self) -> Option<Symbol> {
        self.values.iter().copied().max()
    }
}

impl fmt::Display for Pattern {
    /// `cell:symbol` pairs, comma separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (c, v)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}:{v}")?;
        }
        write!(f, "]")
    }
}
