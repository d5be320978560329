use std::fmt;

use super::cell::{Cell, Dim};
use crate::error::{Error, Result};

/// A finite subset of `Z^d`, stored sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSet {
    dim: Dim,
    cells: Vec<Cell>,
}

pub(crate) fn check_dim(expected: Dim, found: Dim) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

impl FiniteSet {
    pub fn empty(dim: Dim) -> FiniteSet {
        FiniteSet {
            dim,
            cells: Vec::new(),
        }
    }

    pub fn new(dim: Dim, cells: impl IntoIterator<Item = Cell>) -> Result<FiniteSet> {
        let mut cells: Vec<Cell> = cells.into_iter().collect();
        for c in &cells {
            check_dim(dim, c.dim())?;
        }
        cells.sort_unstable();
        cells.dedup();
        Ok(FiniteSet { dim, cells })
    }

    /// Caller guarantees every cell has dimension `dim`.
    pub(crate) fn from_cells_unchecked(dim: Dim, mut cells: Vec<Cell>) -> FiniteSet {
        cells.sort_unstable();
        cells.dedup();
        FiniteSet { dim, cells }
    }

    pub fn singleton(c: Cell) -> FiniteSet {
        FiniteSet {
            dim: c.dim(),
            cells: vec![c],
        }
    }

    /// The integer interval `[lo, hi]` in `Z` (empty when `lo > hi`).
    pub fn interval(lo: i64, hi: i64) -> FiniteSet {
        FiniteSet {
            dim: Dim::One,
            cells: (lo..=hi).map(Cell::d1).collect(),
        }
    }

    /// The rectangle `[x0, x1] x [y0, y1]` in `Z^2`.
    pub fn rect(x0: i64, x1: i64, y0: i64, y1: i64) -> FiniteSet {
        let mut cells = Vec::new();
        for x in x0..=x1 {
            for y in y0..=y1 {
                cells.push(Cell::d2(x, y));
            }
        }
        FiniteSet {
            dim: Dim::Two,
            cells,
        }
    }

    /// The centered box `[-k, k]^d`.
    pub fn centered_box(dim: Dim, k: i64) -> FiniteSet {
        match dim {
            Dim::One => FiniteSet::interval(-k, k),
            Dim::Two => FiniteSet::rect(-k, k, -k, k),
        }
    }

    /// `[lo, hi]^d`.
    pub fn cube(dim: Dim, lo: i64, hi: i64) -> FiniteSet {
        match dim {
            Dim::One => FiniteSet::interval(lo, hi),
            Dim::Two => FiniteSet::rect(lo, hi, lo, hi),
        }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Cell> {
        self.cells.iter()
    }

    pub fn contains(&self, c: &Cell) -> bool {
        self.cells.binary_search(c).is_ok()
    }

    /// Position of `c` in the sorted cell list.
    pub fn index_of(&self, c: &Cell) -> Option<usize> {
        self.cells.binary_search(c).ok()
    }

    /// `F + M = {f + m}`.
    pub fn minkowski(&self, other: &FiniteSet) -> Result<FiniteSet> {
        check_dim(self.dim, other.dim)?;
        let mut out = Vec::with_capacity(self.len() * other.len());
        for &f in &self.cells {
            for &m in &other.cells {
                out.push(f + m);
            }
        }
        Ok(FiniteSet::from_cells_unchecked(self.dim, out))
    }

    /// `{-m : m in M}`.
    pub fn negate(&self) -> FiniteSet {
        FiniteSet::from_cells_unchecked(self.dim, self.cells.iter().map(|&c| -c).collect())
    }

    pub fn translate(&self, g: Cell) -> Result<FiniteSet> {
        check_dim(self.dim, g.dim())?;
        // translation preserves order
        Ok(FiniteSet {
            dim: self.dim,
            cells: self.cells.iter().map(|&c| c + g).collect(),
        })
    }

    /// The M-interior `{g in F : g + M ⊆ F}`.
    pub fn interior(&self, memory: &FiniteSet) -> Result<FiniteSet> {
        check_dim(self.dim, memory.dim)?;
        let cells = self
            .cells
            .iter()
            .copied()
            .filter(|&g| memory.cells.iter().all(|&m| self.contains(&(g + m))))
            .collect();
        Ok(FiniteSet {
            dim: self.dim,
            cells,
        })
    }

    /// The M-boundary `FM \ F^{-M}`.
    pub fn boundary(&self, memory: &FiniteSet) -> Result<FiniteSet> {
        let sum = self.minkowski(memory)?;
        let inner = self.interior(memory)?;
        Ok(sum.difference(&inner))
    }

    pub fn union(&self, other: &FiniteSet) -> FiniteSet {
        debug_assert_eq!(self.dim, other.dim);
        let mut cells = self.cells.clone();
        cells.extend_from_slice(&other.cells);
        FiniteSet::from_cells_unchecked(self.dim, cells)
    }

    pub fn intersection(&self, other: &FiniteSet) -> FiniteSet {
        FiniteSet {
            dim: self.dim,
            cells: self
                .cells
                .iter()
                .copied()
                .filter(|c| other.contains(c))
                .collect(),
        }
    }

    pub fn difference(&self, other: &FiniteSet) -> FiniteSet {
        FiniteSet {
            dim: self.dim,
            cells: self
                .cells
                .iter()
                .copied()
                .filter(|c| !other.contains(c))
                .collect(),
        }
    }

    pub fn filter(&self, mut keep: impl FnMut(&Cell) -> bool) -> FiniteSet {
        FiniteSet {
            dim: self.dim,
            cells: self.cells.iter().copied().filter(|c| keep(c)).collect(),
        }
    }

    pub fn is_subset(&self, other: &FiniteSet) -> bool {
        self.cells.iter().all(|c| other.contains(c))
    }

    pub fn is_disjoint(&self, other: &FiniteSet) -> bool {
        self.cells.iter().all(|c| !other.contains(c))
    }

    /// Coordinate-wise bounds `(min, max)`, or `None` for the empty set.
    pub fn bounds(&self) -> Option<(Cell, Cell)> {
        let first = *self.cells.first()?;
        let (mut lo, mut hi) = ([first.x(), first.y()], [first.x(), first.y()]);
        for c in &self.cells {
            lo[0] = lo[0].min(c.x());
            lo[1] = lo[1].min(c.y());
            hi[0] = hi[0].max(c.x());
            hi[1] = hi[1].max(c.y());
        }
        Some(match self.dim {
            Dim::One => (Cell::d1(lo[0]), Cell::d1(hi[0])),
            Dim::Two => (Cell::d2(lo[0], lo[1]), Cell::d2(hi[0], hi[1])),
        })
    }

    /// True when the set is a full axis-parallel box (intervals in `Z`).
    pub fn is_box(&self) -> bool {
        match self.bounds() {
            None => false,
            Some((lo, hi)) => {
                let w = (hi.x() - lo.x() + 1) as usize;
                let h = (hi.y() - lo.y() + 1) as usize;
                w * h == self.len()
            }
        }
    }

    /// Largest sup norm of a member, 0 for the empty set.
    pub fn radius(&self) -> i64 {
        self.cells.iter().map(Cell::norm).max().unwrap_or(0)
    }
}

impl<'a> IntoIterator for &'a FiniteSet {
    type Item = &'a Cell;
    type IntoIter = std::slice::Iter<'a, Cell>;
    fn into_iter(self) -> Self::IntoIter {
        self.cells.iter()
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}
