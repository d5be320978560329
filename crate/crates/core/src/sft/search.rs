//! Backtracking search for locally admissible fillings of finite sets.

use rayon::prelude::*;

use crate::budget::Budget;
use crate::enumerate::par_chunks;
use crate::error::Result;
use crate::lattice::{Cell, FiniteSet, PatternSet, Symbol};

use super::Sft;

/// Window constraints of an SFT on a finite set, checked as soon as their
/// last cell (in the set's order) is assigned.
pub(crate) struct Filling<'a> {
    sft: &'a Sft,
    cells: FiniteSet,
    /// Cell indices of each anchored window, in window order.
    windows: Vec<Vec<usize>>,
    /// Windows completed by assigning each cell.
    closing: Vec<Vec<usize>>,
}

impl<'a> Filling<'a> {
    pub(crate) fn new(sft: &'a Sft, cells: FiniteSet) -> Filling<'a> {
        let windows: Vec<Vec<usize>> = sft
            .anchors(&cells)
            .into_iter()
            .map(|g| {
                sft.window()
                    .iter()
                    .map(|&d| cells.index_of(&(g + d)).expect("anchored window lies in the set"))
                    .collect()
            })
            .collect();
        let mut closing = vec![Vec::new(); cells.len()];
        for (w, idx) in windows.iter().enumerate() {
            closing[*idx.iter().max().expect("nonempty window")].push(w);
        }
        Filling {
            sft,
            cells,
            windows,
            closing,
        }
    }

    pub(crate) fn cells(&self) -> &FiniteSet {
        &self.cells
    }

    /// A locally admissible filling agreeing with `fixed`, if one exists.
    pub(crate) fn complete(&self, fixed: &[Option<Symbol>]) -> Option<Vec<Symbol>> {
        let mut values = vec![0; self.cells.len()];
        let mut buf = vec![0; self.sft.window().len()];
        if self.fill(0, fixed, &mut values, &mut buf) {
            Some(values)
        } else {
            None
        }
    }

    fn fill(&self, i: usize, fixed: &[Option<Symbol>], values: &mut [Symbol], buf: &mut [Symbol]) -> bool {
        if i == values.len() {
            return true;
        }
        let choices: Vec<Symbol> = match fixed[i] {
            Some(v) => vec![v],
            None => (0..self.sft.alphabet()).collect(),
        };
        for v in choices {
            values[i] = v;
            let ok = self.closing[i].iter().all(|&w| {
                for (b, &j) in buf.iter_mut().zip(&self.windows[w]) {
                    *b = values[j];
                }
                self.sft.is_allowed(buf)
            });
            if ok && self.fill(i + 1, fixed, values, buf) {
                return true;
            }
        }
        false
    }

    /// `fixed` with the listed cells set.
    pub(crate) fn constraints(&self, assignments: &[(Cell, Symbol)]) -> Vec<Option<Symbol>> {
        let mut fixed = vec![None; self.cells.len()];
        for (c, v) in assignments {
            if let Some(i) = self.cells.index_of(c) {
                fixed[i] = Some(*v);
            }
        }
        fixed
    }
}

/// `F + [-pad, pad]^d`.
pub(crate) fn pad(window: &FiniteSet, pad: i64) -> Result<FiniteSet> {
    window.minkowski(&FiniteSet::centered_box(window.dim(), pad))
}

/// Patterns on `F` that extend to a locally admissible filling of `F + [-pad, pad]^d`.
pub(crate) fn padded_language(sft: &Sft, window: &FiniteSet, padding: i64, budget: &Budget) -> Result<PatternSet> {
    crate::lattice::check_dim(sft.dim(), window.dim())?;
    let filling = Filling::new(sft, pad(window, padding)?);
    let positions: Vec<usize> = window
        .iter()
        .map(|c| filling.cells().index_of(c).expect("window lies in its padding"))
        .collect();
    let inner = Filling::new(sft, window.clone());
    let codec = crate::lattice::KeyCodec::new(sft.alphabet(), window.len())?;
    let during = "enumerating padded SFT patterns";
    let parts = par_chunks(budget, during, sft.alphabet(), window.len(), Vec::new, |acc: &mut Vec<u128>, digits| {
        let direct: Vec<Option<Symbol>> = digits.iter().map(|&d| Some(d)).collect();
        if inner.complete(&direct).is_none() {
            return;
        }
        let mut fixed = vec![None; filling.cells().len()];
        for (&p, &d) in positions.iter().zip(digits) {
            fixed[p] = Some(d);
        }
        if filling.complete(&fixed).is_some() {
            acc.push(codec.encode(digits));
        }
    })?;
    let keys: Vec<u128> = parts.into_par_iter().flatten().collect();
    PatternSet::from_keys(window.clone(), sft.alphabet(), keys)
}
