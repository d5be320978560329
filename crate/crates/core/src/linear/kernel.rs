//! Finitely supported kernel elements vanishing on a prescribed set.

use std::fmt;

use crate::budget::Budget;
use crate::density::LatticeSet;
use crate::error::{Error, Result};
use crate::lattice::{check_dim, Cell, Dim, FiniteSet};

use super::rule::LinearAssignment;
use super::window::restricted_matrix;

/// A nonzero `v` supported on `support` with `τ(v) = 0` and `v|_S = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelWitness {
    /// The box whose free cells were searched.
    pub search_box: FiniteSet,
    /// Cells where `v` is nonzero.
    pub support: FiniteSet,
    /// `k` components per support cell.
    pub values: Vec<u8>,
}

impl KernelWitness {
    /// Recomputes `τ(v)` on `support - M` and checks it vanishes, `v ≠ 0` and `v|_S = 0`.
    pub fn verify(&self, nuca: &LinearAssignment, s: &LatticeSet) -> Result<bool> {
        let k = nuca.k();
        if self.values.len() != self.support.len() * k {
            return Ok(false);
        }
        if self.support.is_empty() || self.values.iter().all(|&v| v == 0) {
            return Ok(false);
        }
        if self.support.iter().any(|&c| s.contains(c)) {
            return Ok(false);
        }
        let outputs = self.support.minkowski(&nuca.memory().negate())?;
        let m = restricted_matrix(nuca, &outputs, &self.support)?;
        Ok(m.mul_vec(nuca.field(), &self.values).iter().all(|&v| v == 0))
    }
}

impl fmt::Display for KernelWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.values.len() / self.support.len().max(1);
        let parts: Vec<String> = self
            .support
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let v: Vec<String> = self.values[i * k..(i + 1) * k].iter().map(u8::to_string).collect();
                format!("{c}:{}", v.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelSearch {
    Found(KernelWitness),
    NoneUpToBound {
        support_bound: usize,
        radius: i64,
        boxes_checked: usize,
    },
}

impl KernelSearch {
    pub fn witness(&self) -> Option<&KernelWitness> {
        match self {
            KernelSearch::Found(w) => Some(w),
            KernelSearch::NoneUpToBound { .. } => None,
        }
    }
}

/// Boxes inside `[-radius, radius]^d` with at most `bound` cells, ordered by
/// size, then side lengths, then lower corner.
fn boxes(dim: Dim, bound: usize, radius: i64) -> Vec<FiniteSet> {
    let side = (2 * radius + 1) as usize;
    let mut shapes: Vec<Vec<usize>> = match dim {
        Dim::One => (1..=bound.min(side)).map(|w| vec![w]).collect(),
        Dim::Two => (1..=side)
            .flat_map(|w| (1..=side).map(move |h| vec![w, h]))
            .filter(|s| s[0] * s[1] <= bound)
            .collect(),
    };
    shapes.sort_by_key(|s| (s.iter().product::<usize>(), s.clone()));
    let mut out = Vec::new();
    for s in shapes {
        match dim {
            Dim::One => {
                let w = s[0] as i64;
                for x in -radius..=radius - w + 1 {
                    out.push(FiniteSet::interval(x, x + w - 1));
                }
            }
            Dim::Two => {
                let (w, h) = (s[0] as i64, s[1] as i64);
                for x in -radius..=radius - w + 1 {
                    for y in -radius..=radius - h + 1 {
                        out.push(FiniteSet::rect(x, x + w - 1, y, y + h - 1));
                    }
                }
            }
        }
    }
    out
}

/// Searches boxes `E` within `radius` with `|E| <= support_bound` for a
/// nonzero kernel vector supported on `E \ S`.
pub fn kernel_preinjectivity(
    nuca: &LinearAssignment,
    s: &LatticeSet,
    support_bound: usize,
    radius: i64,
    budget: &Budget,
) -> Result<KernelSearch> {
    check_dim(nuca.dim(), s.validate()?)?;
    if radius < 0 {
        return Err(Error::Invalid("search radius must be nonnegative".into()));
    }
    let k = nuca.k();
    let field = nuca.field();
    let neg_m = nuca.memory().negate();
    let mut checked = 0;
    for e in boxes(nuca.dim(), support_bound, radius) {
        budget.check_time("searching for kernel elements")?;
        checked += 1;
        let free = e.filter(|c| !s.contains(*c));
        if free.is_empty() {
            continue;
        }
        let outputs = free.minkowski(&neg_m)?;
        let m = restricted_matrix(nuca, &outputs, &free)?;
        let null = m.null_space(field);
        if null.rows() == 0 {
            continue;
        }
        let v = null.row(0);
        let cells: Vec<Cell> = free
            .iter()
            .enumerate()
            .filter(|(i, _)| v[i * k..(i + 1) * k].iter().any(|&x| x != 0))
            .map(|(_, &c)| c)
            .collect();
        let values = free
            .iter()
            .enumerate()
            .filter(|(i, _)| v[i * k..(i + 1) * k].iter().any(|&x| x != 0))
            .flat_map(|(i, _)| v[i * k..(i + 1) * k].iter().copied())
            .collect();
        return Ok(KernelSearch::Found(KernelWitness {
            search_box: e,
            support: FiniteSet::new(nuca.dim(), cells)?,
            values,
        }));
    }
    Ok(KernelSearch::NoneUpToBound {
        support_bound,
        radius,
        boxes_checked: checked,
    })
}
