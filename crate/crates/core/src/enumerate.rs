//! Lexicographic enumeration of assignments, split into chunks for rayon.

use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lattice::Symbol;

/// Mixed-radix counter over `len` digits in `[0, q)`, most significant first.
#[derive(Clone, Debug)]
pub(crate) struct Odometer {
    q: Symbol,
    digits: Vec<Symbol>,
}

impl Odometer {
    pub(crate) fn new(q: Symbol, len: usize) -> Odometer {
        Odometer {
            q,
            digits: vec![0; len],
        }
    }

    pub(crate) fn at(q: Symbol, len: usize, mut index: u64) -> Odometer {
        let mut o = Odometer::new(q, len);
        for d in o.digits.iter_mut().rev() {
            *d = (index % q as u64) as Symbol;
            index /= q as u64;
        }
        o
    }

    pub(crate) fn digits(&self) -> &[Symbol] {
        &self.digits
    }

    /// Advances to the next assignment; false after the last one.
    pub(crate) fn advance(&mut self) -> bool {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.q {
                return true;
            }
            *d = 0;
        }
        false
    }
}

/// Checks `q^len` against the budget and returns it as a `u64`.
pub(crate) fn checked_total(budget: &Budget, during: &str, q: Symbol, len: usize) -> Result<u64> {
    let total = crate::budget::saturating_pow(q as u128, len);
    budget.check_patterns(during, total)?;
    u64::try_from(total).map_err(|_| Error::budget(during, total, u64::MAX))
}

const CHUNK: u64 = 1 << 12;

/// Runs `f` on every assignment of `q^len` in parallel chunks, folding each
/// chunk with `fold` from `init()`, and returns the per-chunk results in
/// lexicographic chunk order.
pub(crate) fn par_chunks<T, I, F>(budget: &Budget, during: &str, q: Symbol, len: usize, init: I, f: F) -> Result<Vec<T>>
where
    T: Send,
    I: Fn() -> T + Sync,
    F: Fn(&mut T, &[Symbol]) + Sync,
{
    let total = checked_total(budget, during, q, len)?;
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|ci| {
            budget.check_time(during)?;
            let start = ci * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut acc = init();
            let mut odo = Odometer::at(q, len, start);
            for _ in start..end {
                f(&mut acc, odo.digits());
                odo.advance();
            }
            Ok(acc)
        })
        .collect()
}
