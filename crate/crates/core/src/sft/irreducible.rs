//! Finite checks of strong Δ'-irreducibility.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lattice::{check_dim, Cell, Dim, FiniteSet, Pattern};

use super::automaton::Automaton;
use super::search::{pad, Filling};
use super::{LanguageMode, Sft};

/// A pair of admissible patterns with no joint completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityFailure {
    pub s: FiniteSet,
    pub t: FiniteSet,
    pub u: Pattern,
    pub v: Pattern,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityVerdict {
    /// `Exact` on `Z`; `Padded` (bounded search) on `Z^2`.
    pub mode: LanguageMode,
    pub window_pairs: usize,
    pub failure: Option<IrreducibilityFailure>,
}

impl IrreducibilityVerdict {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn separated(s: &FiniteSet, gap: &FiniteSet, t: &FiniteSet) -> Result<bool> {
    Ok(s.minkowski(gap)?.is_disjoint(t))
}

/// Checks that every `u ∈ X_S`, `v ∈ X_T` with `(S + Δ') ∩ T = ∅` extend to a
/// common configuration. On `Z`, `S` and `T` range over intervals in
/// `[-radius, radius]` and the check is exact; on `Z^2`, `S = {0}` and `T` ranges
/// over single cells in `[-radius, radius]^2`, with completions searched on the
/// hull padded by the window radius.
pub fn delta_irreducibility_check(sft: &Sft, gap: &FiniteSet, radius: i64, budget: &Budget) -> Result<IrreducibilityVerdict> {
    check_dim(sft.dim(), gap.dim())?;
    if radius < 0 {
        return Err(Error::Invalid("radius must be nonnegative".into()));
    }
    match sft.dim() {
        Dim::One => exact_1d(sft, gap, radius, budget),
        Dim::Two => bounded_2d(sft, gap, radius, budget),
    }
}

fn maximal_pairs(gap: &FiniteSet, radius: i64) -> Result<Vec<(FiniteSet, FiniteSet)>> {
    let valid = |a: i64, b: i64, c: i64, d: i64| -> Result<bool> {
        if a < -radius || b > radius || c < -radius || d > radius || a > b || c > d {
            return Ok(false);
        }
        separated(&FiniteSet::interval(a, b), gap, &FiniteSet::interval(c, d))
    };
    let mut out = Vec::new();
    for a in -radius..=radius {
        for b in a..=radius {
            for c in -radius..=radius {
                for d in c..=radius {
                    if !valid(a, b, c, d)? {
                        continue;
                    }
                    let grows = [
                        (a - 1, b, c, d),
                        (a, b + 1, c, d),
                        (a, b, c - 1, d),
                        (a, b, c, d + 1),
                    ];
                    let mut maximal = true;
                    for (a2, b2, c2, d2) in grows {
                        if valid(a2, b2, c2, d2)? {
                            maximal = false;
                            break;
                        }
                    }
                    if maximal {
                        out.push((FiniteSet::interval(a, b), FiniteSet::interval(c, d)));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn exact_1d(sft: &Sft, gap: &FiniteSet, radius: i64, budget: &Budget) -> Result<IrreducibilityVerdict> {
    let automaton = Automaton::new(sft)?;
    let pairs = maximal_pairs(gap, radius)?;
    let during = "checking irreducibility";
    let failures: Vec<Option<IrreducibilityFailure>> = pairs
        .par_iter()
        .map(|(s, t)| -> Result<Option<IrreducibilityFailure>> {
            budget.check_time(during)?;
            let hull = s.union(t);
            let hull = FiniteSet::interval(hull.cells()[0].x(), hull.cells()[hull.len() - 1].x());
            let joint = automaton.language(&hull, budget)?;
            let si: Vec<usize> = s.iter().map(|c| hull.index_of(c).expect("S lies in the hull")).collect();
            let ti: Vec<usize> = t.iter().map(|c| hull.index_of(c).expect("T lies in the hull")).collect();
            let codec = joint.codec();
            let seen: HashSet<(Vec<u8>, Vec<u8>)> = joint
                .keys()
                .iter()
                .map(|&k| {
                    let w = codec.decode(k);
                    (si.iter().map(|&i| w[i]).collect(), ti.iter().map(|&i| w[i]).collect())
                })
                .collect();
            let ls = automaton.language(s, budget)?;
            let lt = automaton.language(t, budget)?;
            if seen.len() == ls.len() * lt.len() {
                return Ok(None);
            }
            for u in ls.iter() {
                for v in lt.iter() {
                    if !seen.contains(&(u.values().to_vec(), v.values().to_vec())) {
                        return Ok(Some(IrreducibilityFailure {
                            s: s.clone(),
                            t: t.clone(),
                            u,
                            v,
                        }));
                    }
                }
            }
            unreachable!("the pair counts differ, so some pair is missing")
        })
        .collect::<Result<_>>()?;
    Ok(IrreducibilityVerdict {
        mode: LanguageMode::Exact,
        window_pairs: pairs.len(),
        failure: failures.into_iter().flatten().next(),
    })
}

fn bounded_2d(sft: &Sft, gap: &FiniteSet, radius: i64, budget: &Budget) -> Result<IrreducibilityVerdict> {
    let origin = Cell::d2(0, 0);
    let s = FiniteSet::singleton(origin);
    let padding = sft.radius().max(1);
    let ls = sft.padded_language(&s, 1, budget)?.patterns;
    let mut targets = Vec::new();
    for x in -radius..=radius {
        for y in -radius..=radius {
            let t = FiniteSet::singleton(Cell::d2(x, y));
            if separated(&s, gap, &t)? {
                targets.push(t);
            }
        }
    }
    let failures: Vec<Option<IrreducibilityFailure>> = targets
        .par_iter()
        .map(|t| -> Result<Option<IrreducibilityFailure>> {
            budget.check_time("checking irreducibility")?;
            let lt = sft.padded_language(t, 1, budget)?.patterns;
            let both = s.union(t);
            let (lo, hi) = both.bounds().expect("nonempty");
            let hull = FiniteSet::rect(lo.x(), hi.x(), lo.y(), hi.y());
            let filling = Filling::new(sft, pad(&hull, padding)?);
            let tc = t.cells()[0];
            for u in ls.iter() {
                for v in lt.iter() {
                    let fixed = filling.constraints(&[(origin, u.values()[0]), (tc, v.values()[0])]);
                    if filling.complete(&fixed).is_none() {
                        return Ok(Some(IrreducibilityFailure {
                            s: s.clone(),
                            t: t.clone(),
                            u,
                            v,
                        }));
                    }
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    Ok(IrreducibilityVerdict {
        mode: LanguageMode::Padded { t: 1 },
        window_pairs: targets.len(),
        failure: failures.into_iter().flatten().next(),
    })
}
