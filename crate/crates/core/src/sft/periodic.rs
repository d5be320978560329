//! Periodic points and the periodic-approximation check.

use rayon::prelude::*;

use crate::budget::Budget;
use crate::enumerate::par_chunks;
use crate::error::{Error, Result};
use crate::lattice::{check_dim, Configuration, Dim, FiniteSet, PeriodLattice, Symbol};

use super::automaton::{cyclic_admissible, Automaton};
use super::{approximation_radius, Sft};

/// `Fix(H) ∩ X`, by enumerating assignments on a fundamental domain of `H`.
/// Each configuration has a periodic background indexed by `H.class_index`.
pub fn periodic_points(sft: &Sft, lattice: &PeriodLattice, budget: &Budget) -> Result<Vec<Configuration>> {
    Ok(periodic_domains(sft, lattice, budget)?
        .into_iter()
        .map(|d| Configuration::periodic(lattice.clone(), d).expect("domain matches the index"))
        .collect())
}

pub(crate) fn periodic_domains(sft: &Sft, lattice: &PeriodLattice, budget: &Budget) -> Result<Vec<Vec<Symbol>>> {
    check_dim(sft.dim(), lattice.dim())?;
    let domain = lattice.fundamental_domain();
    let windows: Vec<Vec<usize>> = domain
        .iter()
        .map(|&g| {
            let first = sft.window().cells()[0];
            sft.window().iter().map(|&d| lattice.class_index(g - first + d)).collect()
        })
        .collect();
    let len = domain.len();
    let parts = par_chunks(
        budget,
        "enumerating periodic points",
        sft.alphabet(),
        len,
        Vec::new,
        |acc: &mut Vec<Vec<Symbol>>, digits| {
            let mut buf = vec![0; sft.window().len()];
            let ok = windows.iter().all(|w| {
                for (b, &i) in buf.iter_mut().zip(w) {
                    *b = digits[i];
                }
                sft.is_allowed(&buf)
            });
            if ok {
                acc.push(digits.to_vec());
            }
        },
    )?;
    Ok(parts.into_iter().flatten().collect())
}

/// Outcome of [`periodic_approximation_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicApproximation {
    pub n0: i64,
    pub r: i64,
    pub n: i64,
    /// `k_n = (n·n0 - 2r)(n0 + 1)`.
    pub k: i64,
    /// `F_n = [-k_n, k_n]`.
    pub window: FiniteSet,
    /// `H_n = (2k_n + 4r) Z`.
    pub period: i64,
    /// Points of `Fix(2n0 Z) ∩ X` found for the hypothesis.
    pub base_points: usize,
    /// `|X_{F_n}|`.
    pub language_count: u128,
    /// `|(Fix(H_n) ∩ X)|_{F_n}|`.
    pub periodic_count: u128,
    /// Patterns for which a periodic point was exhibited and re-checked.
    pub witnesses_checked: u128,
    /// Patterns for which no verified periodic point was found.
    pub witness_failures: u128,
}

impl PeriodicApproximation {
    pub fn equal(&self) -> bool {
        self.language_count == self.periodic_count && self.witness_failures == 0
    }
}

/// Patterns beyond this count are compared by counting only.
pub const WITNESS_LIMIT: u128 = 1 << 20;

/// Checks `(Fix(H_n) ∩ X)|_{F_n} = X_{F_n}` on `Z`.
pub fn periodic_approximation_check(sft: &Sft, n0: i64, r: i64, n: i64, budget: &Budget) -> Result<PeriodicApproximation> {
    if sft.dim() != Dim::One {
        return Err(Error::Precondition(
            "the periodic-approximation check is exact only on Z; two-dimensional languages are not decidable in general".into(),
        ));
    }
    let (k, period, base_points) = hypothesis(sft, n0, r, n, budget)?;
    let automaton = Automaton::new(sft)?;
    let len = (2 * k + 1) as usize;
    let language_count = automaton.count(len)?;
    let periodic_count = automaton.periodic_count(len, period as usize)?;
    let mut witnesses_checked = 0;
    let mut witness_failures = 0;
    if language_count <= WITNESS_LIMIT && budget.check_patterns("exhibiting periodic witnesses", language_count).is_ok() {
        let codec = crate::lattice::KeyCodec::new(sft.alphabet(), len)?;
        let keys = automaton.words(len, budget)?;
        let fails = keys
            .par_iter()
            .filter(|&&key| {
                let u = codec.decode(key);
                match automaton.periodic_witness(&u, period as usize) {
                    Some(c) => !(cyclic_admissible(sft, &c) && u.iter().enumerate().all(|(i, &v)| c[i % c.len()] == v)),
                    None => true,
                }
            })
            .count();
        witnesses_checked = keys.len() as u128;
        witness_failures = fails as u128;
    }
    Ok(PeriodicApproximation {
        n0,
        r,
        n,
        k,
        window: FiniteSet::interval(-k, k),
        period,
        base_points,
        language_count,
        periodic_count,
        witnesses_checked,
        witness_failures,
    })
}

/// Validates `2n0 > 2r`, the window radius, `k_n >= 0` and the existence of a
/// `2n0 Z^d`-periodic point; returns `(k_n, 2k_n + 4r, base point count)`.
pub(crate) fn hypothesis(sft: &Sft, n0: i64, r: i64, n: i64, budget: &Budget) -> Result<(i64, i64, usize)> {
    if r < 1 || n0 <= r {
        return Err(Error::Precondition(format!("need r >= 1 and 2n0 > 2r, got n0 = {n0}, r = {r}")));
    }
    if sft.radius() > r {
        return Err(Error::Precondition(format!(
            "the SFT window {} is not inside [-{r}, {r}]^d",
            sft.window()
        )));
    }
    let k = approximation_radius(n0, r, n)?;
    let base = PeriodLattice::scalar(sft.dim(), 2 * n0)?;
    let base_points = periodic_domains(sft, &base, budget)?.len();
    if base_points == 0 {
        return Err(Error::Precondition(format!(
            "the SFT has no configuration of total period {}",
            2 * n0
        )));
    }
    Ok((k, 2 * k + 4 * r, base_points))
}

