use std::fmt;

use rayon::prelude::*;

use super::cylinder::Cylinder;
use super::eval::WindowPlan;
use super::rule::RuleAssignment;
use crate::budget::{saturating_pow, Budget};
use crate::enumerate::Odometer;
use crate::error::{Error, Result};
use crate::lattice::{check_dim, Cell, CellSource, Dim, FiniteSet, KeyCodec, Pattern, Symbol};

/// Two configurations of `U` that differ exactly on `support` and have the
/// same image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreinjWitness {
    /// `E`, disjoint from the pinned set.
    pub support: FiniteSet,
    pub q1: Pattern,
    pub q2: Pattern,
    /// Values on `(E - M + M) \ E`, the cells read by the affected outputs.
    pub context: Pattern,
    /// Symbol used off `E`, the context and the pinned set.
    pub filler: Symbol,
}

/// Cells whose output can change when inputs change on `support`.
pub fn affected_outputs(support: &FiniteSet, memory: &FiniteSet) -> Result<FiniteSet> {
    support.minkowski(&memory.negate())
}

/// `(E - M + M) \ E`.
pub fn context_cells(support: &FiniteSet, memory: &FiniteSet) -> Result<FiniteSet> {
    Ok(affected_outputs(support, memory)?.minkowski(memory)?.difference(support))
}

/// One of the two completed configurations of a witness.
pub struct Completion<'a> {
    witness: &'a PreinjWitness,
    cylinder: &'a Cylinder,
    first: bool,
}

impl CellSource for Completion<'_> {
    fn dim(&self) -> Dim {
        self.witness.support.dim()
    }

    fn symbol_at(&self, c: Cell) -> Symbol {
        let q = if self.first { &self.witness.q1 } else { &self.witness.q2 };
        if let Some(v) = q.get(&c) {
            return v;
        }
        if let Some(v) = self.witness.context.get(&c) {
            return v;
        }
        self.cylinder.pinned(c).unwrap_or(self.witness.filler)
    }
}

impl PreinjWitness {
    /// `x` (with `q1`) or `y` (with `q2`).
    pub fn completion<'a>(&'a self, cylinder: &'a Cylinder, first: bool) -> Completion<'a> {
        Completion {
            witness: self,
            cylinder,
            first,
        }
    }

    /// Re-checks the witness from scratch: supports, consistency with `p`,
    /// `q1 != q2`, and equal images on `(E - M)` grown by the memory radius.
    pub fn verify(&self, nuca: &RuleAssignment, cylinder: &Cylinder) -> Result<bool> {
        check_dim(nuca.dim(), self.support.dim())?;
        check_dim(nuca.dim(), cylinder.dim())?;
        let m = nuca.memory();
        if self.q1.support() != &self.support || self.q2.support() != &self.support || self.q1 == self.q2 {
            return Ok(false);
        }
        if self.support.iter().any(|c| cylinder.is_pinned(*c)) {
            return Ok(false);
        }
        if self.context.support() != &context_cells(&self.support, m)? {
            return Ok(false);
        }
        if self.context.iter().any(|(c, v)| cylinder.pinned(c).is_some_and(|p| p != v)) {
            return Ok(false);
        }
        let q = nuca.alphabet();
        let symbols = [&self.q1, &self.q2, &self.context];
        if symbols.iter().any(|p| p.max_symbol().is_some_and(|v| v >= q)) || self.filler >= q {
            return Ok(false);
        }
        let pad = FiniteSet::centered_box(nuca.dim(), m.radius().max(1));
        let window = affected_outputs(&self.support, m)?.minkowski(&pad)?;
        let x = super::evaluate_window(nuca, &self.completion(cylinder, true), &window)?;
        let y = super::evaluate_window(nuca, &self.completion(cylinder, false), &window)?;
        Ok(x == y)
    }
}

impl fmt::Display for PreinjWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "E={} q1={} q2={} context={} filler={}",
            self.support, self.q1, self.q2, self.context, self.filler
        )
    }
}

/// Where supports and contexts may live.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessScope {
    /// Cells allowed in `E`, never pinned.
    pub candidates: FiniteSet,
    /// When set, context cells outside the frame window and the pinned set
    /// are fixed to the filler symbol.
    pub frame: Option<(FiniteSet, Symbol)>,
}

impl WitnessScope {
    /// `E ⊆ [-R,R]^d \ S`, contexts free.
    pub fn radius(cylinder: &Cylinder, radius: i64) -> WitnessScope {
        let b = FiniteSet::centered_box(cylinder.dim(), radius);
        WitnessScope {
            candidates: b.filter(|c| !cylinder.is_pinned(*c)),
            frame: None,
        }
    }

    /// `E ⊆ F \ S` with the filler outside `F ∪ S`: the configurations of the
    /// counting certificate on `F`.
    pub fn framed(cylinder: &Cylinder, window: &FiniteSet, filler: Symbol) -> WitnessScope {
        WitnessScope {
            candidates: window.filter(|c| !cylinder.is_pinned(*c)),
            frame: Some((window.clone(), filler)),
        }
    }
}

/// Result of a witness search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSearch {
    Found(PreinjWitness),
    /// Every support of size at most `support_bound` was searched.
    NoneUpToBound { support_bound: usize, candidates: usize, supports_checked: u64 },
    /// The budget ran out; all supports of size at most `completed_size`
    /// were searched, and the search stopped at `stopped_at`.
    Partial {
        completed_size: usize,
        supports_checked: u64,
        stopped_at: FiniteSet,
        reason: String,
    },
}

impl WitnessSearch {
    pub fn witness(&self) -> Option<&PreinjWitness> {
        match self {
            WitnessSearch::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// Candidate order: sup norm, then lexicographic.
fn ranked(cells: &FiniteSet) -> Vec<Cell> {
    let mut v: Vec<Cell> = cells.iter().copied().collect();
    v.sort_by_key(|c| (c.norm(), *c));
    v
}

/// Searches supports `E ⊆ [-R,R]^d \ S` by increasing size.
pub fn preinjectivity_witness(
    nuca: &RuleAssignment,
    cylinder: &Cylinder,
    support_bound: usize,
    radius: i64,
    budget: &Budget,
) -> Result<WitnessSearch> {
    check_dim(nuca.dim(), cylinder.dim())?;
    scoped_preinjectivity_witness(nuca, cylinder, &WitnessScope::radius(cylinder, radius), support_bound, budget)
}

/// Witness search over an explicit scope. Order: increasing `|E|`, then
/// supports as lexicographic combinations of ranked candidates, then
/// contexts, then `q2`, then `q1 > q2` differing from `q2` on all of `E`.
pub fn scoped_preinjectivity_witness(
    nuca: &RuleAssignment,
    cylinder: &Cylinder,
    scope: &WitnessScope,
    support_bound: usize,
    budget: &Budget,
) -> Result<WitnessSearch> {
    check_dim(nuca.dim(), cylinder.dim())?;
    check_dim(nuca.dim(), scope.candidates.dim())?;
    if support_bound == 0 {
        return Err(Error::Invalid("support bound must be at least 1".into()));
    }
    budget.check_support("searching pre-injectivity witnesses", support_bound)?;
    cylinder.check_alphabet(nuca.alphabet())?;
    let cand = ranked(&scope.candidates);
    if cand.iter().any(|c| cylinder.is_pinned(*c)) {
        return Err(Error::Invalid("witness candidates must avoid the pinned set".into()));
    }
    let max_size = support_bound.min(cand.len());
    let mut checked: u64 = 0;
    let mut completed = 0;
    for size in 1..=max_size {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let support = FiniteSet::new(nuca.dim(), idx.iter().map(|&i| cand[i]))?;
            let outcome = budget
                .check_time("searching pre-injectivity witnesses")
                .and_then(|_| search_support(nuca, cylinder, scope, &support, budget));
            match outcome {
                Ok(Some(w)) => return Ok(WitnessSearch::Found(w)),
                Ok(None) => checked += 1,
                Err(e) if e.is_budget() => {
                    return Ok(WitnessSearch::Partial {
                        completed_size: completed,
                        supports_checked: checked,
                        stopped_at: support,
                        reason: e.to_string(),
                    })
                }
                Err(e) => return Err(e),
            }
            if !next_combination(&mut idx, cand.len()) {
                break;
            }
        }
        completed = size;
    }
    Ok(WitnessSearch::NoneUpToBound {
        support_bound,
        candidates: cand.len(),
        supports_checked: checked,
    })
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Searches one support; `Some` on the first collision in order.
fn search_support(
    nuca: &RuleAssignment,
    cylinder: &Cylinder,
    scope: &WitnessScope,
    support: &FiniteSet,
    budget: &Budget,
) -> Result<Option<PreinjWitness>> {
    let m = nuca.memory();
    let q = nuca.alphabet();
    let outputs = affected_outputs(support, m)?;
    let plan = WindowPlan::new(nuca, &outputs)?;
    let input = plan.input();
    let filler = scope.frame.as_ref().map(|f| f.1).unwrap_or(0);

    let mut base = vec![0 as Symbol; input.len()];
    let mut e_pos = Vec::with_capacity(support.len());
    let mut free = Vec::new();
    for (i, &c) in input.iter().enumerate() {
        if support.contains(&c) {
            e_pos.push(i);
        } else if let Some(v) = cylinder.pinned(c) {
            base[i] = v;
        } else if scope.frame.as_ref().is_some_and(|(w, _)| !w.contains(&c)) {
            base[i] = filler;
        } else {
            free.push(i);
        }
    }
    let per_context = saturating_pow(q as u128, support.len());
    let contexts = saturating_pow(q as u128, free.len());
    budget.check_patterns("searching one witness support", per_context.saturating_mul(contexts))?;
    let (per_context, contexts) = (per_context as u64, contexts as u64);
    let out_codec = KeyCodec::new(q, outputs.len())?;
    let e_len = support.len();

    let found = (0..contexts).into_par_iter().find_map_first(|ci| {
        let mut x = base.clone();
        let ctx = Odometer::at(q, free.len(), ci);
        for (&i, &d) in free.iter().zip(ctx.digits()) {
            x[i] = d;
        }
        let mut out = vec![0; outputs.len()];
        let mut images: Vec<(u128, u64)> = Vec::with_capacity(per_context as usize);
        let mut qo = Odometer::new(q, e_len);
        for qi in 0..per_context {
            for (&i, &d) in e_pos.iter().zip(qo.digits()) {
                x[i] = d;
            }
            plan.eval(&x, &mut out);
            images.push((out_codec.encode(&out), qi));
            qo.advance();
        }
        images.sort_unstable();
        let mut best: Option<(u64, u64)> = None;
        for group in images.chunk_by(|a, b| a.0 == b.0) {
            if group.len() < 2 {
                continue;
            }
            for (gi, &(_, q2)) in group.iter().enumerate() {
                if best.is_some_and(|b| b.0 <= q2) {
                    break;
                }
                let d2 = Odometer::at(q, e_len, q2);
                let hit = group[gi + 1..].iter().find(|&&(_, q1)| {
                    let d1 = Odometer::at(q, e_len, q1);
                    d1.digits().iter().zip(d2.digits()).all(|(a, b)| a != b)
                });
                if let Some(&(_, q1)) = hit {
                    best = Some((q2, q1));
                    break;
                }
            }
        }
        best.map(|(q2, q1)| (x, q1, q2))
    });

    let Some((x, q1, q2)) = found else {
        return Ok(None);
    };
    let d1 = Odometer::at(q, e_len, q1).digits().to_vec();
    let d2 = Odometer::at(q, e_len, q2).digits().to_vec();
    let ctx_cells = context_cells(support, m)?;
    let context = Pattern::from_fn(ctx_cells, |c| x[input.index_of(&c).expect("context lies in the input window")]);
    Ok(Some(PreinjWitness {
        support: support.clone(),
        q1: Pattern::new(support.clone(), d1)?,
        q2: Pattern::new(support.clone(), d2)?,
        context,
        filler,
    }))
}
