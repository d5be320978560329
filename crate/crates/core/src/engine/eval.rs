use rayon::prelude::*;

use super::cylinder::Cylinder;
use super::rule::RuleAssignment;
use crate::budget::Budget;
use crate::enumerate::par_chunks;
use crate::error::Result;
use crate::lattice::{check_dim, CellSource, FiniteSet, KeyCodec, Pattern, PatternSet, Symbol};

/// Precomputed evaluation of `τ(x)|_F` from `x|_{F+M}`.
#[derive(Clone, Debug)]
pub struct WindowPlan<'a> {
    nuca: &'a RuleAssignment,
    output: FiniteSet,
    input: FiniteSet,
    rules: Vec<usize>,
    /// `reads[i * |M| + j]` is the input index of `f_i + m_j`.
    reads: Vec<usize>,
}

impl<'a> WindowPlan<'a> {
    pub fn new(nuca: &'a RuleAssignment, output: &FiniteSet) -> Result<WindowPlan<'a>> {
        check_dim(nuca.dim(), output.dim())?;
        let input = output.minkowski(nuca.memory())?;
        let mut reads = Vec::with_capacity(output.len() * nuca.memory().len());
        let mut rules = Vec::with_capacity(output.len());
        for &f in output {
            rules.push(nuca.rule_index(f));
            for &m in nuca.memory() {
                reads.push(input.index_of(&(f + m)).expect("F+M contains f+m"));
            }
        }
        Ok(WindowPlan {
            nuca,
            output: output.clone(),
            input,
            rules,
            reads,
        })
    }

    pub fn output(&self) -> &FiniteSet {
        &self.output
    }

    pub fn input(&self) -> &FiniteSet {
        &self.input
    }

    /// Writes `τ(x)|_F` into `out` given `x|_{F+M}` in input order.
    #[inline]
    pub fn eval(&self, x: &[Symbol], out: &mut [Symbol]) {
        let k = self.nuca.memory().len();
        let mut buf = [0 as Symbol; 64];
        let mut heap;
        let local: &mut [Symbol] = if k <= 64 {
            &mut buf[..k]
        } else {
            heap = vec![0; k];
            &mut heap
        };
        for (i, o) in out.iter_mut().enumerate() {
            for (j, slot) in local.iter_mut().enumerate() {
                *slot = x[self.reads[i * k + j]];
            }
            *o = self.nuca.rule_by_index(self.rules[i]).apply(local);
        }
    }
}

/// `τ(x)|_F`; reads `x` only on `F + M`.
pub fn evaluate_window(nuca: &RuleAssignment, x: &dyn CellSource, window: &FiniteSet) -> Result<Pattern> {
    check_dim(nuca.dim(), x.dim())?;
    let plan = WindowPlan::new(nuca, window)?;
    let input: Vec<Symbol> = plan.input().iter().map(|&c| x.symbol_at(c)).collect();
    let mut out = vec![0; window.len()];
    plan.eval(&input, &mut out);
    Pattern::new(window.clone(), out)
}

/// Input cells of `F + M` split into pinned values and free positions.
pub(crate) fn pin_inputs(input: &FiniteSet, cylinder: Option<&Cylinder>) -> (Vec<Symbol>, Vec<usize>) {
    let mut base = vec![0; input.len()];
    let mut free = Vec::new();
    for (i, &c) in input.iter().enumerate() {
        match cylinder.and_then(|u| u.pinned(c)) {
            Some(v) => base[i] = v,
            None => free.push(i),
        }
    }
    (base, free)
}

pub(crate) fn merge_keys(parts: Vec<Vec<u128>>) -> Vec<u128> {
    let mut all: Vec<u128> = parts.into_iter().flatten().collect();
    all.par_sort_unstable();
    all.dedup();
    all
}

/// Exact `{τ(x)|_F : x ∈ U}` by enumerating `x|_{F+M}`.
pub fn image_window(
    nuca: &RuleAssignment,
    window: &FiniteSet,
    cylinder: Option<&Cylinder>,
    budget: &Budget,
) -> Result<PatternSet> {
    if let Some(u) = cylinder {
        check_dim(nuca.dim(), u.dim())?;
    }
    let plan = WindowPlan::new(nuca, window)?;
    let (base, free) = pin_inputs(plan.input(), cylinder);
    budget.check_window("enumerating an image window", free.len())?;
    let q = nuca.alphabet();
    let out_codec = KeyCodec::new(q, window.len())?;
    let parts = par_chunks(
        budget,
        "enumerating an image window",
        q,
        free.len(),
        || (Vec::new(), base.clone(), vec![0; window.len()]),
        |(keys, x, out): &mut (Vec<u128>, Vec<Symbol>, Vec<Symbol>), digits| {
            for (&i, &d) in free.iter().zip(digits) {
                x[i] = d;
            }
            plan.eval(x, out);
            keys.push(out_codec.encode(out));
        },
    )?;
    let parts = parts
        .into_iter()
        .map(|(mut k, _, _)| {
            k.sort_unstable();
            k.dedup();
            k
        })
        .collect();
    PatternSet::from_keys(window.clone(), q, merge_keys(parts))
}
