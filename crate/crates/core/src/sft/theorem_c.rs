//! The counting chain `|Γ_{F_nΔ²}| >= |Q_n| >= |X_{F_n}| / |A|^{|SΔ|}` for a
//! cellular automaton on a one-dimensional SFT.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::budget::{saturating_pow, Budget};
use crate::engine::{Cylinder, RuleAssignment, RuleTable};
use crate::error::{Error, Result};
use crate::lattice::{check_dim, Dim, FiniteSet, KeyCodec, Symbol};

use super::automaton::Automaton;
use super::periodic::hypothesis;
use super::Sft;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremC {
    pub n: i64,
    pub n0: i64,
    pub r: i64,
    pub k: i64,
    /// `N = 2k_n + 4r`; `Q_n` consists of `N`-periodic points.
    pub period: i64,
    /// `S + [-r, r]`.
    pub s_delta: FiniteSet,
    /// `|X_{F_n}|`.
    pub language_count: u128,
    /// `|Q_n|`.
    pub q_count: u128,
    /// `|τ(X)|_{F_nΔ²}|`.
    pub gamma_count: u128,
    /// `|A|^{|SΔ|}`.
    pub factor: u128,
    pub injective: bool,
    /// Two cyclic words of `Q_n` (positions `0..N`) with the same image.
    pub collision: Option<(Vec<Symbol>, Vec<Symbol>)>,
}

impl TheoremC {
    /// `|Γ| >= |Q_n|` and `|Q_n| · |A|^{|SΔ|} >= |X_{F_n}|`.
    pub fn chain_holds(&self) -> bool {
        self.gamma_count >= self.q_count && self.q_count.saturating_mul(self.factor) >= self.language_count
    }
}

fn image_at(rule: &RuleTable, offsets: &[i64], c: &[Symbol], j: usize, buf: &mut [Symbol]) -> Symbol {
    let n = c.len() as i64;
    for (b, &m) in buf.iter_mut().zip(offsets) {
        *b = c[(j as i64 + m).rem_euclid(n) as usize];
    }
    rule.apply(buf)
}

/// Builds `Q_n = Fix(H_n) ∩ C(p)`, checks `τ` is injective on it and checks
/// the counting chain.
pub fn theorem_c_certificate(
    ca: &RuleAssignment,
    sft: &Sft,
    cylinder: &Cylinder,
    n: i64,
    n0: i64,
    r: i64,
    budget: &Budget,
) -> Result<TheoremC> {
    if sft.dim() != Dim::One {
        return Err(Error::Precondition("the counting certificate is implemented on Z".into()));
    }
    check_dim(sft.dim(), ca.dim())?;
    check_dim(sft.dim(), cylinder.dim())?;
    if !ca.is_uniform() {
        return Err(Error::Precondition("the counting certificate needs a uniform cellular automaton".into()));
    }
    if ca.alphabet() != sft.alphabet() {
        return Err(Error::Precondition("the automaton and the SFT use different alphabets".into()));
    }
    let s = cylinder
        .set()
        .as_finite()
        .ok_or_else(|| Error::Precondition("the cylinder must fix a finite set".into()))?;
    let p: Vec<(i64, Symbol)> = s
        .iter()
        .map(|&c| (c.x(), cylinder.pinned(c).expect("cells of the cylinder set are pinned")))
        .collect();
    let (k, period, _) = hypothesis(sft, n0, r, n, budget)?;
    let rule = ca.default_rule();
    let offsets: Vec<i64> = ca.memory().iter().map(|c| c.x()).collect();
    let automaton = Automaton::new(sft)?;
    preserves(sft, &automaton, rule, &offsets, budget)?;

    let s_delta = s.minkowski(&FiniteSet::interval(-r, r))?;
    let factor = saturating_pow(sft.alphabet() as u128, s_delta.len());
    let language_count = automaton.count((2 * k + 1) as usize)?;

    let nper = period as usize;
    let codec = KeyCodec::new(sft.alphabet(), nper)?;
    let mut fixed = vec![None; nper];
    let mut consistent = true;
    for &(x, v) in &p {
        let i = x.rem_euclid(period) as usize;
        match fixed[i] {
            Some(w) if w != v => consistent = false,
            _ => fixed[i] = Some(v),
        }
    }
    let mut q_count = 0u128;
    let mut collision = None;
    if consistent {
        let mut images: HashMap<u128, u128> = HashMap::new();
        let mut c = vec![0; nper];
        let mut buf = vec![0; offsets.len()];
        let mut wbuf = vec![0; sft.window().len()];
        let mut visit = |c: &[Symbol]| -> Result<()> {
            q_count += 1;
            if q_count.is_multiple_of(1 << 16) {
                budget.check_time("enumerating periodic points in the cylinder")?;
                budget.check_patterns("enumerating periodic points in the cylinder", q_count)?;
            }
            let img: Vec<Symbol> = (0..nper).map(|j| image_at(rule, &offsets, c, j, &mut buf)).collect();
            let key = codec.encode(c);
            if let Some(&other) = images.get(&codec.encode(&img)) {
                if collision.is_none() {
                    collision = Some((codec.decode(other), c.to_vec()));
                }
            } else {
                images.insert(codec.encode(&img), key);
            }
            Ok(())
        };
        cycles(sft, &fixed, 0, &mut c, &mut wbuf, &mut visit)?;
    }

    let gamma_count = gamma(sft, &automaton, rule, &offsets, k + 2 * r, budget)?;
    Ok(TheoremC {
        n,
        n0,
        r,
        k,
        period,
        s_delta,
        language_count,
        q_count,
        gamma_count,
        factor,
        injective: collision.is_none(),
        collision,
    })
}

/// Depth-first enumeration of cyclic words with every cyclic window allowed.
fn cycles(
    sft: &Sft,
    fixed: &[Option<Symbol>],
    i: usize,
    c: &mut [Symbol],
    wbuf: &mut [Symbol],
    visit: &mut dyn FnMut(&[Symbol]) -> Result<()>,
) -> Result<()> {
    let n = c.len();
    let w = wbuf.len();
    if i == n {
        let wraps = (0..n).filter(|&s| s + w > n).all(|s| {
            for (j, b) in wbuf.iter_mut().enumerate() {
                *b = c[(s + j) % n];
            }
            sft.is_allowed(wbuf)
        });
        return if wraps { visit(c) } else { Ok(()) };
    }
    let choices: Vec<Symbol> = match fixed[i] {
        Some(v) => vec![v],
        None => (0..sft.alphabet()).collect(),
    };
    for v in choices {
        c[i] = v;
        if i + 1 >= w {
            wbuf.copy_from_slice(&c[i + 1 - w..=i]);
            if !sft.is_allowed(wbuf) {
                continue;
            }
        }
        cycles(sft, fixed, i + 1, c, wbuf, visit)?;
    }
    Ok(())
}

fn apply_window(rule: &RuleTable, offsets: &[i64], word: &[Symbol], lo: i64, out: &mut [Symbol], buf: &mut [Symbol]) {
    for (j, o) in out.iter_mut().enumerate() {
        for (b, &m) in buf.iter_mut().zip(offsets) {
            *b = word[(j as i64 + m - lo) as usize];
        }
        *o = rule.apply(buf);
    }
}

/// Checks `τ(X) ⊆ X` on one window: `τ(u)|_Δ` is allowed for every `u ∈ X_{Δ+M}`.
fn preserves(sft: &Sft, automaton: &Automaton, rule: &RuleTable, offsets: &[i64], budget: &Budget) -> Result<()> {
    let w = sft.window().len() as i64;
    let lo = offsets.iter().copied().min().unwrap_or(0).min(0);
    let hi = offsets.iter().copied().max().unwrap_or(0).max(0);
    let len = (w + hi - lo) as usize;
    let codec = KeyCodec::new(sft.alphabet(), len)?;
    let mut out = vec![0; w as usize];
    let mut buf = vec![0; offsets.len()];
    for key in automaton.words(len, budget)? {
        let u = codec.decode(key);
        apply_window(rule, offsets, &u, lo, &mut out, &mut buf);
        if !sft.is_allowed(&out) {
            return Err(Error::Precondition(format!(
                "the automaton maps the admissible word {u:?} to the forbidden window {out:?}"
            )));
        }
    }
    Ok(())
}

/// `|τ(X)|_{[-half, half]}|`.
fn gamma(sft: &Sft, automaton: &Automaton, rule: &RuleTable, offsets: &[i64], half: i64, budget: &Budget) -> Result<u128> {
    let lo = offsets.iter().copied().min().unwrap_or(0).min(0);
    let hi = offsets.iter().copied().max().unwrap_or(0).max(0);
    let out_len = (2 * half + 1) as usize;
    let len = out_len + (hi - lo) as usize;
    let in_codec = KeyCodec::new(sft.alphabet(), len)?;
    let out_codec = KeyCodec::new(sft.alphabet(), out_len)?;
    let words = automaton.words(len, budget)?;
    let mut images: Vec<u128> = words
        .par_iter()
        .map_init(
            || (vec![0; out_len], vec![0; offsets.len()]),
            |(out, buf), &key| {
                let u = in_codec.decode(key);
                apply_window(rule, offsets, &u, lo, out, buf);
                out_codec.encode(out)
            },
        )
        .collect();
    images.par_sort_unstable();
    images.dedup();
    Ok(images.len() as u128)
}
