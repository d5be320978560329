//! Subshifts of finite type on `Z` and `Z^2` given by a box window and its
//! allowed patterns.

mod automaton;
mod irreducible;
mod periodic;
mod search;
mod theorem_c;

use std::fmt;

use crate::budget::Budget;
use crate::engine::MAX_TABLE_ENTRIES;
use crate::entropy::PatternCounter;
use crate::error::{Error, Result};
use crate::lattice::{Cell, Dim, FiniteSet, KeyCodec, Pattern, PatternSet, Symbol};

pub use irreducible::{delta_irreducibility_check, IrreducibilityFailure, IrreducibilityVerdict};
pub use periodic::{periodic_approximation_check, periodic_points, PeriodicApproximation};
pub use theorem_c::{theorem_c_certificate, TheoremC};

/// `X = {x : (g^{-1}x)|_Δ ∈ allowed for every g}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sft {
    window: FiniteSet,
    alphabet: u8,
    codec: KeyCodec,
    /// Indexed by the key of a window pattern.
    allowed: Vec<bool>,
}

/// How a language was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LanguageMode {
    /// Globally admissible patterns.
    Exact,
    /// Patterns extending to a locally admissible pattern on `F + [-t·r, t·r]^d`;
    /// an upper approximation of the language.
    Padded { t: i64 },
}

impl fmt::Display for LanguageMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LanguageMode::Exact => write!(f, "exact"),
            LanguageMode::Padded { t } => write!(f, "padded(t={t})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Language {
    pub patterns: PatternSet,
    pub mode: LanguageMode,
}

impl Sft {
    pub fn from_fn(window: FiniteSet, alphabet: u8, allowed: impl Fn(&[Symbol]) -> bool) -> Result<Sft> {
        if !window.is_box() || window.is_empty() {
            return Err(Error::Invalid("the SFT window must be a nonempty box".into()));
        }
        if alphabet == 0 {
            return Err(Error::Invalid("the alphabet must be nonempty".into()));
        }
        let codec = KeyCodec::new(alphabet, window.len())?;
        if codec.count() > MAX_TABLE_ENTRIES {
            return Err(Error::budget(
                "tabulating SFT windows",
                format!("{alphabet}^{}", window.len()),
                MAX_TABLE_ENTRIES,
            ));
        }
        let mut buf = vec![0; window.len()];
        let allowed = (0..codec.count())
            .map(|k| {
                codec.decode_into(k, &mut buf);
                allowed(&buf)
            })
            .collect();
        Ok(Sft {
            window,
            alphabet,
            codec,
            allowed,
        })
    }

    /// Allowed window patterns listed explicitly, values in the order of the window cells.
    pub fn from_allowed(window: FiniteSet, alphabet: u8, allowed: &[Vec<Symbol>]) -> Result<Sft> {
        Self::check_words(&window, alphabet, allowed)?;
        Sft::from_fn(window, alphabet, |w| allowed.iter().any(|a| a == w))
    }

    /// Everything except the listed window patterns.
    pub fn from_forbidden(window: FiniteSet, alphabet: u8, forbidden: &[Vec<Symbol>]) -> Result<Sft> {
        Self::check_words(&window, alphabet, forbidden)?;
        Sft::from_fn(window, alphabet, |w| !forbidden.iter().any(|a| a == w))
    }

    pub fn full(window: FiniteSet, alphabet: u8) -> Result<Sft> {
        Sft::from_fn(window, alphabet, |_| true)
    }

    fn check_words(window: &FiniteSet, alphabet: u8, words: &[Vec<Symbol>]) -> Result<()> {
        for w in words {
            if w.len() != window.len() {
                return Err(Error::Invalid(format!(
                    "window pattern has {} symbols, the window has {} cells",
                    w.len(),
                    window.len()
                )));
            }
            if w.iter().any(|&s| s >= alphabet) {
                return Err(Error::Invalid(format!("window pattern uses a symbol outside 0..{alphabet}")));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> Dim {
        self.window.dim()
    }

    pub fn window(&self) -> &FiniteSet {
        &self.window
    }

    pub fn alphabet(&self) -> u8 {
        self.alphabet
    }

    /// Smallest `r` with the window inside `[-r, r]^d`.
    pub fn radius(&self) -> i64 {
        self.window.radius()
    }

    pub fn is_allowed(&self, values: &[Symbol]) -> bool {
        self.allowed[self.codec.encode(values) as usize]
    }

    pub(crate) fn is_allowed_key(&self, key: u128) -> bool {
        self.allowed[key as usize]
    }

    /// Allowed window patterns in lexicographic order.
    pub fn allowed_patterns(&self) -> Vec<Vec<Symbol>> {
        (0..self.codec.count())
            .filter(|&k| self.allowed[k as usize])
            .map(|k| self.codec.decode(k))
            .collect()
    }

    /// Forbidden window patterns in lexicographic order.
    pub fn forbidden_patterns(&self) -> Vec<Vec<Symbol>> {
        (0..self.codec.count())
            .filter(|&k| !self.allowed[k as usize])
            .map(|k| self.codec.decode(k))
            .collect()
    }

    pub fn is_full(&self) -> bool {
        self.allowed.iter().all(|&a| a)
    }

    /// Translates `g` with `g + Δ ⊆ set`.
    pub(crate) fn anchors(&self, set: &FiniteSet) -> Vec<Cell> {
        let first = self.window.cells()[0];
        set.iter()
            .map(|&c| c - first)
            .filter(|&g| self.window.iter().all(|&d| set.contains(&(g + d))))
            .collect()
    }

    /// Every window translate inside the support of `p` is allowed.
    pub fn locally_admissible(&self, p: &Pattern) -> bool {
        let mut buf = vec![0; self.window.len()];
        self.anchors(p.support()).into_iter().all(|g| {
            for (b, &d) in buf.iter_mut().zip(self.window.iter()) {
                *b = p.get(&(g + d)).expect("anchored window lies in the support");
            }
            self.is_allowed(&buf)
        })
    }

    /// `X_F`: exact for `d = 1`, padded with `t = 1` for `d = 2`.
    pub fn language(&self, window: &FiniteSet, budget: &Budget) -> Result<Language> {
        match self.dim() {
            Dim::One => self.exact_language(window, budget),
            Dim::Two => self.padded_language(window, 1, budget),
        }
    }

    /// Globally admissible patterns on `F` (`d = 1`).
    pub fn exact_language(&self, window: &FiniteSet, budget: &Budget) -> Result<Language> {
        let patterns = automaton::Automaton::new(self)?.language(window, budget)?;
        Ok(Language {
            patterns,
            mode: LanguageMode::Exact,
        })
    }

    /// Patterns on `F` extending to a locally admissible pattern on `F + [-t·r, t·r]^d`.
    pub fn padded_language(&self, window: &FiniteSet, t: i64, budget: &Budget) -> Result<Language> {
        if t < 0 {
            return Err(Error::Invalid("padding must be nonnegative".into()));
        }
        let patterns = search::padded_language(self, window, t * self.radius().max(1), budget)?;
        Ok(Language {
            patterns,
            mode: LanguageMode::Padded { t },
        })
    }

    /// `|X_F|`, exact for `d = 1` without enumerating when `F` is an interval.
    pub fn language_count(&self, window: &FiniteSet, budget: &Budget) -> Result<u128> {
        if self.dim() == Dim::One && window.is_box() && !window.is_empty() {
            return automaton::Automaton::new(self)?.count(window.len());
        }
        Ok(self.language(window, budget)?.patterns.len() as u128)
    }
}

impl fmt::Display for Sft {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SFT on Z^{} with window {} over {} symbols ({} allowed window patterns)",
            self.dim().rank(),
            self.window,
            self.alphabet,
            self.allowed.iter().filter(|&&a| a).count()
        )
    }
}

impl PatternCounter for Sft {
    fn dim(&self) -> Dim {
        self.window.dim()
    }

    fn alphabet(&self) -> u8 {
        self.alphabet
    }

    fn count(&self, window: &FiniteSet, budget: &Budget) -> Result<u128> {
        self.language_count(window, budget)
    }

    fn label(&self) -> String {
        match self.dim() {
            Dim::One => format!("SFT language (exact) over {} symbols", self.alphabet),
            Dim::Two => format!("SFT language (padded t=1) over {} symbols", self.alphabet),
        }
    }
}

/// `k_n = (n·n0 - 2r)(n0 + 1)`.
pub fn approximation_radius(n0: i64, r: i64, n: i64) -> Result<i64> {
    let k = n
        .checked_mul(n0)
        .and_then(|v| v.checked_sub(2 * r))
        .and_then(|v| v.checked_mul(n0 + 1))
        .ok_or_else(|| Error::Invalid("k_n overflows".into()))?;
    if k < 0 {
        return Err(Error::Precondition(format!("k_n = {k} is negative; need n·n0 >= 2r")));
    }
    Ok(k)
}
