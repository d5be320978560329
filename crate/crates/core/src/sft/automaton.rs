//! Transfer automaton of a one-dimensional SFT: states are words of length
//! `w - 1`, edges are allowed words of length `w`.

use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lattice::{FiniteSet, KeyCodec, PatternSet, Symbol};

use super::Sft;

const MAX_STATES: u128 = 1 << 22;

pub(crate) struct Automaton {
    q: Symbol,
    /// Window width.
    w: usize,
    state_codec: KeyCodec,
    /// Out-edges `(symbol, target)` between states that lie on bi-infinite paths.
    out: Vec<Vec<(Symbol, usize)>>,
    alive: Vec<bool>,
}

impl Automaton {
    pub(crate) fn new(sft: &Sft) -> Result<Automaton> {
        let q = sft.alphabet();
        let w = sft.window().len();
        let state_codec = KeyCodec::new(q, w - 1)?;
        if state_codec.count() > MAX_STATES {
            return Err(Error::budget("building the transfer automaton", state_codec.count(), MAX_STATES));
        }
        let n = state_codec.count() as usize;
        let mut out = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        let word_count = (q as u128).pow(w as u32);
        for key in 0..word_count {
            if !sft.is_allowed_key(key) {
                continue;
            }
            let from = (key / q as u128) as usize;
            let to = (key % state_codec.count()) as usize;
            out[from].push(((key % q as u128) as Symbol, to));
            indeg[to] += 1;
        }
        let mut alive = vec![true; n];
        let mut outdeg: Vec<usize> = out.iter().map(Vec::len).collect();
        let mut preds = vec![Vec::new(); n];
        for (s, edges) in out.iter().enumerate() {
            for &(_, t) in edges {
                preds[t].push(s);
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&s| indeg[s] == 0 || outdeg[s] == 0).collect();
        for &s in &queue {
            alive[s] = false;
        }
        while let Some(s) = queue.pop() {
            for &(_, t) in &out[s] {
                indeg[t] -= 1;
                if alive[t] && indeg[t] == 0 {
                    alive[t] = false;
                    queue.push(t);
                }
            }
            for &p in &preds[s] {
                outdeg[p] -= 1;
                if alive[p] && outdeg[p] == 0 {
                    alive[p] = false;
                    queue.push(p);
                }
            }
        }
        for (s, edges) in out.iter_mut().enumerate() {
            if alive[s] {
                edges.retain(|&(_, t)| alive[t]);
            } else {
                edges.clear();
            }
        }
        Ok(Automaton {
            q,
            w,
            state_codec,
            out,
            alive,
        })
    }

    fn states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.alive.len()).filter(|&s| self.alive[s])
    }

    fn state_word(&self, s: usize) -> Vec<Symbol> {
        self.state_codec.decode(s as u128)
    }

    pub(crate) fn state_of(&self, word: &[Symbol]) -> usize {
        self.state_codec.encode(word) as usize
    }

    /// Number of walks of `steps` edges starting at each state.
    fn walk_counts(&self, steps: usize) -> Vec<u128> {
        let mut cnt: Vec<u128> = self.alive.iter().map(|&a| u128::from(a)).collect();
        for _ in 0..steps {
            cnt = (0..cnt.len())
                .map(|s| self.out[s].iter().fold(0u128, |acc, &(_, t)| acc.saturating_add(cnt[t])))
                .collect();
        }
        cnt
    }

    /// Words of length `len` occurring in bi-infinite walks.
    fn short_words(&self, len: usize) -> Vec<Vec<Symbol>> {
        let mut words: Vec<Vec<Symbol>> = self.states().map(|s| self.state_word(s)[..len].to_vec()).collect();
        words.sort();
        words.dedup();
        words
    }

    /// `|X_F|` for an interval of `len` cells.
    pub(crate) fn count(&self, len: usize) -> Result<u128> {
        if len < self.w - 1 {
            return Ok(self.short_words(len).len() as u128);
        }
        let total = self.walk_counts(len - (self.w - 1)).into_iter().fold(0u128, u128::saturating_add);
        if total == u128::MAX {
            return Err(Error::budget("counting SFT patterns", "overflow", "2^128"));
        }
        Ok(total)
    }

    /// Every word of length `len` in the language, in lexicographic order.
    pub(crate) fn words(&self, len: usize, budget: &Budget) -> Result<Vec<u128>> {
        let during = "enumerating SFT patterns";
        budget.check_patterns(during, self.count(len)?)?;
        let codec = KeyCodec::new(self.q, len)?;
        if len < self.w - 1 {
            return Ok(self.short_words(len).iter().map(|w| codec.encode(w)).collect());
        }
        let steps = len - (self.w - 1);
        let starts: Vec<usize> = self.states().collect();
        let parts: Vec<Vec<u128>> = starts
            .par_iter()
            .map(|&s| {
                budget.check_time(during)?;
                let mut acc = Vec::new();
                let prefix = codec_prefix(&self.state_word(s), self.q);
                self.extend(s, steps, prefix, &mut acc);
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        let mut keys: Vec<u128> = parts.into_iter().flatten().collect();
        keys.par_sort_unstable();
        Ok(keys)
    }

    fn extend(&self, s: usize, steps: usize, key: u128, acc: &mut Vec<u128>) {
        if steps == 0 {
            acc.push(key);
            return;
        }
        for &(a, t) in &self.out[s] {
            self.extend(t, steps - 1, key * self.q as u128 + a as u128, acc);
        }
    }

    /// `X_F` for any finite `F ⊂ Z`, through its hull.
    pub(crate) fn language(&self, window: &FiniteSet, budget: &Budget) -> Result<PatternSet> {
        crate::lattice::check_dim(crate::lattice::Dim::One, window.dim())?;
        let Some((lo, hi)) = window.bounds() else {
            return PatternSet::from_keys(window.clone(), self.q, vec![0]);
        };
        let hull = FiniteSet::interval(lo.x(), hi.x());
        let keys = self.words(hull.len(), budget)?;
        let full = PatternSet::from_keys(hull, self.q, keys)?;
        if window.is_box() {
            Ok(full)
        } else {
            full.restrict(window)
        }
    }

    /// `reach[t]` lists the states reachable from `t` by exactly `steps` edges.
    fn reach(&self, from: usize, steps: usize) -> Vec<bool> {
        let mut cur = vec![false; self.alive.len()];
        cur[from] = self.alive[from];
        for _ in 0..steps {
            let mut next = vec![false; cur.len()];
            for (s, &on) in cur.iter().enumerate() {
                if on {
                    for &(_, t) in &self.out[s] {
                        next[t] = true;
                    }
                }
            }
            cur = next;
        }
        cur
    }

    /// Number of patterns on an interval of `len` cells that are restrictions of
    /// `N`-periodic points.
    pub(crate) fn periodic_count(&self, len: usize, period: usize) -> Result<u128> {
        let states: Vec<usize> = self.states().collect();
        if len >= period {
            // The pattern determines the cyclic word, so count closed walks.
            let mut total = 0u128;
            for &s in &states {
                total = total.saturating_add(self.walks_between(s, s, period));
            }
            // Cyclic words whose unrolling is a single pattern: one per closed walk.
            return Ok(total);
        }
        if len < self.w - 1 {
            let mut words: Vec<Vec<Symbol>> = states
                .iter()
                .filter(|&&s| self.reach(s, period)[s])
                .map(|&s| self.state_word(s)[..len].to_vec())
                .collect();
            words.sort();
            words.dedup();
            return Ok(words.len() as u128);
        }
        let inner = len - (self.w - 1);
        let closing = period - inner;
        let back: Vec<Vec<bool>> = (0..self.alive.len())
            .map(|t| if self.alive[t] { self.reach(t, closing) } else { Vec::new() })
            .collect();
        let total = states
            .par_iter()
            .map(|&s0| {
                let mut cnt = vec![0u128; self.alive.len()];
                cnt[s0] = 1;
                for _ in 0..inner {
                    let mut next = vec![0u128; cnt.len()];
                    for (s, &c) in cnt.iter().enumerate() {
                        if c > 0 {
                            for &(_, t) in &self.out[s] {
                                next[t] = next[t].saturating_add(c);
                            }
                        }
                    }
                    cnt = next;
                }
                cnt.iter()
                    .enumerate()
                    .filter(|&(t, &c)| c > 0 && back[t][s0])
                    .fold(0u128, |acc, (_, &c)| acc.saturating_add(c))
            })
            .reduce(|| 0, u128::saturating_add);
        Ok(total)
    }

    fn walks_between(&self, from: usize, to: usize, steps: usize) -> u128 {
        let mut cnt = vec![0u128; self.alive.len()];
        cnt[from] = 1;
        for _ in 0..steps {
            let mut next = vec![0u128; cnt.len()];
            for (s, &c) in cnt.iter().enumerate() {
                if c > 0 {
                    for &(_, t) in &self.out[s] {
                        next[t] = next[t].saturating_add(c);
                    }
                }
            }
            cnt = next;
        }
        cnt[to]
    }

    /// Symbols appended along some walk of exactly `steps` edges from `from` to `to`.
    fn walk(&self, from: usize, to: usize, steps: usize) -> Option<Vec<Symbol>> {
        let n = self.alive.len();
        let mut layers = vec![vec![false; n]];
        layers[0][from] = self.alive[from];
        for i in 0..steps {
            let mut next = vec![false; n];
            for (s, &on) in layers[i].iter().enumerate() {
                if on {
                    for &(_, t) in &self.out[s] {
                        next[t] = true;
                    }
                }
            }
            layers.push(next);
        }
        if !layers[steps][to] {
            return None;
        }
        let mut symbols = vec![0; steps];
        let mut cur = to;
        for i in (0..steps).rev() {
            let (s, a) = (0..n)
                .filter(|&s| layers[i][s])
                .find_map(|s| self.out[s].iter().find(|&&(_, t)| t == cur).map(|&(a, _)| (s, a)))
                .expect("layered reachability has a predecessor");
            symbols[i] = a;
            cur = s;
        }
        Some(symbols)
    }

    /// A cyclic word `c` of length `N` whose periodic extension is in `X` and
    /// satisfies `c[i mod N] = u[i]`.
    pub(crate) fn periodic_witness(&self, u: &[Symbol], period: usize) -> Option<Vec<Symbol>> {
        let k = self.w - 1;
        let sequence = if u.len() >= period {
            u[..period].to_vec()
        } else if u.len() < k {
            let s = self.states().find(|&s| self.state_word(s).starts_with(u) && self.reach(s, period)[s])?;
            let mut seq = self.state_word(s);
            seq.extend(self.walk(s, s, period)?);
            seq
        } else {
            let s0 = self.state_of(&u[..k]);
            let send = self.state_of(&u[u.len() - k..]);
            if !self.alive[s0] || !self.alive[send] {
                return None;
            }
            let mut seq = u.to_vec();
            seq.extend(self.walk(send, s0, period - (u.len() - k))?);
            seq
        };
        Some(sequence[..period].to_vec())
    }
}

fn codec_prefix(word: &[Symbol], q: Symbol) -> u128 {
    word.iter().fold(0u128, |acc, &a| acc * q as u128 + a as u128)
}

/// Every cyclic window of `c` is allowed.
pub(crate) fn cyclic_admissible(sft: &Sft, c: &[Symbol]) -> bool {
    let w = sft.window().len();
    let n = c.len();
    let mut buf = vec![0; w];
    (0..n).all(|i| {
        for (j, b) in buf.iter_mut().enumerate() {
            *b = c[(i + j) % n];
        }
        sft.is_allowed(&buf)
    })
}
