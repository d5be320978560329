use super::cell::Dim;
use super::finite::FiniteSet;
use super::pattern::{Pattern, Symbol};
use crate::error::{Error, Result};

/// Packs symbol sequences over `0..q` into `u128` keys, most significant
/// symbol first, so key order is lexicographic order of the sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KeyCodec {
    q: u128,
    len: usize,
}

impl KeyCodec {
    pub fn new(alphabet: u8, len: usize) -> Result<KeyCodec> {
        if alphabet == 0 {
            return Err(Error::Invalid("alphabet must be nonempty".into()));
        }
        let q = alphabet as u128;
        let bits = (128 - (q - 1).leading_zeros()).max(1) as usize;
        if q > 1 && len * bits > 128 {
            // exact check: q^len must fit
            let mut acc: u128 = 1;
            for _ in 0..len {
                acc = acc.checked_mul(q).ok_or_else(|| {
                    Error::budget("encoding patterns", format!("{alphabet}^{len}"), "2^128")
                })?;
            }
        }
        Ok(KeyCodec { q, len })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn encode(&self, values: &[Symbol]) -> u128 {
        debug_assert_eq!(values.len(), self.len);
        values.iter().fold(0u128, |acc, &v| acc * self.q + v as u128)
    }

    pub fn decode_into(&self, mut key: u128, out: &mut [Symbol]) {
        for slot in out.iter_mut().rev() {
            *slot = (key % self.q) as Symbol;
            key /= self.q;
        }
    }

    pub fn decode(&self, key: u128) -> Vec<Symbol> {
        let mut out = vec![0; self.len];
        self.decode_into(key, &mut out);
        out
    }

    /// Number of sequences, saturating.
    pub fn count(&self) -> u128 {
        crate::budget::saturating_pow(self.q, self.len)
    }
}

/// An exact set of patterns sharing one support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSet {
    support: FiniteSet,
    alphabet: u8,
    codec: KeyCodec,
    keys: Vec<u128>,
}

impl PatternSet {
    pub fn from_keys(support: FiniteSet, alphabet: u8, mut keys: Vec<u128>) -> Result<PatternSet> {
        let codec = KeyCodec::new(alphabet, support.len())?;
        keys.sort_unstable();
        keys.dedup();
        Ok(PatternSet {
            support,
            alphabet,
            codec,
            keys,
        })
    }

    pub fn from_patterns<'a>(
        support: FiniteSet,
        alphabet: u8,
        patterns: impl IntoIterator<Item = &'a Pattern>,
    ) -> Result<PatternSet> {
        let codec = KeyCodec::new(alphabet, support.len())?;
        let mut keys = Vec::new();
        for p in patterns {
            if p.support() != &support {
                return Err(Error::Invalid("pattern support differs from set support".into()));
            }
            keys.push(codec.encode(p.values()));
        }
        PatternSet::from_keys(support, alphabet, keys)
    }

    pub fn support(&self) -> &FiniteSet {
        &self.support
    }

    pub fn alphabet(&self) -> u8 {
        self.alphabet
    }

    pub fn dim(&self) -> Dim {
        self.support.dim()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[u128] {
        &self.keys
    }

    pub fn codec(&self) -> KeyCodec {
        self.codec
    }

    pub fn contains_values(&self, values: &[Symbol]) -> bool {
        values.len() == self.codec.len() && self.keys.binary_search(&self.codec.encode(values)).is_ok()
    }

    pub fn contains(&self, p: &Pattern) -> bool {
        p.support() == &self.support && self.contains_values(p.values())
    }

    pub fn iter(&self) -> impl Iterator<Item = Pattern> + '_ {
        self.keys.iter().map(move |&k| Pattern::new(self.support.clone(), self.codec.decode(k)).expect("codec length"))
    }

    /// The set of restrictions to `sub ⊆ support`.
    pub fn restrict(&self, sub: &FiniteSet) -> Result<PatternSet> {
        let idx: Vec<usize> = sub
            .iter()
            .map(|c| {
                self.support
                    .index_of(c)
                    .ok_or_else(|| Error::Invalid(format!("cell {c} is outside the pattern-set support")))
            })
            .collect::<Result<_>>()?;
        let sub_codec = KeyCodec::new(self.alphabet, sub.len())?;
        let mut buf = vec![0; self.codec.len()];
        let mut small = vec![0; sub.len()];
        let mut keys = Vec::with_capacity(self.keys.len());
        for &k in &self.keys {
            self.codec.decode_into(k, &mut buf);
            for (s, &i) in small.iter_mut().zip(&idx) {
                *s = buf[i];
            }
            keys.push(sub_codec.encode(&small));
        }
        PatternSet::from_keys(sub.clone(), self.alphabet, keys)
    }
}
