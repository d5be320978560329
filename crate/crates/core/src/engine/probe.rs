use std::collections::BTreeMap;

use super::eval::image_window;
use super::rule::RuleAssignment;
use crate::budget::{saturating_pow, Budget};
use crate::error::{Error, Result};
use crate::lattice::{check_dim, FiniteSet, KeyCodec, Pattern};

/// First `q ∈ A^E` (lexicographic) with `{q} × A^{W \ E} ⊆ Γ_W`, if any.
pub fn image_open_probe(
    nuca: &RuleAssignment,
    e: &FiniteSet,
    w: &FiniteSet,
    budget: &Budget,
) -> Result<Option<Pattern>> {
    check_dim(nuca.dim(), e.dim())?;
    check_dim(nuca.dim(), w.dim())?;
    if !e.is_subset(w) {
        return Err(Error::Precondition("the probe support E must lie inside W".into()));
    }
    let image = image_window(nuca, w, None, budget)?;
    let q = nuca.alphabet();
    let positions: Vec<usize> = e.iter().map(|c| w.index_of(c).expect("E ⊆ W")).collect();
    let e_codec = KeyCodec::new(q, e.len())?;
    let needed = saturating_pow(q as u128, w.len() - e.len());
    let codec = image.codec();
    let mut counts: BTreeMap<u128, u128> = BTreeMap::new();
    let mut buf = vec![0; w.len()];
    let mut small = vec![0; e.len()];
    for &k in image.keys() {
        codec.decode_into(k, &mut buf);
        for (s, &i) in small.iter_mut().zip(&positions) {
            *s = buf[i];
        }
        *counts.entry(e_codec.encode(&small)).or_default() += 1;
    }
    Ok(counts
        .into_iter()
        .find(|&(_, n)| n == needed)
        .map(|(k, _)| Pattern::new(e.clone(), e_codec.decode(k)).expect("codec length")))
}
