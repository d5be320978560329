//! Linear local rules and their assignment to cells.

use std::sync::Arc;

use crate::density::LatticeSet;
use crate::engine::{RuleAssignment, RuleTable, MAX_TABLE_ENTRIES};
use crate::error::{Error, Result};
use crate::lattice::{check_dim, Cell, Dim, FiniteSet, Symbol};

use super::field::Field;
use super::matrix::Matrix;

/// `x ↦ Σ_{m ∈ M} B_m x(g + m)` with one `k × k` matrix per memory offset,
/// listed in the sorted order of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRule {
    name: String,
    memory: FiniteSet,
    k: usize,
    coeffs: Vec<Matrix>,
}

impl LinearRule {
    pub fn new(name: impl Into<String>, field: Field, memory: FiniteSet, k: usize, coeffs: Vec<Matrix>) -> Result<LinearRule> {
        let name = name.into();
        if k == 0 {
            return Err(Error::Invalid("vector dimension k must be positive".into()));
        }
        if memory.is_empty() {
            return Err(Error::Invalid(format!("rule '{name}' has an empty memory")));
        }
        if coeffs.len() != memory.len() {
            return Err(Error::Invalid(format!(
                "rule '{name}' has {} coefficient blocks for {} memory offsets",
                coeffs.len(),
                memory.len()
            )));
        }
        for b in &coeffs {
            if b.rows() != k || b.cols() != k {
                return Err(Error::Invalid(format!("rule '{name}' has a block that is not {k}x{k}")));
            }
            if (0..k).any(|r| b.row(r).iter().any(|&v| !field.contains(v))) {
                return Err(Error::Invalid(format!("rule '{name}' has an entry outside {field}")));
            }
        }
        Ok(LinearRule { name, memory, k, coeffs })
    }

    /// `Σ w_m x(g + m)` acting componentwise; `weights` follows the order of `M`.
    pub fn scalar(name: impl Into<String>, field: Field, memory: FiniteSet, k: usize, weights: &[u8]) -> Result<LinearRule> {
        let coeffs = weights
            .iter()
            .map(|&w| {
                let mut b = Matrix::zeros(k, k);
                for i in 0..k {
                    b.set(i, i, w % field.order());
                }
                b
            })
            .collect();
        LinearRule::new(name, field, memory, k, coeffs)
    }

    /// `x(g + offset)`.
    pub fn projection(name: impl Into<String>, field: Field, memory: FiniteSet, k: usize, offset: Cell) -> Result<LinearRule> {
        let weights: Vec<u8> = memory.iter().map(|&m| u8::from(m == offset)).collect();
        if !memory.contains(&offset) {
            return Err(Error::Invalid(format!("offset {offset} is not in the memory {memory}")));
        }
        LinearRule::scalar(name, field, memory, k, &weights)
    }

    /// The zero map.
    pub fn zero(name: impl Into<String>, field: Field, memory: FiniteSet, k: usize) -> Result<LinearRule> {
        let weights = vec![0; memory.len()];
        LinearRule::scalar(name, field, memory, k, &weights)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn memory(&self) -> &FiniteSet {
        &self.memory
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> &[Matrix] {
        &self.coeffs
    }

    /// Output vector given the input vectors `x(g + m)` concatenated in memory order.
    pub fn apply(&self, field: Field, input: &[u8]) -> Vec<u8> {
        let k = self.k;
        let mut out = vec![0u8; k];
        for (j, b) in self.coeffs.iter().enumerate() {
            let y = b.mul_vec(field, &input[j * k..(j + 1) * k]);
            for (o, v) in out.iter_mut().zip(y) {
                *o = field.add(*o, v);
            }
        }
        out
    }
}

/// A default linear rule plus ordered `(region, rule)` overrides; the first
/// matching region wins.
#[derive(Clone, Debug)]
pub struct LinearAssignment {
    field: Field,
    dim: Dim,
    regions: Vec<(LatticeSet, Arc<LinearRule>)>,
    default: Arc<LinearRule>,
}

impl LinearAssignment {
    pub fn uniform(field: Field, rule: LinearRule) -> LinearAssignment {
        LinearAssignment {
            field,
            dim: rule.memory.dim(),
            regions: Vec::new(),
            default: Arc::new(rule),
        }
    }

    pub fn new(field: Field, default: LinearRule, regions: Vec<(LatticeSet, LinearRule)>) -> Result<LinearAssignment> {
        let mut a = LinearAssignment::uniform(field, default);
        for (set, rule) in regions {
            a.push_region(set, rule)?;
        }
        Ok(a)
    }

    pub fn push_region(&mut self, set: LatticeSet, rule: LinearRule) -> Result<()> {
        check_dim(self.dim, set.validate()?)?;
        if rule.memory != self.default.memory || rule.k != self.default.k {
            return Err(Error::Invalid(format!(
                "rule '{}' must share the memory and vector dimension of '{}'",
                rule.name, self.default.name
            )));
        }
        self.regions.push((set, Arc::new(rule)));
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.default.k
    }

    pub fn memory(&self) -> &FiniteSet {
        &self.default.memory
    }

    pub fn regions(&self) -> impl Iterator<Item = (&LatticeSet, &LinearRule)> {
        self.regions.iter().map(|(s, r)| (s, r.as_ref()))
    }

    pub fn default_rule(&self) -> &LinearRule {
        &self.default
    }

    /// `0` for the default rule, `i + 1` for region `i`.
    pub fn rule_index(&self, g: Cell) -> usize {
        self.regions.iter().position(|(s, _)| s.contains(g)).map_or(0, |i| i + 1)
    }

    pub fn rule_by_index(&self, i: usize) -> &LinearRule {
        if i == 0 {
            &self.default
        } else {
            &self.regions[i - 1].1
        }
    }

    pub fn rule_at(&self, g: Cell) -> &LinearRule {
        self.rule_by_index(self.rule_index(g))
    }

    /// Number of symbols `p^k` of the vector alphabet, if it fits in a `u8` alphabet.
    pub fn symbol_count(&self) -> Option<u8> {
        let n = (self.field.order() as u64).checked_pow(self.k() as u32)?;
        u8::try_from(n).ok()
    }

    /// Symbol of a vector: `Σ x_j p^{k-1-j}`, so `x_0` is most significant.
    pub fn encode(&self, v: &[u8]) -> Symbol {
        v.iter().fold(0u32, |acc, &x| acc * self.field.order() as u32 + x as u32) as Symbol
    }

    pub fn decode(&self, s: Symbol) -> Vec<u8> {
        let p = self.field.order() as u32;
        let mut s = s as u32;
        let mut v = vec![0u8; self.k()];
        for x in v.iter_mut().rev() {
            *x = (s % p) as u8;
            s /= p;
        }
        v
    }

    /// The same NUCA as lookup tables over the alphabet of size `p^k`.
    pub fn to_rule_assignment(&self) -> Result<RuleAssignment> {
        let q = self
            .symbol_count()
            .ok_or_else(|| Error::Precondition(format!("{}^{} symbols do not fit a byte alphabet", self.field.order(), self.k())))?;
        let entries = (q as u128).checked_pow(self.memory().len() as u32).unwrap_or(u128::MAX);
        if entries > MAX_TABLE_ENTRIES {
            return Err(Error::budget("tabulating a linear rule", format!("{q}^{}", self.memory().len()), MAX_TABLE_ENTRIES));
        }
        let table = |r: &LinearRule| {
            RuleTable::from_fn(r.name.clone(), r.memory.clone(), q, |x| {
                let input: Vec<u8> = x.iter().flat_map(|&s| self.decode(s)).collect();
                self.encode(&r.apply(self.field, &input))
            })
        };
        let mut out = RuleAssignment::uniform(table(&self.default)?);
        for (set, r) in &self.regions {
            out.push_region(set.clone(), table(r)?)?;
        }
        Ok(out)
    }
}
