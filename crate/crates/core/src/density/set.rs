use num_integer::Integer;

use crate::error::{Error, Result};
use crate::lattice::{check_dim, Cell, Dim, FiniteSet, PeriodLattice};

/// A subgroup of `Z^d` given by generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Subgroup {
    /// `{0}`.
    Trivial(Dim),
    /// `Z * step * dir` in `Z^2`, with `dir` primitive and `step > 0`.
    Line { dir: Cell, step: i64 },
    /// A finite-index subgroup.
    Full(PeriodLattice),
}

impl Subgroup {
    pub fn from_generators(dim: Dim, gens: &[Cell]) -> Result<Subgroup> {
        for g in gens {
            check_dim(dim, g.dim())?;
        }
        let nonzero: Vec<Cell> = gens.iter().copied().filter(|g| *g != Cell::origin(dim)).collect();
        let Some(&first) = nonzero.first() else {
            return Ok(Subgroup::Trivial(dim));
        };
        if dim == Dim::One {
            return Ok(Subgroup::Full(PeriodLattice::from_generators(dim, &nonzero)?));
        }
        let parallel = nonzero
            .iter()
            .all(|g| g.x() * first.y() - g.y() * first.x() == 0);
        if !parallel {
            return Ok(Subgroup::Full(PeriodLattice::from_generators(dim, &nonzero)?));
        }
        let g0 = first.x().gcd(&first.y());
        let mut dir = Cell::d2(first.x() / g0, first.y() / g0);
        // canonical sign: first nonzero coordinate positive
        if dir.x() < 0 || (dir.x() == 0 && dir.y() < 0) {
            dir = -dir;
        }
        let step = nonzero.iter().fold(0i64, |acc, g| {
            let t = if dir.x() != 0 { g.x() / dir.x() } else { g.y() / dir.y() };
            acc.gcd(&t)
        });
        Ok(Subgroup::Line { dir, step })
    }

    pub fn dim(&self) -> Dim {
        match self {
            Subgroup::Trivial(d) => *d,
            Subgroup::Line { .. } => Dim::Two,
            Subgroup::Full(l) => l.dim(),
        }
    }

    pub fn contains(&self, v: Cell) -> bool {
        match self {
            Subgroup::Trivial(d) => v == Cell::origin(*d),
            Subgroup::Line { dir, step } => {
                if v.x() * dir.y() - v.y() * dir.x() != 0 {
                    return false;
                }
                let t = if dir.x() != 0 { v.x() / dir.x() } else { v.y() / dir.y() };
                t % step == 0
            }
            Subgroup::Full(l) => l.contains(v),
        }
    }

    /// `[Z^d : H]` when finite.
    pub fn index(&self) -> Option<u64> {
        match self {
            Subgroup::Full(l) => Some(l.index()),
            _ => None,
        }
    }
}

/// Closed algebra of subsets of `Z^d`: finite sets, cosets, half-spaces and
/// the sets of perfect powers, combined with boolean operators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LatticeSet {
    Empty(Dim),
    All(Dim),
    Finite(FiniteSet),
    /// `offset + H`, remembering the generators it was written with.
    Coset {
        generators: Vec<Cell>,
        subgroup: Subgroup,
        offset: Cell,
    },
    /// `{x : <normal, x> >= bound}`.
    HalfSpace { normal: Cell, bound: i64 },
    /// `{m^exponent + offset : m in Z}` in `Z`.
    Powers { exponent: u32, offset: i64 },
    Union(Vec<LatticeSet>),
    Intersection(Vec<LatticeSet>),
    Complement(Box<LatticeSet>),
    Difference(Box<LatticeSet>, Box<LatticeSet>),
}

impl LatticeSet {
    pub fn finite(set: FiniteSet) -> LatticeSet {
        LatticeSet::Finite(set)
    }

    /// `aZ + b` in `Z`.
    pub fn progression(a: i64, b: i64) -> Result<LatticeSet> {
        LatticeSet::coset(Dim::One, vec![Cell::d1(a)], Cell::d1(b))
    }

    pub fn coset(dim: Dim, generators: Vec<Cell>, offset: Cell) -> Result<LatticeSet> {
        check_dim(dim, offset.dim())?;
        let subgroup = Subgroup::from_generators(dim, &generators)?;
        Ok(LatticeSet::Coset {
            generators,
            subgroup,
            offset,
        })
    }

    pub fn half_space(normal: Cell, bound: i64) -> Result<LatticeSet> {
        if normal == Cell::origin(normal.dim()) {
            return Err(Error::Invalid("half-space normal must be nonzero".into()));
        }
        Ok(LatticeSet::HalfSpace { normal, bound })
    }

    pub fn powers(exponent: u32, offset: i64) -> Result<LatticeSet> {
        if exponent < 2 {
            return Err(Error::Invalid("power exponent must be at least 2".into()));
        }
        Ok(LatticeSet::Powers { exponent, offset })
    }

    pub fn union(parts: Vec<LatticeSet>) -> LatticeSet {
        LatticeSet::Union(parts)
    }

    pub fn intersection(parts: Vec<LatticeSet>) -> LatticeSet {
        LatticeSet::Intersection(parts)
    }

    pub fn complement(s: LatticeSet) -> LatticeSet {
        LatticeSet::Complement(Box::new(s))
    }

    pub fn difference(a: LatticeSet, b: LatticeSet) -> LatticeSet {
        LatticeSet::Difference(Box::new(a), Box::new(b))
    }

    pub fn dim(&self) -> Dim {
        match self {
            LatticeSet::Empty(d) | LatticeSet::All(d) => *d,
            LatticeSet::Finite(f) => f.dim(),
            LatticeSet::Coset { offset, .. } => offset.dim(),
            LatticeSet::HalfSpace { normal, .. } => normal.dim(),
            LatticeSet::Powers { .. } => Dim::One,
            LatticeSet::Union(v) | LatticeSet::Intersection(v) => {
                v.first().map(LatticeSet::dim).unwrap_or(Dim::One)
            }
            LatticeSet::Complement(s) => s.dim(),
            LatticeSet::Difference(a, _) => a.dim(),
        }
    }

    /// Checks that every node lives in the same dimension.
    pub fn validate(&self) -> Result<Dim> {
        let d = self.dim();
        self.check_dim_rec(d)?;
        Ok(d)
    }

    fn check_dim_rec(&self, d: Dim) -> Result<()> {
        check_dim(d, self.dim())?;
        match self {
            LatticeSet::Union(v) | LatticeSet::Intersection(v) => {
                if v.is_empty() {
                    return Err(Error::Invalid("union/intersection needs at least one operand".into()));
                }
                v.iter().try_for_each(|s| s.check_dim_rec(d))
            }
            LatticeSet::Complement(s) => s.check_dim_rec(d),
            LatticeSet::Difference(a, b) => {
                a.check_dim_rec(d)?;
                b.check_dim_rec(d)
            }
            _ => Ok(()),
        }
    }

    pub fn contains(&self, c: Cell) -> bool {
        match self {
            LatticeSet::Empty(_) => false,
            LatticeSet::All(_) => true,
            LatticeSet::Finite(f) => f.contains(&c),
            LatticeSet::Coset { subgroup, offset, .. } => subgroup.contains(c - *offset),
            LatticeSet::HalfSpace { normal, bound } => c.dot(normal.coords()) >= *bound,
            LatticeSet::Powers { exponent, offset } => is_perfect_power(c.x() - offset, *exponent),
            LatticeSet::Union(v) => v.iter().any(|s| s.contains(c)),
            LatticeSet::Intersection(v) => v.iter().all(|s| s.contains(c)),
            LatticeSet::Complement(s) => !s.contains(c),
            LatticeSet::Difference(a, b) => a.contains(c) && !b.contains(c),
        }
    }

    /// `S + g`.
    pub fn translate(&self, g: Cell) -> Result<LatticeSet> {
        check_dim(self.dim(), g.dim())?;
        Ok(match self {
            LatticeSet::Empty(_) | LatticeSet::All(_) => self.clone(),
            LatticeSet::Finite(f) => LatticeSet::Finite(f.translate(g)?),
            LatticeSet::Coset {
                generators,
                subgroup,
                offset,
            } => LatticeSet::Coset {
                generators: generators.clone(),
                subgroup: subgroup.clone(),
                offset: *offset + g,
            },
            LatticeSet::HalfSpace { normal, bound } => LatticeSet::HalfSpace {
                normal: *normal,
                bound: bound + g.dot(normal.coords()),
            },
            LatticeSet::Powers { exponent, offset } => LatticeSet::Powers {
                exponent: *exponent,
                offset: offset + g.x(),
            },
            LatticeSet::Union(v) => LatticeSet::Union(v.iter().map(|s| s.translate(g)).collect::<Result<_>>()?),
            LatticeSet::Intersection(v) => {
                LatticeSet::Intersection(v.iter().map(|s| s.translate(g)).collect::<Result<_>>()?)
            }
            LatticeSet::Complement(s) => LatticeSet::Complement(Box::new(s.translate(g)?)),
            LatticeSet::Difference(a, b) => {
                LatticeSet::Difference(Box::new(a.translate(g)?), Box::new(b.translate(g)?))
            }
        })
    }

    /// `S ∩ F` as a finite set.
    pub fn within(&self, window: &FiniteSet) -> FiniteSet {
        window.filter(|c| self.contains(*c))
    }

    pub fn count_in(&self, window: &FiniteSet) -> u64 {
        window.iter().filter(|c| self.contains(**c)).count() as u64
    }

    /// True when the set is a finite atom (or built only from finite atoms
    /// by union, intersection and difference with a finite left side).
    pub fn as_finite(&self) -> Option<FiniteSet> {
        match self {
            LatticeSet::Empty(d) => Some(FiniteSet::empty(*d)),
            LatticeSet::Finite(f) => Some(f.clone()),
            LatticeSet::Union(v) => {
                let mut acc = FiniteSet::empty(self.dim());
                for s in v {
                    acc = acc.union(&s.as_finite()?);
                }
                Some(acc)
            }
            LatticeSet::Intersection(v) => {
                let fin = v.iter().find_map(|s| s.as_finite())?;
                Some(fin.filter(|c| v.iter().all(|s| s.contains(*c))))
            }
            LatticeSet::Difference(a, b) => {
                let fa = a.as_finite()?;
                Some(fa.filter(|c| !b.contains(*c)))
            }
            _ => None,
        }
    }
}

fn is_perfect_power(n: i64, k: u32) -> bool {
    if n == 0 || n == 1 {
        return true;
    }
    if n < 0 {
        return k % 2 == 1 && is_perfect_power(-n, k);
    }
    let guess = (n as f64).powf(1.0 / k as f64).round() as i64;
    (guess.saturating_sub(1)..=guess + 1).any(|m| m >= 0 && m.checked_pow(k) == Some(n))
}
