use std::fmt;

use num_integer::Integer;

use super::cell::{Cell, Dim};
use crate::error::{Error, Result};

/// A full-rank subgroup `H <= Z^d`, kept in Hermite normal form.
///
/// In `Z` it is `nZ`. In `Z^2` the basis is `(a, 0), (b, c)` with `a, c > 0`
/// and `0 <= b < a`, so `[0, a) x [0, c)` is a fundamental domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodLattice {
    dim: Dim,
    a: i64,
    b: i64,
    c: i64,
}

impl PeriodLattice {
    /// `nZ^d`.
    pub fn scalar(dim: Dim, n: i64) -> Result<PeriodLattice> {
        if n <= 0 {
            return Err(Error::Invalid(format!("period must be positive, got {n}")));
        }
        Ok(match dim {
            Dim::One => PeriodLattice {
                dim,
                a: n,
                b: 0,
                c: 1,
            },
            Dim::Two => PeriodLattice {
                dim,
                a: n,
                b: 0,
                c: n,
            },
        })
    }

    /// The lattice generated by the given vectors; must be of full rank.
    pub fn from_generators(dim: Dim, gens: &[Cell]) -> Result<PeriodLattice> {
        for g in gens {
            super::finite::check_dim(dim, g.dim())?;
        }
        match dim {
            Dim::One => {
                let n = gens.iter().fold(0i64, |acc, g| acc.gcd(&g.x()));
                if n == 0 {
                    return Err(Error::Invalid("period lattice is not of full rank".into()));
                }
                PeriodLattice::scalar(dim, n)
            }
            Dim::Two => {
                // Fold generators into an HNF basis one at a time: `a` spans
                // H ∩ (Z x {0}), `top = (b, c)` carries the smallest positive y.
                let mut a = 0i64;
                let mut top: Option<(i64, i64)> = None;
                for g in gens {
                    let (x, y) = (g.x(), g.y());
                    if y == 0 {
                        a = a.gcd(&x);
                        continue;
                    }
                    match top {
                        None => top = Some((x * y.signum(), y.abs())),
                        Some((b, c)) => {
                            let eg = c.extended_gcd(&y);
                            let nb = eg.x * b + eg.y * x;
                            let z = (y / eg.gcd) * b - (c / eg.gcd) * x;
                            a = a.gcd(&z);
                            top = Some((nb, eg.gcd));
                        }
                    }
                }
                let (b, c) = top.unwrap_or((0, 0));
                if a == 0 || c == 0 {
                    return Err(Error::Invalid("period lattice is not of full rank".into()));
                }
                Ok(PeriodLattice {
                    dim,
                    a,
                    b: b.mod_floor(&a),
                    c,
                })
            }
        }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    /// `[Z^d : H]`, equal to the absolute determinant of any basis.
    pub fn index(&self) -> u64 {
        (self.a * self.c) as u64
    }

    pub fn basis(&self) -> Vec<Cell> {
        match self.dim {
            Dim::One => vec![Cell::d1(self.a)],
            Dim::Two => vec![Cell::d2(self.a, 0), Cell::d2(self.b, self.c)],
        }
    }

    /// Canonical representative of `v + H` inside the fundamental domain.
    pub fn reduce(&self, v: Cell) -> Cell {
        match self.dim {
            Dim::One => Cell::d1(v.x().mod_floor(&self.a)),
            Dim::Two => {
                let k = Integer::div_floor(&v.y(), &self.c);
                let x = v.x() - k * self.b;
                let y = v.y() - k * self.c;
                Cell::d2(x.mod_floor(&self.a), y)
            }
        }
    }

    /// Index of the class of `v` in `0..index()`, matching `fundamental_domain()`.
    pub fn class_index(&self, v: Cell) -> usize {
        let r = self.reduce(v);
        match self.dim {
            Dim::One => r.x() as usize,
            Dim::Two => (r.y() * self.a + r.x()) as usize,
        }
    }

    pub fn contains(&self, v: Cell) -> bool {
        self.reduce(v) == Cell::origin(self.dim)
    }

    /// Fundamental domain cells, ordered by `class_index`.
    pub fn fundamental_domain(&self) -> Vec<Cell> {
        match self.dim {
            Dim::One => (0..self.a).map(Cell::d1).collect(),
            Dim::Two => {
                let mut out = Vec::with_capacity(self.index() as usize);
                for y in 0..self.c {
                    for x in 0..self.a {
                        out.push(Cell::d2(x, y));
                    }
                }
                out
            }
        }
    }
}

impl fmt::Display for PeriodLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dim {
            Dim::One => write!(f, "{}Z", self.a),
            Dim::Two => write!(f, "<({},0),({},{})>", self.a, self.b, self.c),
        }
    }
}
