//! Closed-form densities.
//!
//! Finite sets, powers and cosets of infinite-index subgroups have Banach
//! density zero, so they are replaced by `false`. What remains is a boolean
//! formula over finite-index cosets (periodic modulo `N`, the lcm of their
//! indices) and half-spaces. Far from the origin the half-space atoms are
//! constant on each open sector cut out by the lines `<a_i, x> = 0`, so the
//! set is periodic on every sector. Centered boxes weight the sectors by
//! their share of `[-1,1]^d`; large boxes fit inside every sector, so the
//! Banach densities are the extreme sector densities.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::set::{LatticeSet, Subgroup};
use crate::lattice::{Cell, Dim};
use crate::Rational;

/// Largest `N^d` enumerated when computing sector densities.
pub const MAX_PERIOD_CELLS: u128 = 1 << 22;

#[derive(Clone, Debug)]
enum Node {
    Const(bool),
    Coset { subgroup: Subgroup, offset: Cell },
    Half(usize),
    Union(Vec<Node>),
    Inter(Vec<Node>),
    Not(Box<Node>),
    Diff(Box<Node>, Box<Node>),
}

impl Node {
    fn eval(&self, c: Cell, signs: &[bool]) -> bool {
        match self {
            Node::Const(b) => *b,
            Node::Coset { subgroup, offset } => subgroup.contains(c - *offset),
            Node::Half(i) => signs[*i],
            Node::Union(v) => v.iter().any(|n| n.eval(c, signs)),
            Node::Inter(v) => v.iter().all(|n| n.eval(c, signs)),
            Node::Not(n) => !n.eval(c, signs),
            Node::Diff(a, b) => a.eval(c, signs) && !b.eval(c, signs),
        }
    }
}

struct Compiler {
    normals: Vec<Cell>,
    period: u128,
    overflow: bool,
}

impl Compiler {
    fn compile(&mut self, s: &LatticeSet) -> Node {
        match s {
            LatticeSet::Empty(_) | LatticeSet::Finite(_) | LatticeSet::Powers { .. } => Node::Const(false),
            LatticeSet::All(_) => Node::Const(true),
            LatticeSet::Coset { subgroup, offset, .. } => match subgroup {
                Subgroup::Full(l) => {
                    let idx = l.index() as u128;
                    self.period = self.period.lcm(&idx);
                    if self.period > MAX_PERIOD_CELLS {
                        self.overflow = true;
                        self.period = 1;
                    }
                    Node::Coset {
                        subgroup: subgroup.clone(),
                        offset: *offset,
                    }
                }
                _ => Node::Const(false),
            },
            LatticeSet::HalfSpace { normal, .. } => {
                self.normals.push(*normal);
                Node::Half(self.normals.len() - 1)
            }
            LatticeSet::Union(v) => Node::Union(v.iter().map(|x| self.compile(x)).collect()),
            LatticeSet::Intersection(v) => Node::Inter(v.iter().map(|x| self.compile(x)).collect()),
            LatticeSet::Complement(x) => Node::Not(Box::new(self.compile(x))),
            LatticeSet::Difference(a, b) => Node::Diff(Box::new(self.compile(a)), Box::new(self.compile(b))),
        }
    }
}

/// One asymptotic sector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    /// Share of `[-1,1]^d` covered by the sector.
    pub weight: Rational,
    /// Truth value of each half-space atom deep inside the sector.
    pub signs: Vec<bool>,
    /// Density of the set inside the sector.
    pub density: Rational,
}

/// Exact asymptotic description of a set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Asymptotic {
    /// Common period of the coset atoms along every axis.
    pub period: u64,
    pub sectors: Vec<Sector>,
    /// Natural density along centered boxes.
    pub natural: Rational,
    pub lower_banach: Rational,
    pub upper_banach: Rational,
}

/// Exact densities, or `None` when the common period is too large.
pub fn asymptotic(set: &LatticeSet) -> Option<Asymptotic> {
    let dim = set.dim();
    let mut comp = Compiler {
        normals: Vec::new(),
        period: 1,
        overflow: false,
    };
    let node = comp.compile(set);
    if comp.overflow {
        return None;
    }
    let n = comp.period;
    let cells = match dim {
        Dim::One => n,
        Dim::Two => n.checked_mul(n)?,
    };
    if cells > MAX_PERIOD_CELLS {
        return None;
    }
    let n = n as i64;
    let shapes = sectors(dim, &comp.normals);
    let mut out = Vec::with_capacity(shapes.len());
    for (weight, signs) in shapes {
        let count: u64 = match dim {
            Dim::One => (0..n).filter(|&x| node.eval(Cell::d1(x), &signs)).count() as u64,
            Dim::Two => (0..n)
                .into_par_iter()
                .map(|y| (0..n).filter(|&x| node.eval(Cell::d2(x, y), &signs)).count() as u64)
                .sum(),
        };
        let density = Rational::new(count as i128, cells as i128);
        out.push(Sector { weight, signs, density });
    }
    let natural = out.iter().map(|s| s.weight * s.density).fold(Rational::zero(), |a, b| a + b);
    let lower_banach = out.iter().map(|s| s.density).min().expect("at least one sector");
    let upper_banach = out.iter().map(|s| s.density).max().expect("at least one sector");
    Some(Asymptotic {
        period: n as u64,
        sectors: out,
        natural,
        lower_banach,
        upper_banach,
    })
}

/// Open sectors of the line arrangement `{<a_i, x> = 0}` with their weights.
fn sectors(dim: Dim, normals: &[Cell]) -> Vec<(Rational, Vec<bool>)> {
    let mut out: Vec<(Rational, Vec<bool>)> = Vec::new();
    let mut push = |w: Rational, signs: Vec<bool>| {
        if let Some(e) = out.iter_mut().find(|e| e.1 == signs) {
            e.0 += w;
        } else {
            out.push((w, signs));
        }
    };
    match dim {
        Dim::One => {
            for dir in [1i64, -1] {
                let signs = normals.iter().map(|a| a.x() * dir > 0).collect();
                push(Rational::new(1, 2), signs);
            }
        }
        Dim::Two => {
            if normals.is_empty() {
                push(Rational::from_integer(1), Vec::new());
                return out;
            }
            let mut rays: Vec<(i64, i64)> = Vec::new();
            for a in normals {
                let g = a.x().gcd(&a.y());
                let v = (-a.y() / g, a.x() / g);
                rays.push(v);
                rays.push((-v.0, -v.1));
            }
            rays.sort_by(|p, q| angle_cmp(*p, *q));
            rays.dedup();
            let m = rays.len();
            for j in 0..m {
                let u = rays[j];
                let w = rays[(j + 1) % m];
                let cr = cross(u, w);
                let mid = if cr > 0 { (u.0 + w.0, u.1 + w.1) } else { (-u.1, u.0) };
                let signs = normals.iter().map(|a| a.x() * mid.0 + a.y() * mid.1 > 0).collect();
                let mut poly = square();
                poly = clip(&poly, (-u.1, u.0));
                if cr > 0 {
                    poly = clip(&poly, (w.1, -w.0));
                }
                push(polygon_area(&poly) / Rational::from_integer(4), signs);
            }
        }
    }
    out
}

fn cross(u: (i64, i64), w: (i64, i64)) -> i128 {
    u.0 as i128 * w.1 as i128 - u.1 as i128 * w.0 as i128
}

fn angle_cmp(p: (i64, i64), q: (i64, i64)) -> std::cmp::Ordering {
    let half = |v: (i64, i64)| if v.1 > 0 || (v.1 == 0 && v.0 > 0) { 0 } else { 1 };
    half(p).cmp(&half(q)).then_with(|| 0.cmp(&cross(p, q)))
}

type Point = (Rational, Rational);

fn square() -> Vec<Point> {
    let one = Rational::from_integer(1);
    vec![(-one, -one), (one, -one), (one, one), (-one, one)]
}

/// Sutherland-Hodgman clip against `n . p >= 0`.
fn clip(poly: &[Point], n: (i64, i64)) -> Vec<Point> {
    let (nx, ny) = (Rational::from_integer(n.0 as i128), Rational::from_integer(n.1 as i128));
    let f = |p: &Point| nx * p.0 + ny * p.1;
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        let (fp, fq) = (f(&p), f(&q));
        if !fp.is_negative() {
            out.push(p);
        }
        if (fp.is_positive() && fq.is_negative()) || (fp.is_negative() && fq.is_positive()) {
            let t = fp / (fp - fq);
            out.push((p.0 + (q.0 - p.0) * t, p.1 + (q.1 - p.1) * t));
        }
    }
    out
}

fn polygon_area(poly: &[Point]) -> Rational {
    let mut twice = Rational::zero();
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        twice += p.0 * q.1 - q.0 * p.1;
    }
    (twice / Rational::from_integer(2)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i128, b: i128) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn sector_weights_sum_to_one() {
        let normals = [Cell::d2(1, -1), Cell::d2(0, 1), Cell::d2(2, 1), Cell::d2(-1, 1)];
        for k in 0..=normals.len() {
            let s = sectors(Dim::Two, &normals[..k]);
            let total: Rational = s.iter().map(|x| x.0).sum();
            assert_eq!(total, r(1, 1), "{k} normals");
        }
    }

    #[test]
    fn progression_and_half_line() {
        let a = asymptotic(&LatticeSet::progression(5, 2).unwrap()).unwrap();
        assert_eq!((a.natural, a.lower_banach, a.upper_banach), (r(1, 5), r(1, 5), r(1, 5)));

        let h = asymptotic(&LatticeSet::half_space(Cell::d1(1), 0).unwrap()).unwrap();
        assert_eq!((h.natural, h.lower_banach, h.upper_banach), (r(1, 2), r(0, 1), r(1, 1)));
    }

    #[test]
    fn quadrant_with_coset() {
        // {x >= 0, y >= 0} intersected with (2Z)^2
        let q = LatticeSet::intersection(vec![
            LatticeSet::half_space(Cell::d2(1, 0), 0).unwrap(),
            LatticeSet::half_space(Cell::d2(0, 1), 0).unwrap(),
            LatticeSet::coset(Dim::Two, vec![Cell::d2(2, 0), Cell::d2(0, 2)], Cell::d2(0, 0)).unwrap(),
        ]);
        let a = asymptotic(&q).unwrap();
        assert_eq!(a.natural, r(1, 16));
        assert_eq!((a.lower_banach, a.upper_banach), (r(0, 1), r(1, 4)));
    }

    #[test]
    fn skew_half_plane_weight() {
        // y >= 2x: the centered square splits evenly
        let h = asymptotic(&LatticeSet::half_space(Cell::d2(-2, 1), 0).unwrap()).unwrap();
        assert_eq!(h.natural, r(1, 2));
        // x >= 0 and y >= 2x: wedge between directions (0,1) and (1,2), area 1/4 of the square quadrant
        let w = LatticeSet::intersection(vec![
            LatticeSet::half_space(Cell::d2(1, 0), 0).unwrap(),
            LatticeSet::half_space(Cell::d2(-2, 1), 0).unwrap(),
        ]);
        assert_eq!(asymptotic(&w).unwrap().natural, r(1, 16));
    }

    #[test]
    fn null_atoms_vanish() {
        let s = LatticeSet::union(vec![
            LatticeSet::powers(2, 0).unwrap(),
            LatticeSet::Finite(crate::FiniteSet::interval(-50, 50)),
        ]);
        let a = asymptotic(&s).unwrap();
        assert_eq!((a.natural, a.upper_banach), (r(0, 1), r(0, 1)));
        let c = asymptotic(&LatticeSet::complement(s)).unwrap();
        assert_eq!((c.natural, c.lower_banach), (r(1, 1), r(1, 1)));
    }

    #[test]
    fn large_period_is_refused() {
        let s = LatticeSet::union(vec![
            LatticeSet::coset(Dim::Two, vec![Cell::d2(3001, 0), Cell::d2(0, 1)], Cell::d2(0, 0)).unwrap(),
        ]);
        assert!(asymptotic(&s).is_none());
    }
}
