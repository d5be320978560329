use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Lattice dimension. Only `Z` and `Z^2` are supported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dim {
    One,
    Two,
}

impl Dim {
    pub fn rank(self) -> usize {
        match self {
            Dim::One => 1,
            Dim::Two => 2,
        }
    }

    pub fn from_rank(d: usize) -> Option<Dim> {
        match d {
            1 => Some(Dim::One),
            2 => Some(Dim::Two),
            _ => None,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rank())
    }
}

/// A cell of `Z^d`. In dimension one the second coordinate is always zero,
/// so the derived ordering is lexicographic in both dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    dim: Dim,
    coords: [i64; 2],
}

impl Cell {
    pub const fn d1(x: i64) -> Cell {
        Cell {
            dim: Dim::One,
            coords: [x, 0],
        }
    }

    pub const fn d2(x: i64, y: i64) -> Cell {
        Cell {
            dim: Dim::Two,
            coords: [x, y],
        }
    }

    pub fn origin(dim: Dim) -> Cell {
        Cell { dim, coords: [0, 0] }
    }

    /// Builds a cell from a coordinate slice of length 1 or 2.
    pub fn from_slice(coords: &[i64]) -> Option<Cell> {
        match *coords {
            [x] => Some(Cell::d1(x)),
            [x, y] => Some(Cell::d2(x, y)),
            _ => None,
        }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords[..self.dim.rank()]
    }

    pub fn x(&self) -> i64 {
        self.coords[0]
    }

    pub fn y(&self) -> i64 {
        self.coords[1]
    }

    /// Sup norm.
    pub fn norm(&self) -> i64 {
        self.coords[0].abs().max(self.coords[1].abs())
    }

    pub fn dot(&self, a: &[i64]) -> i64 {
        self.coords().iter().zip(a).map(|(x, y)| x * y).sum()
    }

    pub fn scale(&self, k: i64) -> Cell {
        Cell {
            dim: self.dim,
            coords: [self.coords[0] * k, self.coords[1] * k],
        }
    }
}

impl Add for Cell {
    type Output = Cell;
    fn add(self, rhs: Cell) -> Cell {
        debug_assert_eq!(self.dim, rhs.dim);
        Cell {
            dim: self.dim,
            coords: [self.coords[0] + rhs.coords[0], self.coords[1] + rhs.coords[1]],
        }
    }
}

impl Sub for Cell {
    type Output = Cell;
    fn sub(self, rhs: Cell) -> Cell {
        debug_assert_eq!(self.dim, rhs.dim);
        Cell {
            dim: self.dim,
            coords: [self.coords[0] - rhs.coords[0], self.coords[1] - rhs.coords[1]],
        }
    }
}

impl Neg for Cell {
    type Output = Cell;
    fn neg(self) -> Cell {
        Cell {
            dim: self.dim,
            coords: [-self.coords[0], -self.coords[1]],
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dim {
            Dim::One => write!(f, "{}", self.coords[0]),
            Dim::Two => write!(f, "({},{})", self.coords[0], self.coords[1]),
        }
    }
}
