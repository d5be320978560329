//! Lattice geometry on `Z` and `Z^2`: cells, finite sets, Minkowski sums,
//! interiors and boundaries, centered Følner boxes, patterns and
//! configurations.

mod cell;
mod config;
mod finite;
mod folner;
mod pattern;
mod pattern_set;
mod period;

pub use cell::{Cell, Dim};
pub use config::{restrict, shift, Background, CellSource, Configuration};
pub use finite::FiniteSet;
pub(crate) use finite::check_dim;
pub use folner::{BoxFolner, RadiusSchedule};
pub use pattern::{Pattern, Symbol};
pub use pattern_set::{KeyCodec, PatternSet};
pub use period::PeriodLattice;

/// `F + M`.
pub fn minkowski(f: &FiniteSet, m: &FiniteSet) -> crate::Result<FiniteSet> {
    f.minkowski(m)
}

/// `F^{-M}`.
pub fn interior(f: &FiniteSet, m: &FiniteSet) -> crate::Result<FiniteSet> {
    f.interior(m)
}

/// `FM \ F^{-M}`.
pub fn boundary(f: &FiniteSet, m: &FiniteSet) -> crate::Result<FiniteSet> {
    f.boundary(m)
}
