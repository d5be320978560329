//! Exact, window-level analysis of non-uniform cellular automata over `Z`
//! and `Z^2`.
//!
//! The crate is organised by subsystem:
//!
//! * [`lattice`]: cells, finite sets, Minkowski sums, interiors, Følner boxes,
//!   patterns and configurations.
//! * [`density`]: a closed algebra of lattice subsets with exact natural and
//!   Banach densities.
//! * [`engine`]: rule assignments, window evaluation, image windows,
//!   pre-injectivity witnesses and the open-image probe.
//! * [`entropy`]: pattern-count entropy profiles and the counting
//!   certificate for pre-injective restrictions.
//! * [`linear`]: linear rules over prime fields, window matrices, rank
//!   profiles, kernel search and pre-injectivity loci.
//! * [`sft`]: subshifts of finite type, languages, periodic points and the
//!   periodic-approximation and injectivity-counting checks.
//! * [`quasitiling`]: greedy quasi-tilings of finite regions.
//! * [`format`] and [`report`]: text grammars and the shared report format.

pub mod budget;
pub mod catalog;
pub mod density;
pub mod engine;
pub(crate) mod enumerate;
pub mod entropy;
pub mod error;
pub mod format;
pub mod lattice;
pub mod linear;
pub mod quasitiling;
pub mod report;
pub mod sft;

pub use budget::Budget;
pub use error::{Error, Result};
pub use lattice::{
    BoxFolner, Cell, CellSource, Configuration, Dim, FiniteSet, Pattern, PatternSet, PeriodLattice,
    Symbol,
};

/// Exact rationals used for densities, ratios and tolerances.
pub type Rational = num_rational::Ratio<i128>;
