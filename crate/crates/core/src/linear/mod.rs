//! Linear NUCA over prime fields: window matrices, rank profiles, kernel
//! search and pre-injectivity loci.

mod field;
mod kernel;
mod locus;
mod matrix;
mod rule;
mod window;

pub use field::Field;
pub use kernel::{kernel_preinjectivity, KernelSearch, KernelWitness};
pub use locus::{preinjectivity_locus, Locus, TileLocus, TileStatus};
pub use matrix::Matrix;
pub use rule::{LinearAssignment, LinearRule};
pub use window::{mdim_sequence, window_matrix, MdimReport, MdimRow, WindowMatrix};

#[cfg(test)]
mod tests;
