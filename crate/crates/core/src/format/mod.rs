//! Text grammars for rule files, linear rule files, SFT files, inline values
//! and tilings. Every parser reports errors with line and column; every
//! writer produces text its parser reads back to the same object.

pub(crate) mod cursor;
mod linear;
mod lines;
mod rules;
mod sft;
mod tiling;
mod values;

pub use linear::{parse_linear, write_linear};
pub use rules::{parse_rules, write_rules};
pub use sft::{parse_sft, write_sft};
pub use tiling::{read_tiling, write_tiling};
pub use values::{
    parse_configuration, parse_cylinder, parse_finite_set, parse_kernel_witness, parse_pattern, parse_preinj_witness,
    parse_rational, parse_window, write_configuration, write_cylinder, write_window,
};
