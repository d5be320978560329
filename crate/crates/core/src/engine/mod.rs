//! Non-uniform cellular automata: rule assignments, exact window
//! evaluation, image windows, pre-injectivity witnesses and the open-image
//! probe.

mod cylinder;
mod eval;
mod probe;
mod rule;
mod witness;

pub use cylinder::Cylinder;
pub use eval::{evaluate_window, image_window, WindowPlan};
pub use probe::image_open_probe;
pub use rule::{RuleAssignment, RuleTable, MAX_TABLE_ENTRIES};
pub use witness::{
    affected_outputs, context_cells, preinjectivity_witness, scoped_preinjectivity_witness, Completion,
    PreinjWitness, WitnessScope, WitnessSearch,
};

#[cfg(test)]
mod tests;
