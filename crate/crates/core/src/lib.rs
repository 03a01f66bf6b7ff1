//! Weakness of GR(1) formulae measured as a pair of Hausdorff dimensions of
//! their ω-languages, plus an exact implication check for the GR(1)
//! conjunction fragment.
//!
//! The pipeline is explicit-state: a spec is normalized into one initial
//! condition, one invariant and a list of fairness conditions; the invariant
//! becomes a deterministic automaton whose states are labelled by the last
//! symbol read; dimensions are base-`r` logarithms of spectral radii of its
//! strongly connected components.

pub mod automaton;
pub mod dimension;
mod error;
pub mod expr;
pub mod implication;
mod lexer;
pub mod spec;

pub use automaton::{LabeledAutomaton, SccDecomposition};
pub use dimension::{Dimension, Entropy, Settings, WeaknessOrder, WeaknessPair};
pub use error::{Error, Result};
pub use expr::{parse_expr, BoolExpr, Symbol, VarTable};
pub use implication::{DiscriminationStats, InclusionVerdict, Lasso, StrictOrder};
pub use spec::{parse_spec, Gr1Spec, Gr1Unit, Side, SideSelection, UnitKind};
