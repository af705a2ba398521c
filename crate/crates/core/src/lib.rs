//! Decomposition of non-monotone maps between finite posets into nested
//! monotone parts, with the Boolean and many-valued formula syntheses built
//! on it.

pub mod algebra;
pub mod boolean;
pub mod decompose;
pub mod error;
pub mod formula;
pub mod io;
pub mod oracle;
pub mod order;
pub mod selftest;
pub mod theta;

pub use algebra::{ApproximationAlgebra, AxiomSystem, Orientation};
pub use boolean::{inf_formula, synth_inf, TruthTable};
pub use decompose::{decompose, ApproximatingForm, Strategy};
pub use error::Error;
pub use formula::{Formula, Semantics};
pub use order::{Poset, PosetMap};
pub use theta::{decompose_theta, synthesize_mv, MvTable};
