//! Locally-symmetric-space layer: ingest a σ-twisted conjugacy-class ledger,
//! assemble the twisted trace formula, and run equivariant-index and
//! torsion-vanishing screens.

mod index;
mod ledger;
mod screen;
mod trace;

pub use index::{equivariant_index, IndexReport};
pub use ledger::{
    decompose_ledger, load_ledger, load_with_group, parse_ledger, ClassEntry, ClassLedger,
    DecomposedClass,
};
pub use screen::{torsion_vanishing_screen, VanishingVerdict};
pub use trace::{trace_heat, TailBound, TraceReport};
