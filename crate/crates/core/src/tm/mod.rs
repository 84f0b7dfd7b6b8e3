//! Machine-to-tileset compilation.
//!
//! This module turns a Turing machine into a tileset of the hierarchical
//! family whose admissible configurations embed bounded space-time diagrams
//! of the machine inside the square regions, one scale per region size.
//! Whether the machine halts within a scale's horizon then shows up as a
//! purely combinatorial property of the tileset, which is what the
//! stability counterexamples are built from.
//!
//! The pipeline: [`machine`] defines the machines themselves and a bounded
//! simulator, [`toeplitz`] the read-only input encoding, [`layout`] the
//! geometry shared by every variant, and `compile`/`build`/`verify` the
//! tileset side.

pub mod machine;
pub mod samples;
#[cfg(test)]
pub(crate) mod testkit;
pub mod toeplitz;

pub use machine::{
    simulate_tm, trace_tm, Move, RunOutcome, State, TapeSym, TmError, Trace, TraceRow,
    TuringMachine, BLANK,
};
pub use toeplitz::{readonly_tape_view, toeplitz_prefix, ViewSym};
