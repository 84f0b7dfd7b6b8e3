//! Subshifts of finite type over Z^2, hierarchical aperiodic tilesets, noisy
//! admissibility, and Besicovitch-type distances between shift-invariant
//! measures.
//!
//! The crate is organised around a small number of load-bearing types:
//!
//! * [`grid`] holds finite configurations, patterns with wildcard and
//!   class-matched cells, and forbidden-set admissibility checking.
//! * [`tiles`] generates the hierarchical square-and-cross tilesets (the
//!   vanilla 32-tile alphabet, its red-black colouring, and the enhanced
//!   alphabet with alignment and signalling channels) together with a
//!   recursive macrotile painter and census helpers.
//! * [`noise`] samples Bernoulli noise fields and runs the colour-flip
//!   process that witnesses Besicovitch instability.
//! * [`metrics`] computes exact Besicovitch-type distances on periodic
//!   configurations.
//! * [`measure`] works one level up, on shift-invariant measures: cylinder
//!   weights, the truncated distance between measures, covering bounds, and
//!   the coupling lower bound.
//! * [`bounds`] evaluates the quantitative stability exponents.
//! * [`tm`] compiles Turing machines into local rules layered on the
//!   hierarchical tileset.
//!
//! Scanning-heavy routines are data-parallel via rayon when the `parallel`
//! feature (default) is enabled; disabling it swaps in sequential fallbacks
//! with identical results. See `benches/parallel_vs_sequential.rs`.

pub mod bounds;
pub mod grid;
pub mod interval;
pub mod measure;
pub mod metrics;
pub mod noise;
pub(crate) mod par;
pub mod tiles;
pub mod tm;

pub use grid::{Config, ForbiddenSet, Pattern};
