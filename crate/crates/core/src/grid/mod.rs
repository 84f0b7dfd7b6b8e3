//! Finite configurations over Z^2, patterns, and forbidden-set admissibility.
//!
//! A [`Config`] is a finite rectangle of symbols with either free or periodic
//! boundary. A [`ForbiddenSet`] is a finite list of [`Pattern`]s; a config is
//! admissible when no pattern occurs. Noisy admissibility exempts
//! occurrences that touch a [`Mask`] of corrupted cells.

mod config;
mod embed;
mod forbidden;
mod pattern;
mod window;

pub use config::{Boundary, Config, Mask};
pub use embed::embed_forbidden_set;
pub use forbidden::{count_occurrences, occurrence_positions, ForbiddenSet, Violation};
pub use pattern::{Alphabet, CellMatcher, ClassId, Pattern, Sym};
pub use window::{Window, WindowKind};

use thiserror::Error;

/// Torus translation vector `(dr, dc)`.
pub type ShiftVector = (i64, i64);

/// Translate a periodic configuration: cell `x` of the result reads `x + v`.
pub fn shift_config(cfg: &Config, v: ShiftVector) -> Config {
    cfg.shifted(v.0, v.1)
}

#[derive(Debug, Error)]
pub enum GridError {
    #[error("bad header: {0}")]
    BadHeader(String),
    #[error("bad cell at row {row}: {msg}")]
    BadCell { row: usize, msg: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("symbol {0} out of range for alphabet of size {1}")]
    SymbolOutOfRange(u32, u32),
    #[error("window scale {k} below the set's bounding scale {need}")]
    WindowTooSmall { k: u64, need: u64 },
    #[error("patterns do not fit a {dim}-dimensional window")]
    WrongDimension { dim: u8 },
    #[error("enumeration budget exceeded: needs {required} evaluations, budget {budget}")]
    BudgetExceeded { required: String, budget: u64 },
}
