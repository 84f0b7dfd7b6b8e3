//! Re-expression of a forbidden set over a larger window.
//!
//! The embedded set forbids exactly the window fillings that contain an
//! original forbidden pattern, so the two sets define the same admissible
//! configurations wherever the window fits. The construction enumerates
//! every filling of the target window and is guarded by an explicit budget.

use num_bigint::BigUint;

use super::config::{Boundary, Config};
use super::forbidden::ForbiddenSet;
use super::pattern::{Pattern, Sym};
use super::window::{Window, WindowKind};
use super::GridError;
use crate::par;

/// Rows and columns of the rectangle a window spans for its dimension.
fn window_shape(w: Window) -> (usize, usize) {
    let e = w.extent() as usize;
    match w.dim {
        1 => (1, e),
        _ => (e, e),
    }
}

/// True when some pattern of `fs` occurs in `cfg`. Deliberately a plain
/// matcher loop, independent of the indexed scanner.
fn contains_forbidden(fs: &ForbiddenSet, cfg: &Config) -> bool {
    fs.patterns().iter().any(|p| {
        if p.rows() > cfg.rows() || p.cols() > cfg.cols() {
            return false;
        }
        (0..=cfg.rows() - p.rows()).any(|r| {
            (0..=cfg.cols() - p.cols())
                .any(|c| p.matches_at(cfg, fs.alphabet(), r as i64, c as i64))
        })
    })
}

/// Rewrite `fs` as an equivalent set of exact patterns filling `window`.
///
/// `window` must be a `U(k)` window of a scale at least [`ForbiddenSet::
/// bounding_k`], in a dimension all patterns fit. The enumeration touches
/// `|A|^|U(k)|` fillings; when that exceeds `budget` the call fails up front
/// rather than running an open-ended scan.
pub fn embed_forbidden_set(
    fs: &ForbiddenSet,
    window: Window,
    budget: u64,
) -> Result<ForbiddenSet, GridError> {
    assert_eq!(window.kind, WindowKind::U, "embedding targets anchored windows");
    if window.dim == 1 && fs.patterns().iter().any(|p| p.rows() > 1) {
        return Err(GridError::WrongDimension { dim: 1 });
    }
    let need = fs.bounding_k();
    if window.n < need {
        return Err(GridError::WindowTooSmall { k: window.n, need });
    }

    let size = fs.alphabet().size() as u64;
    let required = BigUint::from(size).pow(window.len() as u32);
    if required > BigUint::from(budget) {
        return Err(GridError::BudgetExceeded { required: required.to_string(), budget });
    }
    let total: u64 = required.try_into().expect("bounded by budget");

    let (rows, cols) = window_shape(window);
    let patterns = par::filter_map_indices(total as usize, |idx| {
        let mut cells = vec![0 as Sym; rows * cols];
        let mut rest = idx as u64;
        for cell in cells.iter_mut() {
            *cell = (rest % size) as Sym;
            rest /= size;
        }
        let cfg = Config::from_rows(Boundary::Free, rows, cols, cells.clone()).unwrap();
        contains_forbidden(fs, &cfg).then(|| Pattern::exact(rows, cols, &cells))
    });
    Ok(ForbiddenSet::new(fs.alphabet().clone(), patterns))
}
