//! Exact Hamming and alignment-minimised distances on finite windows and
//! periodic configurations.
//!
//! Distances are exact rationals throughout; floating point never enters.
//! The Besicovitch distance between two periodic orbit closures reduces to
//! a minimum over relative shifts on the common-period torus, because any
//! joining of two uniform finite-orbit measures decomposes over
//! relative-shift orbits. Two independent implementations of that minimum
//! live here: [`besicovitch_periodic`] brute-forces every shift of the lcm
//! torus, and [`best_alignment_distance`] searches only one residue class
//! per gcd of the periods. Their agreement is part of the test suite.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use thiserror::Error;

use crate::grid::{Boundary, Config, Pattern, ShiftVector};
use crate::tiles::{Mark, Tileset};

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("window mismatch: {0}x{1} vs {2}x{3}")]
    WindowMismatch(usize, usize, usize, usize),
    #[error("alignment search needs periodic configurations")]
    NotPeriodic,
    #[error("periodic distance needs fully exact patterns")]
    NotExact,
    #[error("shift search needs {required} cell comparisons, budget {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("structure detection failed: {0}")]
    StructureMismatch(String),
}

/// An exact normalised mismatch count over one window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HammingResult {
    pub distance: BigRational,
    pub window_cells: u64,
    pub mismatches: u64,
}

/// The event, on the product alphabet, that the paired symbols at the
/// origin differ. Couplings are scored by the mass they give it; for the
/// orbit average of a pair of words that mass is exactly their Hamming
/// distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DisagreementEvent;

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl HammingResult {
    fn new(mismatches: u64, window_cells: u64) -> Self {
        HammingResult { distance: ratio(mismatches, window_cells), window_cells, mismatches }
    }
}

/// Exact Hamming distance between two patterns on the same window. Cells
/// are compared as matchers, so exact patterns compare by symbol.
pub fn hamming_distance(u: &Pattern, v: &Pattern) -> Result<HammingResult, MetricsError> {
    if u.rows() != v.rows() || u.cols() != v.cols() {
        return Err(MetricsError::WindowMismatch(u.rows(), u.cols(), v.rows(), v.cols()));
    }
    let mut mism = 0u64;
    for r in 0..u.rows() {
        for c in 0..u.cols() {
            mism += (u.cell(r, c) != v.cell(r, c)) as u64;
        }
    }
    Ok(HammingResult::new(mism, (u.rows() * u.cols()) as u64))
}

/// Exact Hamming distance between two same-shape configurations.
pub fn config_hamming(a: &Config, b: &Config) -> Result<HammingResult, MetricsError> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(MetricsError::WindowMismatch(a.rows(), a.cols(), b.rows(), b.cols()));
    }
    Ok(HammingResult::new(a.disagreement_count(b) as u64, a.area() as u64))
}

/// Disagreement count between `a` and `b` shifted by `(dr, dc)`, summed
/// over the `lr x lc` common torus.
fn torus_mismatches(a: &Config, b: &Config, lr: usize, lc: usize, dr: i64, dc: i64) -> u64 {
    let mut mism = 0u64;
    for r in 0..lr {
        for c in 0..lc {
            let x = a.get(r as i64, c as i64).unwrap();
            let y = b.get(r as i64 + dr, c as i64 + dc).unwrap();
            mism += (x != y) as u64;
        }
    }
    mism
}

/// Minimum torus disagreement density over the given relative shifts of
/// `b`, with the first shift achieving it. Used by the full search and by
/// the sub-lattice monotonicity tests.
pub fn alignment_distance_over(
    a: &Config,
    b: &Config,
    shifts: &[ShiftVector],
) -> (BigRational, ShiftVector) {
    assert!(!shifts.is_empty());
    let lr = a.rows().lcm(&b.rows());
    let lc = a.cols().lcm(&b.cols());
    let mut best: Option<(u64, ShiftVector)> = None;
    for &(dr, dc) in shifts {
        let mism = torus_mismatches(a, b, lr, lc, dr, dc);
        if best.is_none_or(|(m, _)| mism < m) {
            best = Some((mism, (dr, dc)));
        }
    }
    let (mism, shift) = best.unwrap();
    (ratio(mism, (lr * lc) as u64), shift)
}

/// Exact minimum over all relative alignments of two periodic
/// configurations, with a lexicographically smallest achieving shift.
///
/// Relative shifts act modulo each configuration's own period, and a shift
/// by a period of `a` only translates the summation torus, so one residue
/// per gcd of the periods is enough.
pub fn best_alignment_distance(
    a: &Config,
    b: &Config,
    budget: u64,
) -> Result<(BigRational, ShiftVector), MetricsError> {
    if a.boundary() != Boundary::Periodic || b.boundary() != Boundary::Periodic {
        return Err(MetricsError::NotPeriodic);
    }
    let lr = a.rows().lcm(&b.rows());
    let lc = a.cols().lcm(&b.cols());
    let gr = a.rows().gcd(&b.rows());
    let gc = a.cols().gcd(&b.cols());
    let work = (lr as u128) * (lc as u128) * (gr as u128) * (gc as u128);
    if work > budget as u128 {
        return Err(MetricsError::BudgetExceeded { required: work, budget });
    }
    let shifts: Vec<ShiftVector> = (0..gr as i64)
        .flat_map(|dr| (0..gc as i64).map(move |dc| (dr, dc)))
        .collect();
    Ok(alignment_distance_over(a, b, &shifts))
}

/// Besicovitch distance between the periodic orbit measures of two exact
/// patterns: the deliberately naive oracle, scanning every shift of the
/// full lcm torus.
pub fn besicovitch_periodic(
    w1: &Pattern,
    w2: &Pattern,
    budget: u64,
) -> Result<BigRational, MetricsError> {
    let a = w1.exact_content().ok_or(MetricsError::NotExact)?;
    let b = w2.exact_content().ok_or(MetricsError::NotExact)?;
    let (r1, c1) = (w1.rows(), w1.cols());
    let (r2, c2) = (w2.rows(), w2.cols());
    let lr = r1.lcm(&r2);
    let lc = c1.lcm(&c2);
    let work = (lr as u128) * (lc as u128) * (lr as u128) * (lc as u128);
    if work > budget as u128 {
        return Err(MetricsError::BudgetExceeded { required: work, budget });
    }
    let mut best = u64::MAX;
    for dr in 0..lr {
        for dc in 0..lc {
            let mut mism = 0u64;
            for r in 0..lr {
                for c in 0..lc {
                    let x = a[(r % r1) * c1 + c % c1];
                    let y = b[((r + dr) % r2) * c2 + (c + dc) % c2];
                    mism += (x != y) as u64;
                }
            }
            best = best.min(mism);
        }
    }
    Ok(ratio(best, (lr * lc) as u64))
}

/// Density of cells that are bumpy corners in both configurations and
/// disagree in colour.
///
/// The reference must carry one single bumpy colour and both configurations
/// must place bumpy corners on the same cells. Every lattice-preserving
/// alignment of such a pair reports the same count, so the identity shift
/// is used.
pub fn bumpy_mismatch_density(
    ts: &Tileset,
    flipped: &Config,
    reference: &Config,
) -> Result<HammingResult, MetricsError> {
    if flipped.rows() != reference.rows() || flipped.cols() != reference.cols() {
        return Err(MetricsError::WindowMismatch(
            flipped.rows(),
            flipped.cols(),
            reference.rows(),
            reference.cols(),
        ));
    }
    let mut base: Option<Mark> = None;
    let mut mism = 0u64;
    for r in 0..reference.rows() {
        for c in 0..reference.cols() {
            let rb = ts.is_bumpy(reference.at(r, c));
            let fb = ts.is_bumpy(flipped.at(r, c));
            if rb != fb {
                return Err(MetricsError::StructureMismatch(format!(
                    "bumpy lattices disagree at ({r}, {c})"
                )));
            }
            if !rb {
                continue;
            }
            let colour = ts.tile(reference.at(r, c)).body_mark.unwrap();
            match base {
                None => base = Some(colour),
                Some(m) if m != colour => {
                    return Err(MetricsError::StructureMismatch(
                        "reference bumpy corners are not monochromatic".into(),
                    ))
                }
                _ => {}
            }
            let fc = ts.tile(flipped.at(r, c)).body_mark.unwrap();
            mism += (fc != colour) as u64;
        }
    }
    if base.is_none() {
        return Err(MetricsError::StructureMismatch("no bumpy corners found".into()));
    }
    Ok(HammingResult::new(mism, reference.area() as u64))
}
