//! Radius-to-scale parameter maps and bounded-violation enumerations.
//!
//! The parameter map answers: how large a periodic window is guaranteed to
//! hold, for every shift-invariant measure, a word whose orbit average is
//! within a given radius? The construction tiles a window of side
//! (m+1)2^K with 2^K slices of rank-m blocks whose dyadic multiplicities
//! approximate the measure's rank-m marginal. Three error sources are
//! bounded by explicit constants derived from that picture:
//!
//!   * averaging a rank-m marginal only misplaces windows that straddle a
//!     block boundary, a fraction at most d*n/m per rank-n cylinder, and
//!     the same bound applies once more when the blocks are laid out into
//!     slices, 3*d*n/m in total;
//!   * rounding the marginal to multiples of 2^-K costs at most
//!     |A|^|U_m| / 2^K per cylinder.
//!
//! Requiring each source to stay below radius/(8 |A|^|U_n|) keeps the
//! truncated sum within radius/2, and the rank n(radius) keeps the series
//! tail within radius/2. Any constants with these properties would do;
//! these are chosen to be auditable rather than tight.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::grid::{Boundary, Config, ForbiddenSet, Pattern, Window};
use crate::par;

use super::{
    dplus_truncated, enum_count, pattern_at, rank_for, rank_shape, ratio, BernoulliProduct,
    Measure, MeasureError, MetricSpec, PeriodicMeasure,
};

/// Everything derived from one (radius, alphabet, dimension, forbidden
/// scale) tuple. The window scale psi and the occurrence threshold phi
/// are materialised only while they fit in memory; the defining pair
/// (block_scale, dyadic_bits) is always present.
#[derive(Debug, Clone)]
pub struct CoveringParams {
    pub radius: BigRational,
    pub alphabet_size: u64,
    pub dim: u8,
    pub forbidden_scale: u32,
    /// Truncation rank n(radius).
    pub rank: u32,
    /// Block scale m: marginals are taken on U(m).
    pub block_scale: BigUint,
    /// Multiplicities are rounded to multiples of 2^-dyadic_bits.
    pub dyadic_bits: BigUint,
    /// (block_scale + 1) * 2^dyadic_bits - 1, when storable.
    pub psi: Option<BigUint>,
    /// Occurrence threshold over the psi window, when storable.
    pub phi: Option<BigUint>,
}

fn ceil_log2_u64(a: u64) -> u64 {
    assert!(a >= 1);
    let mut t = 0;
    let mut v: u128 = 1;
    while v < a as u128 {
        v <<= 1;
        t += 1;
    }
    t
}

/// Smallest t >= 0 with den * 2^t >= num.
fn ceil_log2_ratio(num: &BigUint, den: &BigUint) -> u64 {
    let mut t = 0;
    let mut v = den.clone();
    while v < *num {
        v <<= 1;
        t += 1;
    }
    t
}

fn ceil_div(num: &BigUint, den: &BigUint) -> BigUint {
    (num + den - BigUint::one()) / den
}

/// Occurrence threshold of the exclusion argument: any word on a window
/// of `window_cells` cells carrying more than this many forbidden
/// occurrences has orbit average further than `rho` from every measure of
/// the subshift, witnessed by the rank-`k` term of the series alone.
pub fn phi_threshold(
    k: u32,
    alphabet_size: u64,
    dim: u8,
    rho: &BigRational,
    window_cells: &BigUint,
) -> BigUint {
    let box_cells = Window::u(dim, k as u64).len();
    let patterns = BigUint::from(alphabet_size).pow(box_cells as u32);
    let num = (BigUint::one() << k) * patterns * window_cells * rho.numer().to_biguint().unwrap();
    num / rho.denom().to_biguint().unwrap()
}

/// Caps how large a dyadic exponent gets materialised into an actual
/// integer; beyond this, psi and phi stay symbolic.
const MATERIALISE_BITS: u64 = 4_000_000;

pub fn covering_params(
    radius: &BigRational,
    alphabet_size: u64,
    dim: u8,
    forbidden_scale: u32,
) -> CoveringParams {
    assert!(radius > &BigRational::zero());
    assert!(dim == 1 || dim == 2);
    assert!(alphabet_size >= 2);
    let n = rank_for(radius);
    let n_cells = Window::u(dim, n as u64).len();
    let cylinders = BigUint::from(alphabet_size).pow(n_cells as u32);

    // 3 d n / m <= radius / (8 |A|^|U_n|), and m at least n and 1
    let m_num = BigUint::from(24u32 * dim as u32 * n.max(1))
        * &cylinders
        * radius.denom().to_biguint().unwrap();
    let m = ceil_div(&m_num, &radius.numer().to_biguint().unwrap())
        .max(BigUint::from(n.max(1)));

    // |A|^|U_m| / 2^K <= radius / (8 |A|^|U_n|)
    let eight = BigRational::new(8.into(), 1.into());
    let lead = (&eight / radius) * BigRational::from_integer(cylinders.clone().into());
    let lead_bits = ceil_log2_ratio(
        &lead.numer().to_biguint().unwrap(),
        &lead.denom().to_biguint().unwrap(),
    );
    let m_cells = (m.clone() + BigUint::one()).pow(dim as u32);
    let k_dyadic = BigUint::from(lead_bits) + BigUint::from(ceil_log2_u64(alphabet_size)) * &m_cells;

    let (psi, phi) = match k_dyadic.to_u64() {
        Some(bits) if bits <= MATERIALISE_BITS => {
            let psi = ((m.clone() + BigUint::one()) << bits) - BigUint::one();
            let cells = (psi.clone() + BigUint::one()).pow(dim as u32);
            let phi = phi_threshold(forbidden_scale, alphabet_size, dim, radius, &cells);
            (Some(psi), Some(phi))
        }
        _ => (None, None),
    };

    CoveringParams {
        radius: radius.clone(),
        alphabet_size,
        dim,
        forbidden_scale,
        rank: n,
        block_scale: m,
        dyadic_bits: k_dyadic,
        psi,
        phi,
    }
}

impl CoveringParams {
    /// Whether every word on the psi window can be enumerated within the
    /// given budget.
    pub fn enumeration_feasible(&self, budget: u64) -> bool {
        let Some(psi) = &self.psi else { return false };
        let Some(scale) = psi.to_u64() else { return false };
        let cells = Window::u(self.dim, scale).len();
        enum_count(self.alphabet_size, cells, budget).is_ok()
    }
}

fn pattern_as_config(p: &Pattern, boundary: Boundary) -> Config {
    let cells = p.exact_content().expect("enumerated patterns are exact");
    Config::from_rows(boundary, p.rows(), p.cols(), cells).unwrap()
}

/// Forbidden occurrences anchored fully inside the pattern.
pub fn forbidden_count_free(fs: &ForbiddenSet, w: &Pattern) -> u64 {
    fs.violations(&pattern_as_config(w, Boundary::Free)).len() as u64
}

/// Forbidden occurrences in the periodic extension, one anchor per
/// fundamental-domain cell. At least as large as the free count; the
/// excess lives on the wrap interface.
pub fn forbidden_count_wrapped(fs: &ForbiddenSet, w: &Pattern) -> u64 {
    fs.violations(&pattern_as_config(w, Boundary::Periodic)).len() as u64
}

/// All words on the scale-`scale` window carrying at most `phi` forbidden
/// occurrences, in index order.
pub fn enumerate_wf(
    fs: &ForbiddenSet,
    dim: u8,
    scale: u64,
    phi: &BigUint,
    budget: u64,
) -> Result<Vec<Pattern>, MeasureError> {
    let a = fs.alphabet().size() as u64;
    let cells = Window::u(dim, scale).len();
    let total = enum_count(a, cells, budget)?;
    let (rows, cols) = rank_shape(dim, scale as u32);
    Ok(par::filter_map_indices(total as usize, |idx| {
        let w = pattern_at(idx as u64, a, rows, cols);
        (BigUint::from(forbidden_count_free(fs, &w)) <= *phi).then_some(w)
    }))
}

/// Exact truncated distance between the orbit average of a noise word and
/// the Bernoulli product, at the rank derived from `rho`.
pub fn bernoulli_marginal_dist(
    b: &Pattern,
    eps: &BigRational,
    rho: &BigRational,
    r: u64,
    budget: u64,
) -> Result<BigRational, MeasureError> {
    let dim = if b.rows() == 1 { 1 } else { 2 };
    let spec = MetricSpec::new(ratio(r, 1), dim, rank_for(rho));
    let mu = Measure::Periodic(PeriodicMeasure::new(b.clone(), 2)?);
    let nu = Measure::Bernoulli(BernoulliProduct::new(eps.clone())?);
    Ok(dplus_truncated(&mu, &nu, &spec, budget)?.lo)
}

/// Pairs (word, noise word) on the scale-`scale` window such that every
/// forbidden occurrence hidden by an all-zero noise patch is counted at
/// most `phi` times, and the noise word's orbit average passes the
/// truncated marginal test at level `gamma`.
#[allow(clippy::too_many_arguments)]
pub fn enumerate_wf_noisy(
    fs: &ForbiddenSet,
    dim: u8,
    scale: u64,
    phi: &BigUint,
    eps: &BigRational,
    gamma: &BigRational,
    r: u64,
    budget: u64,
) -> Result<Vec<(Pattern, Pattern)>, MeasureError> {
    let a = fs.alphabet().size() as u64;
    let cells = Window::u(dim, scale).len();
    let total = enum_count(2 * a, cells, budget)?;
    let (rows, cols) = rank_shape(dim, scale as u32);

    // marginal test results are shared across all words with the same noise
    let noise_total = enum_count(2, cells, u64::MAX).unwrap();
    let noise_ok: Vec<bool> = (0..noise_total)
        .map(|bidx| {
            let b = pattern_at(bidx, 2, rows, cols);
            bernoulli_marginal_dist(&b, eps, gamma, r, budget).map(|s| s <= *gamma)
        })
        .collect::<Result<_, _>>()?;

    Ok(par::filter_map_indices(total as usize, |idx| {
        // cell value w * 2 + b over the product alphabet
        let joint = pattern_at(idx as u64, 2 * a, rows, cols);
        let mut wc = Vec::with_capacity(rows * cols);
        let mut bc = Vec::with_capacity(rows * cols);
        let mut bidx = 0u64;
        for r0 in 0..rows {
            for c0 in 0..cols {
                let v = match joint.cell(r0, c0) {
                    crate::grid::CellMatcher::Exact(v) => v,
                    _ => unreachable!(),
                };
                wc.push(v / 2);
                bc.push(v % 2);
                bidx |= ((v % 2) as u64) << (r0 * cols + c0);
            }
        }
        if !noise_ok[bidx as usize] {
            return None;
        }
        let w = Pattern::exact(rows, cols, &wc);
        let b = Pattern::exact(rows, cols, &bc);
        let bcfg = pattern_as_config(&b, Boundary::Free);
        let masked = fs
            .violations(&pattern_as_config(&w, Boundary::Free))
            .into_iter()
            .filter(|v| {
                let shape = &fs.patterns()[v.pattern];
                (0..shape.rows()).all(|dr| {
                    (0..shape.cols()).all(|dc| bcfg.at(v.r + dr, v.c + dc) == 0)
                })
            })
            .count() as u64;
        (BigUint::from(masked) <= *phi).then_some((w, b))
    }))
}
