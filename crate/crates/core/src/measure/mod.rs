//! Shift-invariant measures on full shifts, weighted cylinder distances,
//! and the covering machinery built on them.
//!
//! Two measure families are representable: orbit averages of periodic
//! configurations, and Bernoulli products on the binary alphabet. Both
//! give exact rational cylinder probabilities, so the truncated weighted
//! distance
//!
//! ```text
//! s_n(mu, nu) = sum_{j<=n} 2^-j r^-|U_j| |A|^-|U_j|
//!               sum_{v in A^{U_j}} |mu([v]) - nu([v])|
//! ```
//!
//! is an exact rational, and the full series lies in [s_n, s_n + 2^(1-n)]
//! since every term is at most 2^(1-j). All comparisons against
//! thresholds go through [`DistanceInterval`], which only answers when
//! the interval decides the question.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::grid::{CellMatcher, Pattern, Sym, Window};

mod coupling;
mod covering;
mod witness;

pub use coupling::{
    coupling_delta_min, coupling_lp_text, pair_delta_mass, CouplingMethod, FiniteCoupling,
};
pub use covering::{
    bernoulli_marginal_dist, covering_params, enumerate_wf, enumerate_wf_noisy,
    forbidden_count_free, forbidden_count_wrapped, phi_threshold, CoveringParams,
};
pub use witness::{stability_witness, WitnessBudgets, WitnessVerdict};

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(u64, u64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(u8, u8),
    #[error("enumeration needs {required} items, budget {budget}")]
    BudgetExceeded { required: String, budget: u64 },
    #[error("infeasible coupling: {0}")]
    Infeasible(String),
    #[error("bad parameter: {0}")]
    BadParam(String),
}

pub(crate) fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// 2^(1-n) as an exact rational.
pub(crate) fn tail_bound(rank: u32) -> BigRational {
    BigRational::new(BigInt::from(2), BigInt::one() << rank)
}

fn rat_pow(base: &BigRational, exp: u64) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..exp {
        out *= base;
    }
    out
}

/// The rank n(delta) = 2 + ceil(log2(1/delta)) that pushes the series
/// tail below delta/2, clamped at zero for large delta.
pub fn rank_for(delta: &BigRational) -> u32 {
    assert!(delta > &BigRational::zero());
    // smallest t with 2^t >= 1/delta, possibly negative
    let num = delta.numer().clone();
    let den = delta.denom().clone();
    let mut t: i64 = 0;
    if num < den {
        let mut v = num;
        while v < den {
            v <<= 1;
            t += 1;
        }
    } else {
        while num >= (den.clone() << (-t as u64 + 1)) {
            t -= 1;
        }
    }
    (2 + t).max(0) as u32
}

/// An enclosure of a distance value: the truth lies in [lo, hi].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl DistanceInterval {
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Some(true) when the whole interval is <= t, Some(false) when it is
    /// entirely above, None when t falls inside.
    pub fn certifies_le(&self, t: &BigRational) -> Option<bool> {
        if &self.hi <= t {
            Some(true)
        } else if &self.lo > t {
            Some(false)
        } else {
            None
        }
    }

    /// Strict variant, for the relaxed threshold comparisons.
    pub fn certifies_lt(&self, t: &BigRational) -> Option<bool> {
        if &self.hi < t {
            Some(true)
        } else if &self.lo >= t {
            Some(false)
        } else {
            None
        }
    }
}

/// Index-decoded exact pattern over a plain alphabet, the enumeration
/// order used everywhere in this module.
pub(crate) fn pattern_at(idx: u64, alphabet: u64, rows: usize, cols: usize) -> Pattern {
    let mut cells = vec![0 as Sym; rows * cols];
    let mut rest = idx;
    for cell in cells.iter_mut() {
        *cell = (rest % alphabet) as Sym;
        rest /= alphabet;
    }
    Pattern::exact(rows, cols, &cells)
}

/// Window shape at rank `n`: a row in dimension 1, a square in dimension 2.
pub(crate) fn rank_shape(dim: u8, n: u32) -> (usize, usize) {
    let e = Window::u(dim, n as u64).extent() as usize;
    if dim == 1 {
        (1, e)
    } else {
        (e, e)
    }
}

/// Checks |A|^cells against the budget and returns it as a usable count.
pub(crate) fn enum_count(alphabet: u64, cells: u64, budget: u64) -> Result<u64, MeasureError> {
    let mut total: u64 = 1;
    for _ in 0..cells {
        total = match total.checked_mul(alphabet) {
            Some(t) if t <= budget => t,
            _ => {
                let required = num_bigint::BigUint::from(alphabet).pow(cells as u32);
                return Err(MeasureError::BudgetExceeded {
                    required: required.to_string(),
                    budget,
                });
            }
        };
    }
    Ok(total)
}

/// Orbit average of the periodic extension of a finite exact pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicMeasure {
    base: Pattern,
    cells: Vec<Sym>,
    alphabet_size: u64,
}

impl PeriodicMeasure {
    pub fn new(base: Pattern, alphabet_size: u64) -> Result<Self, MeasureError> {
        let cells = base
            .exact_content()
            .ok_or_else(|| MeasureError::BadParam("periodic base must be exact".into()))?;
        if let Some(&s) = cells.iter().find(|&&s| s as u64 >= alphabet_size) {
            return Err(MeasureError::AlphabetMismatch(s as u64, alphabet_size));
        }
        Ok(PeriodicMeasure { base, cells, alphabet_size })
    }

    pub fn base(&self) -> &Pattern {
        &self.base
    }

    pub fn dim(&self) -> u8 {
        if self.base.rows() == 1 {
            1
        } else {
            2
        }
    }

    /// Fraction of fundamental-domain offsets at which `v` matches the
    /// wrapped periodic extension.
    pub fn cylinder_prob(&self, v: &Pattern) -> BigRational {
        let (br, bc) = (self.base.rows(), self.base.cols());
        let mut count = 0u64;
        for i in 0..br {
            for j in 0..bc {
                let hit = (0..v.rows()).all(|r| {
                    (0..v.cols()).all(|c| {
                        let s = self.cells[((i + r) % br) * bc + (j + c) % bc];
                        match v.cell(r, c) {
                            CellMatcher::Exact(want) => s == want,
                            CellMatcher::Any => true,
                            CellMatcher::Class(_) => {
                                panic!("class matchers have no cylinder probability")
                            }
                        }
                    })
                });
                count += hit as u64;
            }
        }
        ratio(count, (br * bc) as u64)
    }
}

/// Product of independent {0,1} coin flips with success mass `eps`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliProduct {
    eps: BigRational,
}

impl BernoulliProduct {
    pub fn new(eps: BigRational) -> Result<Self, MeasureError> {
        if eps < BigRational::zero() || eps > BigRational::one() {
            return Err(MeasureError::BadParam(format!("rate {eps} outside [0, 1]")));
        }
        Ok(BernoulliProduct { eps })
    }

    pub fn eps(&self) -> &BigRational {
        &self.eps
    }

    pub fn cylinder_prob(&self, v: &Pattern) -> BigRational {
        let mut p = BigRational::one();
        for r in 0..v.rows() {
            for c in 0..v.cols() {
                match v.cell(r, c) {
                    CellMatcher::Exact(1) => p *= &self.eps,
                    CellMatcher::Exact(0) => p *= BigRational::one() - &self.eps,
                    CellMatcher::Exact(_) => return BigRational::zero(),
                    CellMatcher::Any => {}
                    CellMatcher::Class(_) => {
                        panic!("class matchers have no cylinder probability")
                    }
                }
            }
        }
        p
    }
}

/// A measure usable in distance computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Measure {
    Periodic(PeriodicMeasure),
    Bernoulli(BernoulliProduct),
}

impl Measure {
    pub fn cylinder_prob(&self, v: &Pattern) -> BigRational {
        match self {
            Measure::Periodic(m) => m.cylinder_prob(v),
            Measure::Bernoulli(m) => m.cylinder_prob(v),
        }
    }

    pub fn alphabet_size(&self) -> u64 {
        match self {
            Measure::Periodic(m) => m.alphabet_size,
            Measure::Bernoulli(_) => 2,
        }
    }
}

/// Parameters of one truncated distance evaluation.
#[derive(Debug, Clone)]
pub struct MetricSpec {
    pub r: BigRational,
    pub dim: u8,
    pub truncation_rank: u32,
}

impl MetricSpec {
    pub fn new(r: BigRational, dim: u8, truncation_rank: u32) -> Self {
        assert!(r >= BigRational::one(), "normalisation factor below 1");
        assert!(dim == 1 || dim == 2);
        MetricSpec { r, dim, truncation_rank }
    }
}

/// Exact partial sum of the weighted cylinder distance up to the spec's
/// rank, returned with the certified series tail.
pub fn dplus_truncated(
    mu: &Measure,
    nu: &Measure,
    spec: &MetricSpec,
    budget: u64,
) -> Result<DistanceInterval, MeasureError> {
    let a = mu.alphabet_size();
    if a != nu.alphabet_size() {
        return Err(MeasureError::AlphabetMismatch(a, nu.alphabet_size()));
    }
    let top_cells = Window::u(spec.dim, spec.truncation_rank as u64).len();
    enum_count(a, top_cells, budget)?;

    let mut lo = BigRational::zero();
    for j in 0..=spec.truncation_rank {
        let (rows, cols) = rank_shape(spec.dim, j);
        let cells = (rows * cols) as u64;
        let total = enum_count(a, cells, u64::MAX).unwrap();
        let sum: BigRational = crate::par::sum_indices(total as usize, |idx| {
            let v = pattern_at(idx as u64, a, rows, cols);
            (mu.cylinder_prob(&v) - nu.cylinder_prob(&v)).abs()
        });
        let weight = BigRational::new(BigInt::one(), BigInt::one() << j)
            * rat_pow(&(BigRational::one() / &spec.r), cells)
            * BigRational::new(BigInt::one(), BigInt::from(a).pow(cells as u32));
        lo += weight * sum;
    }
    let hi = lo.clone() + tail_bound(spec.truncation_rank);
    Ok(DistanceInterval { lo, hi })
}

/// First-coordinate pushforward of a measure on a product alphabet whose
/// symbols encode pairs as `s1 * a2 + s2`.
pub fn project_first(pm: &PeriodicMeasure, a2: u64) -> PeriodicMeasure {
    assert!(pm.alphabet_size.is_multiple_of(a2));
    let cells: Vec<Sym> = pm.cells.iter().map(|&s| (s as u64 / a2) as Sym).collect();
    let base = Pattern::exact(pm.base.rows(), pm.base.cols(), &cells);
    PeriodicMeasure::new(base, pm.alphabet_size / a2).unwrap()
}

/// Interleaves two same-shape exact patterns into one pattern over the
/// product alphabet, encoding pairs as `s1 * a2 + s2`.
pub fn pair_pattern(w1: &Pattern, w2: &Pattern, a2: u64) -> Result<Pattern, MeasureError> {
    if w1.rows() != w2.rows() || w1.cols() != w2.cols() {
        return Err(MeasureError::BadParam("pair components differ in shape".into()));
    }
    let c1 = w1
        .exact_content()
        .ok_or_else(|| MeasureError::BadParam("pair components must be exact".into()))?;
    let c2 = w2.exact_content().unwrap();
    let cells: Vec<Sym> = c1
        .iter()
        .zip(&c2)
        .map(|(&s1, &s2)| (s1 as u64 * a2 + s2 as u64) as Sym)
        .collect();
    Ok(Pattern::exact(w1.rows(), w1.cols(), &cells))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{count_occurrences, Alphabet, Boundary, Config};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn word(cells: &[Sym]) -> PeriodicMeasure {
        PeriodicMeasure::new(Pattern::exact(1, cells.len(), cells), 2).unwrap()
    }

    #[test]
    fn cylinder_probabilities_match_hand_counts() {
        let m = word(&[1, 1, 0]);
        assert_eq!(m.cylinder_prob(&Pattern::exact(1, 2, &[1, 1])), ratio(1, 3));
        let anything = Pattern::from_matchers(1, 1, vec![CellMatcher::Any]);
        assert!(m.cylinder_prob(&anything).is_one());

        let b = BernoulliProduct::new(ratio(1, 2)).unwrap();
        assert!(b.cylinder_prob(&anything).is_one());
        assert_eq!(b.cylinder_prob(&Pattern::exact(1, 2, &[0, 1])), ratio(1, 4));
        assert_eq!(b.cylinder_prob(&Pattern::exact(1, 2, &[1, 1])), ratio(1, 4));
    }

    #[test]
    fn rank_formula_matches_the_quoted_arithmetic() {
        assert_eq!(rank_for(&ratio(1, 4)), 4);
        assert_eq!(rank_for(&ratio(1, 2)), 3);
        assert_eq!(rank_for(&ratio(1, 3)), 4);
        assert_eq!(rank_for(&BigRational::one()), 2);
        assert_eq!(rank_for(&ratio(2, 1)), 1);
        assert_eq!(rank_for(&ratio(16, 1)), 0);
    }

    #[test]
    fn cylinder_masses_are_normalised() {
        let measures = vec![
            Measure::Periodic(word(&[0, 1, 1])),
            Measure::Periodic(word(&[1])),
            Measure::Bernoulli(BernoulliProduct::new(ratio(1, 3)).unwrap()),
        ];
        for m in &measures {
            for rank in 0..=3u32 {
                let (rows, cols) = rank_shape(1, rank);
                let total = enum_count(2, (rows * cols) as u64, 1 << 20).unwrap();
                let mut mass = BigRational::zero();
                for idx in 0..total {
                    mass += m.cylinder_prob(&pattern_at(idx, 2, rows, cols));
                }
                assert!(mass.is_one(), "rank {rank}");
            }
        }
        // and on square windows
        let sq = PeriodicMeasure::new(Pattern::exact(2, 2, &[0, 1, 1, 0]), 2).unwrap();
        let mut mass = BigRational::zero();
        for idx in 0..16 {
            mass += sq.cylinder_prob(&pattern_at(idx, 2, 2, 2));
        }
        assert!(mass.is_one());
    }

    #[test]
    fn small_cylinders_decompose_over_extensions() {
        let measures = vec![
            Measure::Periodic(word(&[0, 1, 1, 0, 1])),
            Measure::Bernoulli(BernoulliProduct::new(ratio(2, 7)).unwrap()),
        ];
        let small = Pattern::exact(1, 2, &[1, 0]);
        for m in &measures {
            let direct = m.cylinder_prob(&small);
            let mut summed = BigRational::zero();
            for idx in 0..16u64 {
                let big = pattern_at(idx, 2, 1, 4);
                let agrees = (0..2).all(|c| big.cell(0, c) == small.cell(0, c));
                if agrees {
                    summed += m.cylinder_prob(&big);
                }
            }
            assert_eq!(direct, summed);
        }
    }

    #[test]
    fn cylinder_counts_agree_with_the_grid_scanner() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let alph = Alphabet::plain(2);
        for _ in 0..20 {
            let n = rng.gen_range(1..=5);
            let cells: Vec<Sym> = (0..n).map(|_| rng.gen_range(0..2)).collect();
            let m = word(&cells);
            let cfg = Config::from_rows(Boundary::Periodic, 1, n, cells.clone()).unwrap();
            let vn = rng.gen_range(1..=3);
            let vcells: Vec<Sym> = (0..vn).map(|_| rng.gen_range(0..2)).collect();
            let v = Pattern::exact(1, vn, &vcells);
            let scanned = count_occurrences(&cfg, &alph, &v) as u64;
            assert_eq!(m.cylinder_prob(&v), ratio(scanned, n as u64));
        }
    }

    #[test]
    fn constant_words_realise_the_geometric_series() {
        // full series for <0> vs <1> at r=1 is sum 4^-n = 4/3
        let zero = Measure::Periodic(word(&[0]));
        let one = Measure::Periodic(word(&[1]));
        let third = BigRational::new(BigInt::from(4), BigInt::from(3));
        for rank in 1..=8u32 {
            let spec = MetricSpec::new(BigRational::one(), 1, rank);
            let d = dplus_truncated(&zero, &one, &spec, 1 << 20).unwrap();
            // closed form: sum_{n<=rank} 4^-n = (4/3)(1 - 4^-(rank+1))
            let partial = &third
                * (BigRational::one()
                    - BigRational::new(BigInt::one(), BigInt::one() << (2 * rank + 2)));
            assert_eq!(d.lo, partial, "rank {rank}");
            assert!(d.contains(&third), "rank {rank}");
        }
    }

    #[test]
    fn identical_measures_give_the_pure_tail_interval() {
        let m = Measure::Periodic(word(&[0, 1, 1]));
        let spec = MetricSpec::new(BigRational::one(), 1, 4);
        let d = dplus_truncated(&m, &m, &spec, 1 << 20).unwrap();
        assert!(d.lo.is_zero());
        assert_eq!(d.hi, ratio(1, 8));
    }

    #[test]
    fn stronger_normalisation_shrinks_the_sum() {
        let a = Measure::Periodic(word(&[0, 1, 1]));
        let b = Measure::Bernoulli(BernoulliProduct::new(ratio(1, 2)).unwrap());
        for rank in 0..=4u32 {
            let plain = MetricSpec::new(BigRational::one(), 1, rank);
            let heavy = MetricSpec::new(ratio(2, 1), 1, rank);
            let d1 = dplus_truncated(&a, &b, &plain, 1 << 20).unwrap();
            let d2 = dplus_truncated(&a, &b, &heavy, 1 << 20).unwrap();
            assert!(d2.lo <= d1.lo);
        }
    }

    #[test]
    fn projections_contract_the_weighted_distance() {
        // measures on the pair alphabet, projected to the first letter
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..10 {
            let mk = |rng: &mut ChaCha8Rng| {
                let n = rng.gen_range(1..=4);
                let cells: Vec<Sym> = (0..n).map(|_| rng.gen_range(0..4)).collect();
                PeriodicMeasure::new(Pattern::exact(1, n, &cells), 4).unwrap()
            };
            let (l1, l2) = (mk(&mut rng), mk(&mut rng));
            let (p1, p2) = (project_first(&l1, 2), project_first(&l2, 2));
            for rank in 0..=3u32 {
                let joint_spec = MetricSpec::new(BigRational::one(), 1, rank);
                let proj_spec = MetricSpec::new(ratio(2, 1), 1, rank);
                let joint = dplus_truncated(
                    &Measure::Periodic(l1.clone()),
                    &Measure::Periodic(l2.clone()),
                    &joint_spec,
                    1 << 24,
                )
                .unwrap();
                let proj = dplus_truncated(
                    &Measure::Periodic(p1.clone()),
                    &Measure::Periodic(p2.clone()),
                    &proj_spec,
                    1 << 24,
                )
                .unwrap();
                assert!(proj.lo <= joint.lo, "rank {rank}");
            }
        }
    }

    #[test]
    fn enumeration_budgets_are_enforced() {
        let a = Measure::Periodic(word(&[0]));
        let spec = MetricSpec::new(BigRational::one(), 1, 12);
        match dplus_truncated(&a, &a, &spec, 100) {
            Err(MeasureError::BudgetExceeded { required, budget }) => {
                assert_eq!(required, "8192");
                assert_eq!(budget, 100);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn interval_certification_is_three_valued() {
        let d = DistanceInterval { lo: ratio(1, 4), hi: ratio(1, 2) };
        assert_eq!(d.certifies_le(&ratio(1, 2)), Some(true));
        assert_eq!(d.certifies_le(&ratio(1, 5)), Some(false));
        assert_eq!(d.certifies_le(&ratio(1, 3)), None);
        assert_eq!(d.certifies_lt(&ratio(3, 4)), Some(true));
        assert_eq!(d.certifies_lt(&ratio(1, 4)), Some(false));
        assert_eq!(d.certifies_lt(&ratio(1, 2)), None);
    }
}
