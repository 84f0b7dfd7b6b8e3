//! Couplings of two window marginals and the least mass they must put on
//! origin disagreement.
//!
//! Over the transportation polytope with both window marginals fixed, the
//! minimum of the origin-disagreement mass collapses to the total
//! variation distance of the two single-site marginals,
//!
//!   min lambda(Delta) = 1 - sum_a min(mu([a]), nu([a])).
//!
//! Lower bound: pushing any coupling forward to the pair of origin
//! symbols couples the site marginals, and any coupling of two site
//! distributions puts at least their total variation off the diagonal.
//! Upper bound: couple the origin symbols optimally, then extend each
//! side by its conditional law given its origin symbol; the extension
//! restores both window marginals without adding disagreement mass. The
//! tests exercise the lower direction by brute force over the vertices
//! of the one-cell polytope and the upper one by building the extension
//! and validating its marginals entry by entry.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::grid::{Pattern, Sym};

use super::{enum_count, pattern_at, rank_shape, Measure, MeasureError};

/// How to obtain the minimal origin-disagreement mass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingMethod {
    /// Read the minimum off the single-site marginals.
    SiteClosedForm,
    /// Build the optimal coupling explicitly and measure it.
    Explicit,
}

/// A finitely supported coupling of two window marginals. Entries are
/// keyed by pattern indices in enumeration order and carry exact mass.
#[derive(Debug, Clone)]
pub struct FiniteCoupling {
    rows: usize,
    cols: usize,
    alphabet: u64,
    entries: Vec<(u64, u64, BigRational)>,
}

fn site_marginal(m: &Measure) -> Vec<BigRational> {
    (0..m.alphabet_size()).map(|s| m.cylinder_prob(&Pattern::exact(1, 1, &[s as Sym]))).collect()
}

fn window_probs(
    m: &Measure,
    total: u64,
    rows: usize,
    cols: usize,
) -> Vec<BigRational> {
    let a = m.alphabet_size();
    (0..total).map(|i| m.cylinder_prob(&pattern_at(i, a, rows, cols))).collect()
}

impl FiniteCoupling {
    /// The independent coupling, entrywise product of the marginals.
    pub fn from_product(
        mu: &Measure,
        nu: &Measure,
        dim: u8,
        n: u32,
        budget: u64,
    ) -> Result<Self, MeasureError> {
        let a = check_alphabets(mu, nu)?;
        let (rows, cols) = rank_shape(dim, n);
        let total = enum_count(a, (rows * cols) as u64, budget)?;
        let p = window_probs(mu, total, rows, cols);
        let q = window_probs(nu, total, rows, cols);
        let mut entries = Vec::new();
        for (i, pi) in p.iter().enumerate() {
            if pi.is_zero() {
                continue;
            }
            for (j, qj) in q.iter().enumerate() {
                if !qj.is_zero() {
                    entries.push((i as u64, j as u64, pi * qj));
                }
            }
        }
        Ok(FiniteCoupling { rows, cols, alphabet: a, entries })
    }

    /// The coupling realising the minimum: optimal at the origin,
    /// conditionally independent elsewhere.
    pub fn optimal(
        mu: &Measure,
        nu: &Measure,
        dim: u8,
        n: u32,
        budget: u64,
    ) -> Result<Self, MeasureError> {
        let a = check_alphabets(mu, nu)?;
        let (rows, cols) = rank_shape(dim, n);
        let total = enum_count(a, (rows * cols) as u64, budget)?;
        let p = window_probs(mu, total, rows, cols);
        let q = window_probs(nu, total, rows, cols);
        let ps = site_marginal(mu);
        let qs = site_marginal(nu);

        // window indices grouped by origin symbol, zero-mass ones dropped
        let by_origin = |probs: &[BigRational]| -> Vec<Vec<u64>> {
            let mut groups = vec![Vec::new(); a as usize];
            for (i, x) in probs.iter().enumerate() {
                if !x.is_zero() {
                    groups[i % a as usize].push(i as u64);
                }
            }
            groups
        };
        let gp = by_origin(&p);
        let gq = by_origin(&q);

        let mut entries = Vec::new();
        let spread = |mass: &BigRational,
                      s1: usize,
                      s2: usize,
                      entries: &mut Vec<(u64, u64, BigRational)>| {
            for &i in &gp[s1] {
                for &j in &gq[s2] {
                    let m = mass * (&p[i as usize] / &ps[s1]) * (&q[j as usize] / &qs[s2]);
                    entries.push((i, j, m));
                }
            }
        };

        let mut excess_p = Vec::with_capacity(a as usize);
        let mut excess_q = Vec::with_capacity(a as usize);
        for s in 0..a as usize {
            let keep = ps[s].clone().min(qs[s].clone());
            if !keep.is_zero() {
                spread(&keep, s, s, &mut entries);
            }
            excess_p.push(&ps[s] - &keep);
            excess_q.push(&qs[s] - &keep);
        }

        // the excesses have equal totals and disjoint supports, so a
        // corner walk pairs them off without touching the diagonal
        let (mut s1, mut s2) = (0usize, 0usize);
        while s1 < a as usize && s2 < a as usize {
            if excess_p[s1].is_zero() {
                s1 += 1;
                continue;
            }
            if excess_q[s2].is_zero() {
                s2 += 1;
                continue;
            }
            let g = excess_p[s1].clone().min(excess_q[s2].clone());
            spread(&g, s1, s2, &mut entries);
            excess_p[s1] -= &g;
            excess_q[s2] -= &g;
        }

        Ok(FiniteCoupling { rows, cols, alphabet: a, entries })
    }

    pub fn entries(&self) -> &[(u64, u64, BigRational)] {
        &self.entries
    }

    pub fn total_mass(&self) -> BigRational {
        self.entries.iter().map(|(_, _, m)| m).sum()
    }

    /// Mass on pairs whose patterns disagree at the origin cell.
    pub fn delta_mass(&self) -> BigRational {
        self.entries
            .iter()
            .filter(|(i, j, _)| i % self.alphabet != j % self.alphabet)
            .map(|(_, _, m)| m)
            .sum()
    }

    /// Exact check that this is a probability coupling of the two window
    /// marginals.
    pub fn validate(
        &self,
        mu: &Measure,
        nu: &Measure,
        budget: u64,
    ) -> Result<(), MeasureError> {
        let a = check_alphabets(mu, nu)?;
        if a != self.alphabet {
            return Err(MeasureError::AlphabetMismatch(self.alphabet, a));
        }
        let total = enum_count(a, (self.rows * self.cols) as u64, budget)?;
        let mut rows_sum: HashMap<u64, BigRational> = HashMap::new();
        let mut cols_sum: HashMap<u64, BigRational> = HashMap::new();
        for (i, j, m) in &self.entries {
            if m.is_negative() {
                return Err(MeasureError::Infeasible(format!("negative mass at ({i}, {j})")));
            }
            *rows_sum.entry(*i).or_insert_with(BigRational::zero) += m;
            *cols_sum.entry(*j).or_insert_with(BigRational::zero) += m;
        }
        if self.total_mass() != BigRational::one() {
            return Err(MeasureError::Infeasible("total mass is not 1".into()));
        }
        let zero = BigRational::zero();
        for i in 0..total {
            let w = pattern_at(i, a, self.rows, self.cols);
            if rows_sum.get(&i).unwrap_or(&zero) != &mu.cylinder_prob(&w) {
                return Err(MeasureError::Infeasible(format!("first marginal off at {i}")));
            }
            if cols_sum.get(&i).unwrap_or(&zero) != &nu.cylinder_prob(&w) {
                return Err(MeasureError::Infeasible(format!("second marginal off at {i}")));
            }
        }
        Ok(())
    }
}

fn check_alphabets(mu: &Measure, nu: &Measure) -> Result<u64, MeasureError> {
    let a = mu.alphabet_size();
    if a != nu.alphabet_size() {
        return Err(MeasureError::AlphabetMismatch(a, nu.alphabet_size()));
    }
    Ok(a)
}

/// Minimal origin-disagreement mass over all couplings of the two window
/// marginals. The closed form ignores the window because the minimum
/// does not depend on it; the explicit method demonstrates that on the
/// window it is given.
pub fn coupling_delta_min(
    mu: &Measure,
    nu: &Measure,
    dim: u8,
    n: u32,
    method: CouplingMethod,
    budget: u64,
) -> Result<BigRational, MeasureError> {
    check_alphabets(mu, nu)?;
    match method {
        CouplingMethod::SiteClosedForm => {
            let p = site_marginal(mu);
            let q = site_marginal(nu);
            let kept: BigRational =
                p.into_iter().zip(q).map(|(x, y)| x.min(y)).sum();
            Ok(BigRational::one() - kept)
        }
        CouplingMethod::Explicit => {
            Ok(FiniteCoupling::optimal(mu, nu, dim, n, budget)?.delta_mass())
        }
    }
}

/// Origin-disagreement mass of the orbit average of a pair word: the
/// indicator of disagreement averages to the fraction of cells where the
/// components differ.
pub fn pair_delta_mass(w1: &Pattern, w2: &Pattern) -> Result<BigRational, MeasureError> {
    if w1.rows() != w2.rows() || w1.cols() != w2.cols() {
        return Err(MeasureError::BadParam("pair components differ in shape".into()));
    }
    let c1 = w1
        .exact_content()
        .ok_or_else(|| MeasureError::BadParam("pair components must be exact".into()))?;
    let c2 = w2
        .exact_content()
        .ok_or_else(|| MeasureError::BadParam("pair components must be exact".into()))?;
    let mism = c1.iter().zip(&c2).filter(|(x, y)| x != y).count();
    Ok(BigRational::new(BigInt::from(mism), BigInt::from(c1.len())))
}

/// The same minimisation as an LP in a solver-readable text form, for
/// cross-checking outside this crate. Marginals are scaled by the least
/// common denominator D so every coefficient is an integer; the optimal
/// objective value divided by D is the minimal disagreement mass.
pub fn coupling_lp_text(
    mu: &Measure,
    nu: &Measure,
    dim: u8,
    n: u32,
    budget: u64,
) -> Result<String, MeasureError> {
    let a = check_alphabets(mu, nu)?;
    let (rows, cols) = rank_shape(dim, n);
    let total = enum_count(a, (rows * cols) as u64, budget)?;
    let p = window_probs(mu, total, rows, cols);
    let q = window_probs(nu, total, rows, cols);

    let mut d = BigInt::one();
    for x in p.iter().chain(&q) {
        d = d.lcm(x.denom());
    }
    let scale = |x: &BigRational| (x * BigRational::from_integer(d.clone())).to_integer();

    let mut out = String::new();
    writeln!(out, "\\ minimal origin-disagreement mass over couplings").unwrap();
    writeln!(out, "\\ window {rows}x{cols}, alphabet {a}, scale D = {d}").unwrap();
    writeln!(out, "\\ x_i_j = D * lambda(pattern i, pattern j), patterns in index order").unwrap();
    writeln!(out, "Minimize").unwrap();
    let objective: Vec<String> = (0..total)
        .flat_map(|i| {
            (0..total).filter(move |j| i % a != j % a).map(move |j| format!("x_{i}_{j}"))
        })
        .collect();
    writeln!(out, " obj: {}", objective.join(" + ")).unwrap();
    writeln!(out, "Subject To").unwrap();
    for i in 0..total {
        let terms: Vec<String> = (0..total).map(|j| format!("x_{i}_{j}")).collect();
        writeln!(out, " mu_{i}: {} = {}", terms.join(" + "), scale(&p[i as usize])).unwrap();
    }
    for j in 0..total {
        let terms: Vec<String> = (0..total).map(|i| format!("x_{i}_{j}")).collect();
        writeln!(out, " nu_{j}: {} = {}", terms.join(" + "), scale(&q[j as usize])).unwrap();
    }
    writeln!(out, "End").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{ratio, BernoulliProduct, PeriodicMeasure};
    use crate::metrics::hamming_distance;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn periodic(cells: &[Sym]) -> Measure {
        Measure::Periodic(PeriodicMeasure::new(Pattern::exact(1, cells.len(), cells), 2).unwrap())
    }

    fn bernoulli(num: u64, den: u64) -> Measure {
        Measure::Bernoulli(BernoulliProduct::new(ratio(num, den)).unwrap())
    }

    #[test]
    fn lp_text_matches_frozen_example() {
        let text =
            coupling_lp_text(&periodic(&[0]), &periodic(&[1]), 1, 0, 1 << 10).unwrap();
        let want = "\\ minimal origin-disagreement mass over couplings\n\
                    \\ window 1x1, alphabet 2, scale D = 1\n\
                    \\ x_i_j = D * lambda(pattern i, pattern j), patterns in index order\n\
                    Minimize\n obj: x_0_1 + x_1_0\nSubject To\n\
                    \u{20}mu_0: x_0_0 + x_0_1 = 1\n\
                    \u{20}mu_1: x_1_0 + x_1_1 = 0\n\
                    \u{20}nu_0: x_0_0 + x_1_0 = 0\n\
                    \u{20}nu_1: x_0_1 + x_1_1 = 1\nEnd\n";
        assert_eq!(text, want);
    }

    #[test]
    fn lp_text_scales_marginals_to_integers() {
        let text =
            coupling_lp_text(&periodic(&[0, 1]), &bernoulli(1, 3), 1, 1, 1 << 10).unwrap();
        assert!(text.contains("scale D = 18"));
        assert!(text.contains(" mu_1: x_1_0 + x_1_1 + x_1_2 + x_1_3 = 9"));
        assert!(text.contains(" mu_3: x_3_0 + x_3_1 + x_3_2 + x_3_3 = 0"));
        assert!(text.contains(" nu_0: x_0_0 + x_1_0 + x_2_0 + x_3_0 = 8"));
        assert!(text.contains(" nu_3: x_0_3 + x_1_3 + x_2_3 + x_3_3 = 2"));
    }

    #[test]
    fn closed_form_agrees_with_vertex_search() {
        // one cell, binary alphabet: the polytope is a segment whose
        // endpoints are its vertices, so scanning them is exact
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..25 {
            let mu = bernoulli(rng.gen_range(0..=64), 64);
            let nu = bernoulli(rng.gen_range(0..=64), 64);
            let p0 = &site_marginal(&mu)[0];
            let q0 = &site_marginal(&nu)[0];
            let t_lo = BigRational::zero().max(p0 + q0 - BigRational::one());
            let t_hi = p0.clone().min(q0.clone());
            let delta = |t: &BigRational| p0 + q0 - t - t;
            let best = delta(&t_lo).min(delta(&t_hi));
            let closed =
                coupling_delta_min(&mu, &nu, 1, 0, CouplingMethod::SiteClosedForm, 1 << 10)
                    .unwrap();
            assert_eq!(best, closed);
            assert!(delta(&t_lo) >= closed);
        }
    }

    #[test]
    fn explicit_coupling_validates_and_matches() {
        let mu = periodic(&[0, 0, 1]);
        let nu = bernoulli(1, 4);
        // site marginals (2/3, 1/3) and (3/4, 1/4)
        let want = ratio(1, 12);

        let closed =
            coupling_delta_min(&mu, &nu, 1, 1, CouplingMethod::SiteClosedForm, 1 << 10).unwrap();
        assert_eq!(closed, want);

        let best = FiniteCoupling::optimal(&mu, &nu, 1, 1, 1 << 10).unwrap();
        best.validate(&mu, &nu, 1 << 10).unwrap();
        assert_eq!(best.delta_mass(), want);

        let indep = FiniteCoupling::from_product(&mu, &nu, 1, 1, 1 << 10).unwrap();
        indep.validate(&mu, &nu, 1 << 10).unwrap();
        assert_eq!(indep.delta_mass(), ratio(5, 12));
    }

    #[test]
    fn window_size_does_not_change_the_minimum() {
        let mu = periodic(&[0, 0, 1]);
        let nu = bernoulli(1, 4);
        let want = ratio(1, 12);
        for n in 0..=2 {
            let d = coupling_delta_min(&mu, &nu, 1, n, CouplingMethod::Explicit, 1 << 12)
                .unwrap();
            assert_eq!(d, want);
        }
    }

    #[test]
    fn identical_measures_need_no_disagreement() {
        let mu = periodic(&[0, 1]);
        let best = FiniteCoupling::optimal(&mu, &mu, 1, 1, 1 << 10).unwrap();
        best.validate(&mu, &mu, 1 << 10).unwrap();
        assert!(best.delta_mass().is_zero());
    }

    #[test]
    fn disjoint_site_supports_force_full_mass() {
        let d = coupling_delta_min(
            &periodic(&[0]),
            &periodic(&[1]),
            1,
            0,
            CouplingMethod::Explicit,
            1 << 10,
        )
        .unwrap();
        assert_eq!(d, BigRational::one());
    }

    #[test]
    fn pair_delta_is_the_mismatch_fraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let len = rng.gen_range(1..=8);
            let c1: Vec<Sym> = (0..len).map(|_| rng.gen_range(0..3)).collect();
            let c2: Vec<Sym> = (0..len).map(|_| rng.gen_range(0..3)).collect();
            let w1 = Pattern::exact(1, len, &c1);
            let w2 = Pattern::exact(1, len, &c2);
            let got = pair_delta_mass(&w1, &w2).unwrap();
            assert_eq!(got, hamming_distance(&w1, &w2).unwrap().distance);
        }
        let narrow = Pattern::exact(1, 2, &[0, 1]);
        let wide = Pattern::exact(1, 3, &[0, 1, 0]);
        assert!(pair_delta_mass(&narrow, &wide).is_err());
    }
}
