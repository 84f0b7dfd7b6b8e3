//! Closed-form stability estimates for almost-periodic grid constructions.
//!
//! A configuration family that is rho-almost p-periodic and reconstructs
//! its grid from radius C admits a Besicovitch bound linear in the flip
//! rate: slope 48(2(C + ceil(p/2)) + 1)^d, offset rho. A hierarchy of
//! such bounds, one per scale k with cost eps*alpha^k + beta^k, balances
//! into a polynomial rate eps^(theta/(1+theta)) where
//! theta = -ln(beta)/ln(alpha). The rate arithmetic runs on
//! outward-rounded intervals so each comparison is certified, and the
//! exact-rational brute-force minimiser acts as the oracle the closed
//! form is checked against.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::interval::Interval;
use crate::measure::ratio;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("parameter outside domain: {0}")]
    Domain(String),
}

/// Structural constants of one almost-periodic construction: period `p`
/// (cells per axis), reconstruction radius `c`, exact grid density `rho`,
/// dimension, and a short textual description of the grid.
#[derive(Debug, Clone)]
pub struct ConstructionProfile {
    pub period: u64,
    pub radius: u64,
    pub density: BigRational,
    pub dim: u32,
    pub grid_note: String,
}

impl ConstructionProfile {
    pub fn new(
        period: u64,
        radius: u64,
        density: BigRational,
        dim: u32,
        grid_note: impl Into<String>,
    ) -> Result<Self, BoundsError> {
        if period == 0 {
            return Err(BoundsError::Domain("period must be at least 1".into()));
        }
        if dim == 0 {
            return Err(BoundsError::Domain("dimension must be at least 1".into()));
        }
        if density.is_negative() || density > BigRational::one() {
            return Err(BoundsError::Domain(format!(
                "density {density} outside [0, 1]"
            )));
        }
        Ok(ConstructionProfile { period, radius, density, dim, grid_note: grid_note.into() })
    }
}

/// The two almost-periodic families with worked constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    /// Dyadic block hierarchy: period doubles per scale, density halves.
    Enhanced,
    /// Simulation-carrying hierarchy: period quadruples per scale.
    P1,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Enhanced => f.write_str("enhanced"),
            Construction::P1 => f.write_str("p1"),
        }
    }
}

impl FromStr for Construction {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, BoundsError> {
        match s {
            "enhanced" => Ok(Construction::Enhanced),
            "p1" => Ok(Construction::P1),
            other => Err(BoundsError::Domain(format!(
                "unknown construction {other:?}, expected \"enhanced\" or \"p1\""
            ))),
        }
    }
}

/// Exact distance bound for a profile at flip rate `eps`:
/// `48 (2(C + ceil(p/2)) + 1)^d eps + rho`.
pub fn besicovitch_bound(profile: &ConstructionProfile, eps: &BigRational) -> BigRational {
    assert!(
        !eps.is_negative() && *eps <= BigRational::one(),
        "flip rate must lie in [0, 1]"
    );
    let reach = BigInt::from(2 * (profile.radius + profile.period.div_ceil(2)) + 1);
    let slope = BigInt::from(48) * reach.pow(profile.dim);
    BigRational::from(slope) * eps + profile.density.clone()
}

/// Number of cells the scale-n simulation grid occupies, by the exact
/// recurrence `r_1 = 25`, `r_k = 12 r_{k-1} + (4^k + 1)^2`.
pub fn p1_grid_cells(n: u32) -> BigInt {
    assert!(n >= 1, "grid scales start at 1");
    let mut r = BigInt::from(25);
    for k in 2..=n {
        let edge = BigInt::from(4).pow(k) + BigInt::one();
        r = BigInt::from(12) * r + edge.clone() * edge;
    }
    r
}

/// Structural constants of the named family at scale `n`.
pub fn construction_constants(which: Construction, n: u32) -> ConstructionProfile {
    assert!(n >= 1, "construction scales start at 1");
    assert!(n <= 30, "period overflows u64 beyond scale 30");
    let profile = match which {
        Construction::Enhanced => {
            let period = 1u64 << (n + 1);
            let radius = (1u64 << n) - 1;
            let side = BigInt::from(radius);
            let cells = BigInt::from(period / 2).pow(2);
            let density = BigRational::new(cells.clone() - side.clone() * side, cells);
            ConstructionProfile::new(
                period,
                radius,
                density,
                2,
                format!("aligned squares of side {radius} at pitch {period}"),
            )
        }
        Construction::P1 => {
            let period = 4u64.pow(n + 1);
            let radius = (1u64 << (2 * n + 1)) - 1;
            let side = BigInt::from(radius);
            let density =
                BigRational::new(side.clone() * side.clone() - p1_grid_cells(n), side.clone() * side);
            ConstructionProfile::new(
                period,
                radius,
                density,
                2,
                format!("simulation squares of side {radius} at pitch {period}"),
            )
        }
    };
    profile.expect("construction constants are valid by induction")
}

/// Certified rate data for the scale-balancing bound
/// `min_k (eps alpha^k + beta^k) <= constant * eps^exponent`,
/// valid whenever `eps <= theta / alpha^(K(1+theta))` for the smallest
/// admissible scale K.
#[derive(Debug, Clone)]
pub struct RateReport {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub theta: Interval,
    pub exponent: Interval,
    pub constant: Interval,
}

impl RateReport {
    /// `constant * eps^exponent` as a certified enclosure.
    pub fn closed_form_bound(&self, eps: &BigRational) -> Interval {
        if eps.is_zero() {
            return Interval::point(0.0);
        }
        let e = Interval::from_rational(eps);
        assert!(e.lo > 0.0, "flip rate too small to certify in f64");
        self.constant * e.powi_interval(self.exponent)
    }

    /// Real-relaxation argmin `x* = ln(theta/eps) / ((1+theta) ln alpha)`;
    /// the integer argmin lies within 1 of it.
    pub fn argmin_estimate(&self, eps: &BigRational) -> Interval {
        let e = Interval::from_rational(eps);
        assert!(e.lo > 0.0, "argmin estimate needs a positive flip rate");
        let one = Interval::point(1.0);
        let ln_alpha = Interval::from_rational(&self.alpha).ln();
        (self.theta.ln() - e.ln()) / ((one + self.theta) * ln_alpha)
    }

    /// Does `eps <= theta / alpha^(K(1+theta))` hold? `None` when the
    /// enclosures are too tight to decide.
    pub fn valid_for(&self, k: i64, eps: &BigRational) -> Option<bool> {
        let one = Interval::point(1.0);
        let ln_alpha = Interval::from_rational(&self.alpha).ln();
        let kf = Interval::point(k as f64);
        let rhs = self.theta * (-(kf * (one + self.theta) * ln_alpha)).exp();
        let lhs = Interval::from_rational(eps);
        if lhs.hi <= rhs.lo {
            Some(true)
        } else if lhs.lo > rhs.hi {
            Some(false)
        } else {
            None
        }
    }
}

/// Rate report for a scale-cost pair, requiring `0 < beta < 1 < alpha`.
pub fn polynomial_rate(
    alpha: &BigRational,
    beta: &BigRational,
) -> Result<RateReport, BoundsError> {
    if *alpha <= BigRational::one() {
        return Err(BoundsError::Domain(format!("alpha {alpha} must exceed 1")));
    }
    if !beta.is_positive() || *beta >= BigRational::one() {
        return Err(BoundsError::Domain(format!("beta {beta} must lie in (0, 1)")));
    }
    let ln_alpha = Interval::from_rational(alpha).ln();
    let neg_ln_beta = -Interval::from_rational(beta).ln();
    if ln_alpha.lo <= 0.0 || neg_ln_beta.lo <= 0.0 {
        return Err(BoundsError::Domain(
            "alpha or beta too close to 1 to certify in f64".into(),
        ));
    }
    let one = Interval::point(1.0);
    let theta = neg_ln_beta / ln_alpha;
    let exponent = theta / (one + theta);
    let inv_theta = one / theta;
    let lead = Interval::from_rational(alpha)
        .sqrt()
        .max((one / Interval::from_rational(beta)).sqrt());
    let spread = theta.powi_interval(one / (one + theta))
        + inv_theta.powi_interval(one / (one + inv_theta));
    Ok(RateReport { alpha: alpha.clone(), beta: beta.clone(), theta, exponent, constant: lead * spread })
}

/// Documented rate parameters per family: alpha is chosen so that
/// alpha^(n/d) tracks the linear pitch of the scale-n block in dimension
/// d = 2 (pitch 2^n for the dyadic family, 4^n for the simulation one)
/// and beta tracks the per-scale density decay (1/2 resp. 3/4).
pub fn construction_rate(which: Construction) -> RateReport {
    let (alpha, beta) = match which {
        Construction::Enhanced => (ratio(4, 1), ratio(1, 2)),
        Construction::P1 => (ratio(16, 1), ratio(3, 4)),
    };
    polynomial_rate(&alpha, &beta).expect("documented parameters are in domain")
}

fn rat_pow_i(x: &BigRational, k: i64) -> BigRational {
    let e = u32::try_from(k.unsigned_abs()).expect("exponent magnitude fits u32");
    let n = x.numer().pow(e);
    let d = x.denom().pow(e);
    if k >= 0 {
        BigRational::new(n, d)
    } else {
        BigRational::new(d, n)
    }
}

/// Exact minimum of `D_k = eps alpha^k + beta^k` over integers
/// `k_lo <= k <= k_hi`, with the smallest minimising k. Oracle for
/// [`RateReport::closed_form_bound`].
pub fn min_dk_bruteforce(
    alpha: &BigRational,
    beta: &BigRational,
    eps: &BigRational,
    k_lo: i64,
    k_hi: i64,
) -> (BigRational, i64) {
    assert!(k_lo <= k_hi, "empty scale range");
    let mut best: Option<(BigRational, i64)> = None;
    for k in k_lo..=k_hi {
        let d = eps * rat_pow_i(alpha, k) + rat_pow_i(beta, k);
        match &best {
            Some((v, _)) if *v <= d => {}
            _ => best = Some((d, k)),
        }
    }
    best.expect("range is nonempty")
}

/// One CSV row per requested (construction, scale, flip rate), columns
/// `construction,n,p,C,rho,eps,bound`.
pub fn bounds_table_csv(rows: &[(Construction, u32)], eps: &[BigRational]) -> String {
    let mut out = String::from("construction,n,p,C,rho,eps,bound\n");
    for (which, n) in rows {
        let profile = construction_constants(*which, *n);
        for e in eps {
            let bound = besicovitch_bound(&profile, e);
            writeln!(
                out,
                "{which},{n},{},{},{},{e},{bound}",
                profile.period, profile.radius, profile.density
            )
            .expect("string writes cannot fail");
        }
    }
    out
}
