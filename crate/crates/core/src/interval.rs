//! Outward-rounded floating-point intervals.
//!
//! Rust's float operations round to nearest, so after every arithmetic step
//! we widen the result outward via `next_down`/`next_up`: one ulp per side
//! for the correctly rounded operations (+, -, *, /, sqrt), three for the
//! transcendentals, whose libm implementations are only faithful to within
//! a couple of ulps. That over-approximates true directed rounding but
//! keeps the enclosure property: if x is in `a` and y is in `b` then
//! x op y is in `a op b`. Tight enough for the certification done here
//! (dozens of operations, not millions).

use num_rational::BigRational;
use num_traits::ToPrimitive;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A closed interval `[lo, hi]` with `lo <= hi`, both finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    /// Exact point interval.
    pub fn point(x: f64) -> Self {
        assert!(x.is_finite(), "interval endpoints must be finite");
        Interval { lo: x, hi: x }
    }

    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo.is_finite() && hi.is_finite() && lo <= hi);
        Interval { lo, hi }
    }

    /// Widen by one ulp outward on both sides.
    fn widen(self) -> Self {
        Interval { lo: self.lo.next_down(), hi: self.hi.next_up() }
    }

    /// Extra slack for operations that are faithful but not correctly
    /// rounded.
    fn widen_by(self, steps: u32) -> Self {
        let mut out = self;
        for _ in 0..steps {
            out = out.widen();
        }
        out
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        self.lo + (self.hi - self.lo) / 2.0
    }

    /// Natural log; requires `lo > 0`.
    pub fn ln(self) -> Self {
        assert!(self.lo > 0.0, "ln needs a strictly positive interval");
        Interval { lo: self.lo.ln(), hi: self.hi.ln() }.widen_by(3)
    }

    /// Square root; requires `lo >= 0`.
    pub fn sqrt(self) -> Self {
        assert!(self.lo >= 0.0);
        Interval { lo: self.lo.sqrt(), hi: self.hi.sqrt() }.widen()
    }

    pub fn exp(self) -> Self {
        Interval { lo: self.lo.exp(), hi: self.hi.exp() }.widen_by(3)
    }

    /// `self^e` for a positive base interval and arbitrary real exponent
    /// interval. Monotone in the base; monotone in the exponent once we know
    /// whether the base is above or below 1, so we take the min/max over the
    /// four corner combinations.
    pub fn powi_interval(self, e: Interval) -> Self {
        assert!(self.lo > 0.0, "pow needs a strictly positive base");
        let corners = [
            self.lo.powf(e.lo),
            self.lo.powf(e.hi),
            self.hi.powf(e.lo),
            self.hi.powf(e.hi),
        ];
        let lo = corners.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = corners.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval { lo, hi }.widen_by(3)
    }

    /// Integer power by repeated interval multiplication (exact monotone
    /// handling for positive bases).
    pub fn powu(self, mut n: u32) -> Self {
        let mut acc = Interval::point(1.0);
        let mut base = self;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    /// Enclose an exact rational. `to_f64` rounds to nearest, so one ulp of
    /// widening on each side covers the value.
    pub fn from_rational(x: &BigRational) -> Self {
        let f = x.to_f64().expect("rational out of f64 range");
        assert!(f.is_finite(), "rational out of f64 range");
        Interval { lo: f, hi: f }.widen()
    }

    /// Pointwise max; exact, no widening needed (max of machine floats is
    /// a machine float).
    pub fn max(self, other: Self) -> Self {
        Interval { lo: self.lo.max(other.lo), hi: self.hi.max(other.hi) }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval { lo: self.lo + rhs.lo, hi: self.hi + rhs.hi }.widen()
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval { lo: self.lo - rhs.hi, hi: self.hi - rhs.lo }.widen()
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let c = [self.lo * rhs.lo, self.lo * rhs.hi, self.hi * rhs.lo, self.hi * rhs.hi];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval { lo, hi }.widen()
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, rhs: Interval) -> Interval {
        assert!(
            rhs.lo > 0.0 || rhs.hi < 0.0,
            "division by an interval containing zero"
        );
        let c = [self.lo / rhs.lo, self.lo / rhs.hi, self.hi / rhs.lo, self.hi / rhs.hi];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval { lo, hi }.widen()
    }
}
