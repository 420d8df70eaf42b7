use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "rational::serde_rat")]
    pub lo: Rational,
    #[serde(with = "rational::serde_rat")]
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    /// Builds an interval from endpoints in either order.
    pub fn hull_of(a: Rational, b: Rational) -> Self {
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn point(v: Rational) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn zero() -> Self {
        Interval::point(Rational::zero())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Strict interior containment.
    pub fn is_interior_of(&self, other: &Interval) -> bool {
        other.lo < self.lo && self.hi < other.hi
    }

    pub fn strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Sign of every point in the interval, if it is uniform and nonzero.
    pub fn sign(&self) -> Option<i8> {
        if self.strictly_positive() {
            Some(1)
        } else if self.strictly_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = rational::max(&self.lo, &other.lo);
        let hi = rational::min(&self.hi, &other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: rational::min(&self.lo, &other.lo),
            hi: rational::max(&self.hi, &other.hi),
        }
    }

    pub fn scale(&self, k: &Rational) -> Interval {
        Interval::hull_of(&self.lo * k, &self.hi * k)
    }

    pub fn abs_max(&self) -> Rational {
        rational::max(&self.lo.abs(), &self.hi.abs())
    }

    /// Tight power: even powers of an interval straddling zero start at 0.
    pub fn pow(&self, e: u32) -> Interval {
        if e == 0 {
            return Interval::point(Rational::one());
        }
        let a = num_traits::pow(self.lo.clone(), e as usize);
        let b = num_traits::pow(self.hi.clone(), e as usize);
        if e % 2 == 1 {
            Interval { lo: a, hi: b }
        } else if self.contains_zero() {
            Interval { lo: Rational::zero(), hi: rational::max(&a, &b) }
        } else {
            Interval::hull_of(a, b)
        }
    }

    /// Splits at the midpoint.
    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.mid();
        (
            Interval { lo: self.lo.clone(), hi: m.clone() },
            Interval { lo: m, hi: self.hi.clone() },
        )
    }

    /// Reciprocal; fails when the interval contains zero.
    pub fn recip(&self) -> Result<Interval> {
        if self.contains_zero() {
            return Err(Error::Domain("reciprocal of interval containing 0".into()));
        }
        Ok(Interval { lo: self.hi.recip(), hi: self.lo.recip() })
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        Interval { lo, hi }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
