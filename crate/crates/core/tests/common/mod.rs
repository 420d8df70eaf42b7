//! Oracles shared by the integration suites.

#![allow(dead_code)]

use kopel::exact::rational::{self, int, rat, to_f64, Rational};
use kopel::exact::Interval;
use kopel::model::KopelParams;
use kopel::stability::EquilibriumRecord;
use num_traits::One;

/// Lower and upper rational bounds on sqrt(r), r >= 0.
pub fn sqrt_bounds(r: &Rational) -> (Rational, Rational) {
    let f = to_f64(r).max(0.0).sqrt();
    let mut lo = rational::from_f64(f * (1.0 - 1e-12));
    let mut hi = rational::from_f64(f * (1.0 + 1e-12) + 1e-300);
    while &(&lo * &lo) > r {
        lo = &lo / int(2);
    }
    while &(&hi * &hi) < r {
        hi = &hi * int(2);
    }
    (lo, hi)
}

/// Independent stability oracle: eigenvalue moduli of the interval
/// Jacobian. Some(true) when both are certainly < 1, Some(false) when one
/// certainly exceeds 1, None otherwise.
pub fn eigen_oracle(p: &KopelParams, e: &EquilibriumRecord) -> Option<bool> {
    let one = Interval::point(Rational::one());
    let two = Interval::point(int(2));
    let (a, d) = (Rational::one() - &p.rho1, Rational::one() - &p.rho2);
    let b = (&one - &(&two * &e.y_interval)).scale(&(&p.rho1 * &p.mu1));
    let c = (&one - &(&two * &e.x_interval)).scale(&(&p.rho2 * &p.mu2));
    let tr = &a + &d;
    let det = &Interval::point(&a * &d) - &(&b * &c);
    let disc = &Interval::point(&tr * &tr) - &det.scale(&int(4));
    if disc.strictly_positive() {
        let (sl, _) = sqrt_bounds(&disc.lo);
        let (_, sh) = sqrt_bounds(&disc.hi);
        let half = rat(1, 2);
        let (top_hi, top_lo) = ((&tr + &sh) * &half, (&tr + &sl) * &half);
        let (bot_lo, bot_hi) = ((&tr - &sh) * &half, (&tr - &sl) * &half);
        if top_hi < int(1) && bot_lo > int(-1) {
            return Some(true);
        }
        if top_lo > int(1) || bot_hi < int(-1) {
            return Some(false);
        }
        None
    } else if disc.strictly_negative() {
        // complex pair: |lambda|^2 = det
        if det.hi < int(1) {
            Some(true)
        } else if det.lo > int(1) {
            Some(false)
        } else {
            None
        }
    } else {
        None
    }
}
