use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::interval::Interval;
use super::mpoly::MPoly;
use super::rational::{self, Rational};
use super::upoly::{count_variations, UPoly};
use super::var::Var;
use crate::error::{Error, Result};

/// Isolating interval for one distinct real root of a univariate polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootBox1 {
    pub poly: MPoly,
    pub var: Var,
    pub interval: Interval,
    pub multiplicity: u32,
    /// Square-free part of `poly`; changes sign across `interval`.
    pub sqf: MPoly,
}

impl RootBox1 {
    pub fn width(&self) -> Rational {
        self.interval.width()
    }

    /// The root itself when the interval has collapsed to a point.
    pub fn exact(&self) -> Option<Rational> {
        (self.interval.lo == self.interval.hi).then(|| self.interval.lo.clone())
    }
}

fn nonzero_univariate(a: &MPoly, v: Var) -> Result<UPoly> {
    if a.is_zero() {
        return Err(Error::Domain("zero polynomial".into()));
    }
    UPoly::from_mpoly(a, v)
}

/// `a / gcd(a, a')` with integer content 1 and positive leading coefficient.
pub fn squarefree_part(a: &MPoly, v: Var) -> Result<MPoly> {
    Ok(nonzero_univariate(a, v)?.squarefree_part().to_mpoly(v))
}

/// Largest power of two not exceeding `r` (r > 0).
fn dyadic_floor(r: &Rational) -> Rational {
    let k = rational::ceil_log2(r);
    let p = rational::pow2(k);
    if &p > r {
        rational::pow2(k - 1)
    } else {
        p
    }
}

/// Isolates the real roots of a square-free `p` inside the open interval
/// (lo, hi), whose endpoints must not be roots.
fn isolate_sqf(p: &UPoly, lo: Rational, hi: Rational) -> Vec<Interval> {
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        match p.descartes_count(&a, &b) {
            0 => {}
            1 => out.push(Interval { lo: a, hi: b }),
            _ => {
                let m = (&a + &b) / rational::int(2);
                if p.sign_at(&m) != 0 {
                    stack.push((a, m.clone()));
                    stack.push((m, b));
                    continue;
                }
                // exact root at the midpoint: wrap it in a tiny isolating box
                let mut d = (&b - &a) / rational::int(4);
                loop {
                    let (l, r) = (&m - &d, &m + &d);
                    if p.sign_at(&l) != 0 && p.sign_at(&r) != 0 && p.descartes_count(&l, &r) == 1 {
                        out.push(Interval { lo: l.clone(), hi: r.clone() });
                        stack.push((a, l));
                        stack.push((r, b));
                        break;
                    }
                    d /= rational::int(2);
                }
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// One `RootBox1` per distinct real root, sorted, with dyadic endpoints and
/// multiplicities from the square-free decomposition.
pub fn isolate_real_roots(a: &MPoly, v: Var) -> Result<Vec<RootBox1>> {
    let u = nonzero_univariate(a, v)?;
    if u.degree() == 0 {
        return Ok(Vec::new());
    }
    let sqf = u.squarefree_part();
    let factors = u.squarefree_decomposition();
    let bound = rational::pow2(rational::ceil_log2(&sqf.cauchy_bound()) + 1);
    let sqf_m = sqf.to_mpoly(v);
    let boxes = isolate_sqf(&sqf, -bound.clone(), bound);
    boxes
        .into_iter()
        .map(|iv| {
            let multiplicity = factors
                .iter()
                .find(|(f, _)| f.sign_at(&iv.lo) * f.sign_at(&iv.hi) < 0)
                .map(|(_, k)| *k)
                .ok_or_else(|| Error::Domain("root not attributed to a square-free factor".into()))?;
            Ok(RootBox1 {
                poly: a.clone(),
                var: v,
                interval: iv,
                multiplicity,
                sqf: sqf_m.clone(),
            })
        })
        .collect()
}

/// Distinct real roots of `a` in the open interval, by Sturm's theorem.
pub fn sturm_count(a: &MPoly, v: Var, iv: &Interval) -> Result<usize> {
    let u = nonzero_univariate(a, v)?;
    for e in [&iv.lo, &iv.hi] {
        if u.sign_at(e) == 0 {
            return Err(Error::RootOnEndpoint(e.to_string()));
        }
    }
    let seq = u.sturm_sequence();
    let var_at = |t: &Rational| count_variations(seq.iter().map(|q| q.sign_at(t)));
    Ok(var_at(&iv.lo).saturating_sub(var_at(&iv.hi)))
}

/// Shrinks the box by exact bisection until its width is at most `target`.
pub fn refine_root(b: &RootBox1, target: &Rational) -> Result<RootBox1> {
    let sqf = UPoly::from_mpoly(&b.sqf, b.var)?;
    let mut iv = b.interval.clone();
    if !target.is_positive() {
        return Err(Error::Domain("target width must be positive".into()));
    }
    let s_lo = sqf.sign_at(&iv.lo);
    while &iv.width() > target {
        let m = iv.mid();
        let s = sqf.sign_at(&m);
        if s == 0 {
            let w = rational::min(&(iv.width() / rational::int(4)), &(target / rational::int(2)));
            let d = dyadic_floor(&w);
            iv = Interval { lo: &m - &d, hi: &m + &d };
            break;
        } else if s == s_lo {
            iv.lo = m;
        } else {
            iv.hi = m;
        }
    }
    Ok(RootBox1 { interval: iv, ..b.clone() })
}

/// Refines until the root's sign is decided, i.e. the box excludes 0.
/// Returns the sign of the root (0 when 0 is the root).
pub fn root_sign(b: &RootBox1) -> Result<(i8, RootBox1)> {
    let sqf = UPoly::from_mpoly(&b.sqf, b.var)?;
    if sqf.sign_at(&Rational::zero()) == 0 && b.interval.contains(&Rational::zero()) {
        return Ok((0, b.clone()));
    }
    let mut cur = b.clone();
    loop {
        if cur.interval.strictly_positive() {
            return Ok((1, cur));
        }
        if cur.interval.strictly_negative() {
            return Ok((-1, cur));
        }
        let w = cur.width() / rational::int(2);
        cur = refine_root(&cur, &w)?;
    }
}

/// Cauchy-type bound as an interval enclosing every real root.
pub fn root_bound_interval(a: &MPoly, v: Var) -> Result<Interval> {
    let u = nonzero_univariate(a, v)?;
    if u.degree() == 0 {
        return Ok(Interval::point(Rational::zero()));
    }
    let b = u.cauchy_bound() + Rational::one();
    Ok(Interval { lo: -b.clone(), hi: b })
}
