//! Dense univariate polynomials over the rationals.
//!
//! Internal workhorse for gcds, square-free decomposition, Sturm chains and
//! Descartes counts; the public surface speaks `MPoly`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mpoly::{Monomial, MPoly};
use super::rational::{self, Rational};
use super::var::Var;
use crate::error::{Error, Result};

/// Coefficients low to high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly(pub Vec<Rational>);

impl UPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().map(|x| x.is_zero()).unwrap_or(false) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn one() -> Self {
        UPoly(vec![Rational::one()])
    }

    pub fn x() -> Self {
        UPoly(vec![Rational::zero(), Rational::one()])
    }

    /// Views `p` as univariate in `v`; fails if any other variable occurs.
    pub fn from_mpoly(p: &MPoly, v: Var) -> Result<Self> {
        let mut c = vec![Rational::zero(); p.degree(v) as usize + 1];
        for (m, a) in p.terms() {
            if m.degree() != m.exp(v) as u32 {
                return Err(Error::Usage(format!(
                    "polynomial is not univariate in {v}: {p}"
                )));
            }
            c[m.exp(v) as usize] = a.clone();
        }
        Ok(UPoly::new(c))
    }

    pub fn to_mpoly(&self, v: Var) -> MPoly {
        MPoly::from_terms(
            self.0
                .iter()
                .enumerate()
                .map(|(k, a)| (Monomial::var(v, k as u16), a.clone())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for a in self.0.iter().rev() {
            acc = acc * t + a;
        }
        acc
    }

    pub fn sign_at(&self, t: &Rational) -> i8 {
        rational::sign_of(&self.eval(t))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * rational::int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> UPoly {
        UPoly::new(self.0.iter().map(|a| a * k).collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&self.lc().recip())
    }

    /// Integer coefficients, content 1, positive leading coefficient.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let den = self.0.iter().fold(BigInt::one(), |d, c| d.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        UPoly::new(ints.into_iter().map(|c| Rational::new(c, g.clone())).collect())
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.degree() < d.degree() || self.is_zero() {
            return (UPoly::zero(), self.clone());
        }
        let mut r = self.0.clone();
        let dl = d.lc();
        let dd = d.degree();
        let mut q = vec![Rational::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &dl;
            if !c.is_zero() {
                for (j, b) in d.0.iter().enumerate() {
                    r[k + j] -= &c * b;
                }
            }
            q[k] = c;
        }
        (UPoly::new(q), UPoly::new(r))
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.primitive();
        let mut b = o.primitive();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    pub fn exact_div(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero());
        q
    }

    pub fn squarefree_part(&self) -> UPoly {
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).primitive()
    }

    /// Yun decomposition: pairs (factor, multiplicity), factors primitive,
    /// pairwise coprime and square-free; constant factors omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly, u32)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.exact_div(&a0);
        let c = d.exact_div(&a0);
        let mut dd = &c - &b.derivative();
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&dd);
            let nb = b.exact_div(&a);
            let nc = dd.exact_div(&a);
            dd = &nc - &nb.derivative();
            if a.degree() > 0 {
                out.push((a.primitive(), i));
            }
            b = nb;
            i += 1;
        }
        out
    }

    /// Sturm chain p, p', -rem(...), ...
    pub fn sturm_sequence(&self) -> Vec<UPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            // positive rescaling keeps the sign pattern
            let r = -&r;
            let k = r.lc().abs().recip();
            seq.push(r.scale(&k));
        }
        seq
    }

    /// p(x + s)
    pub fn taylor_shift(&self, s: &Rational) -> UPoly {
        let mut c = self.0.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * s;
                c[j] += t;
            }
        }
        UPoly::new(c)
    }

    /// p(k x)
    pub fn scale_var(&self, k: &Rational) -> UPoly {
        let mut pk = Rational::one();
        let mut c = Vec::with_capacity(self.0.len());
        for a in &self.0 {
            c.push(a * &pk);
            pk *= k;
        }
        UPoly::new(c)
    }

    /// x^n p(1/x)
    pub fn reversed(&self) -> UPoly {
        let mut c = self.0.clone();
        c.reverse();
        UPoly::new(c)
    }

    pub fn sign_variations(&self) -> usize {
        count_variations(self.0.iter().map(rational::sign_of))
    }

    /// Descartes bound on the number of roots in the open interval (a, b).
    pub fn descartes_count(&self, a: &Rational, b: &Rational) -> usize {
        let q = self.taylor_shift(a).scale_var(&(b - a)).reversed().taylor_shift(&Rational::one());
        q.sign_variations()
    }

    /// Cauchy bound: every root has |r| < bound.
    pub fn cauchy_bound(&self) -> Rational {
        let lc = self.lc().abs();
        let m = self.0[..self.degree()]
            .iter()
            .map(|a| a.abs() / &lc)
            .fold(Rational::zero(), |m, v| if v > m { v } else { m });
        m + Rational::one()
    }
}

pub fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let z = Rational::zero();
        UPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        self + &(-o)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn u(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn yun_multiplicities() {
        // (x-1)^2 (x+2)^3
        let a = u(&[-1, 1]);
        let b = u(&[2, 1]);
        let p = &(&a * &a) * &(&(&b * &b) * &b);
        let d = p.squarefree_decomposition();
        assert_eq!(d, vec![(a, 2), (b, 3)]);
    }

    #[test]
    fn taylor_shift_matches_eval() {
        let p = u(&[3, -1, 0, 2]);
        let s = int(5);
        let q = p.taylor_shift(&s);
        for t in -3..4 {
            assert_eq!(q.eval(&int(t)), p.eval(&(int(t) + &s)));
        }
    }

    #[test]
    fn descartes_on_unit_interval() {
        // roots 1/4, 1/2, 3/4 -> 64x^3 - 96x^2 + 44x - 6
        let p = u(&[-6, 44, -96, 64]);
        assert_eq!(p.descartes_count(&int(0), &int(1)), 3);
        assert_eq!(p.descartes_count(&int(1), &int(2)), 0);
    }
}
