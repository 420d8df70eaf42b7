use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::interval::Interval;
use super::rational::{self, Rational};
use super::var::{Var, NVARS};
use crate::error::{Error, Result};

/// Exponent vector. Ordering is graded lexicographic: total degree first,
/// then exponents compared in the global variable order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    deg: u32,
    exps: [u16; NVARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { deg: 0, exps: [0; NVARS] }
    }

    pub fn var(v: Var, e: u16) -> Self {
        let mut m = Monomial::one();
        m.exps[v.index()] = e;
        m.deg = e as u32;
        m
    }

    pub fn from_pairs(pairs: &[(Var, u16)]) -> Self {
        let mut m = Monomial::one();
        for &(v, e) in pairs {
            m.exps[v.index()] += e;
        }
        m.deg = m.exps.iter().map(|&e| e as u32).sum();
        m
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.exps[v.index()]
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(o.exps.iter()) {
            *a += *b;
        }
        Monomial { deg: self.deg + o.deg, exps }
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(o.exps.iter()) {
            if *a < *b {
                return None;
            }
            *a -= *b;
        }
        Some(Monomial { deg: self.deg - o.deg, exps })
    }

    fn with_exp(&self, v: Var, e: u16) -> Monomial {
        let mut m = *self;
        m.deg = m.deg - m.exps[v.index()] as u32 + e as u32;
        m.exps[v.index()] = e;
        m
    }

    /// (variable, exponent) pairs with nonzero exponent, in variable order.
    pub fn factors(&self) -> impl Iterator<Item = (Var, u16)> + '_ {
        Var::ALL
            .iter()
            .copied()
            .filter(move |v| self.exps[v.index()] > 0)
            .map(move |v| (v, self.exps[v.index()]))
    }
}

/// Assignment of rational values to variables.
pub type Point = BTreeMap<Var, Rational>;
/// Assignment of intervals to variables.
pub type IBox = BTreeMap<Var, Interval>;

pub fn point(pairs: &[(Var, Rational)]) -> Point {
    pairs.iter().cloned().collect()
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Canonical: zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        MPoly::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        MPoly::constant(rational::int(n))
    }

    pub fn var(v: Var) -> Self {
        MPoly::term(Rational::one(), Monomial::var(v, 1))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term in the monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.deg).max().unwrap_or(0)
    }

    /// Degree in `v`; the zero polynomial has degree 0.
    pub fn degree(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v) as u32).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL.iter().copied().filter(|&v| self.contains_var(v)).collect()
    }

    pub fn scale(&self, k: &Rational) -> MPoly {
        if k.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect() }
    }

    fn mul_monomial(&self, m: &Monomial, k: &Rational) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(n, c)| (n.mul(m), c * k)).collect() }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, v: Var) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                out.add_term(m.with_exp(v, e - 1), c * rational::int(e as i64));
            }
        }
        out
    }

    /// Coefficients as polynomials in `v`: `result[k]` multiplies `v^k`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MPoly> {
        let d = self.degree(v) as usize;
        let mut out = vec![MPoly::zero(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            out[e].add_term(m.with_exp(v, 0), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                out.add_term(m.with_exp(v, m.exp(v) + k as u16), a.clone());
            }
        }
        out
    }

    pub fn leading_coeff_in(&self, v: Var) -> MPoly {
        self.coeffs_in(v).pop().unwrap_or_default()
    }

    /// Substitutes rational values; unbound variables stay symbolic.
    pub fn specialize(&self, bindings: &Point) -> MPoly {
        let mut out = MPoly::zero();
        let mut cache: HashMap<(Var, u16), Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = *m;
            for (v, e) in m.factors() {
                if let Some(val) = bindings.get(&v) {
                    let p = cache
                        .entry((v, e))
                        .or_insert_with(|| num_traits::pow(val.clone(), e as usize));
                    coef *= &*p;
                    rest = rest.with_exp(v, 0);
                }
            }
            out.add_term(rest, coef);
        }
        out
    }

    /// Replaces `v` by the polynomial `s`.
    pub fn substitute(&self, v: Var, s: &MPoly) -> MPoly {
        let mut map = BTreeMap::new();
        map.insert(v, s.clone());
        self.compose(&map)
    }

    /// Simultaneous substitution of polynomials for variables.
    pub fn compose(&self, subs: &BTreeMap<Var, MPoly>) -> MPoly {
        let mut cache: HashMap<(Var, u16), MPoly> = HashMap::new();
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut acc = MPoly::constant(c.clone());
            for (v, e) in m.factors() {
                if let Some(s) = subs.get(&v) {
                    let p = cache.entry((v, e)).or_insert_with(|| s.pow(e as u32));
                    acc = &acc * &*p;
                    rest = rest.with_exp(v, 0);
                }
            }
            out += &acc.mul_monomial(&rest, &Rational::one());
        }
        out
    }

    /// Exact value at a point binding every variable of `self`.
    pub fn eval(&self, at: &Point) -> Result<Rational> {
        let s = self.specialize(at);
        s.constant_value().ok_or_else(|| {
            let missing: Vec<_> = s.vars().iter().map(|v| v.name()).collect();
            Error::Usage(format!("unbound variables: {}", missing.join(", ")))
        })
    }

    pub fn sign_at(&self, at: &Point) -> Result<i8> {
        Ok(rational::sign_of(&self.eval(at)?))
    }

    /// Interval enclosure of the range over a box, monomial by monomial.
    pub fn interval_eval(&self, bx: &IBox) -> Result<Interval> {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        let mut cache: HashMap<(Var, u16), Interval> = HashMap::new();
        for (m, c) in &self.terms {
            let mut acc = Interval::point(c.clone());
            for (v, e) in m.factors() {
                let iv = bx
                    .get(&v)
                    .ok_or_else(|| Error::Usage(format!("variable {v} not bound in box")))?;
                let p = cache.entry((v, e)).or_insert_with(|| iv.pow(e as u32));
                acc = &acc * &*p;
            }
            lo += acc.lo;
            hi += acc.hi;
        }
        Ok(Interval { lo, hi })
    }

    /// Quotient when `d` divides `self` exactly, `None` otherwise.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (dm, dc) = d.leading_term()?;
        let (dm, dc) = (*dm, dc.clone());
        if let Some(k) = d.constant_value() {
            return Some(self.scale(&k.recip()));
        }
        let mut r = self.clone();
        let mut q = MPoly::zero();
        while let Some((rm, rc)) = r.leading_term() {
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            r -= &d.mul_monomial(&qm, &qc);
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Scales to integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return MPoly::zero();
        }
        let den = self.terms.values().fold(BigInt::one(), |d, c| d.lcm(c.denom()));
        let scaled = self.scale(&Rational::from_integer(den));
        let g = scaled.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c.numer()));
        let k = Rational::new(BigInt::one(), g);
        let mut out = scaled.scale(&k);
        if out.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            out = -out;
        }
        out
    }
}

impl From<Var> for MPoly {
    fn from(v: Var) -> Self {
        MPoly::var(v)
    }
}

impl From<Rational> for MPoly {
    fn from(c: Rational) -> Self {
        MPoly::constant(c)
    }
}

impl From<i64> for MPoly {
    fn from(n: i64) -> Self {
        MPoly::int(n)
    }
}

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, o: &MPoly) {
        for (m, c) in &o.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&MPoly> for MPoly {
    fn sub_assign(&mut self, o: &MPoly) {
        for (m, c) in &o.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, o: MPoly) -> MPoly { (&self).$f(&o) }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, o: &MPoly) -> MPoly { (&self).$f(o) }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $f(self, o: MPoly) -> MPoly { self.$f(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

fn fmt_monomial(m: &Monomial) -> String {
    m.factors()
        .map(|(v, e)| if e == 1 { v.name().to_string() } else { format!("{}^{}", v.name(), e) })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for MPoly {
    /// Terms in descending order as `coef*var^e*...`; parses back exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&fmt_monomial(m))?;
            } else {
                write!(f, "{a}*{}", fmt_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl FromStr for MPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<MPoly> {
        super::parse::parse_poly(s)
    }
}

impl serde::Serialize for MPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for MPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<MPoly, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(p("x+1") * p("x-1"), p("x^2-1"));
    }

    #[test]
    fn derivative_power_rule() {
        let g1 = p("mu1*mu2^2*x^3 - 2*mu1*mu2^2*x^2 + (mu1*mu2^2 + mu1*mu2)*x - mu1*mu2 + 1");
        assert_eq!(
            g1.derivative(Var::X),
            p("3*mu1*mu2^2*x^2 - 4*mu1*mu2^2*x + mu1*mu2^2 + mu1*mu2")
        );
    }

    #[test]
    fn display_round_trips() {
        let q = p("-25672375/32768*x0^4 + x0*y0 - y0 + 7/3");
        assert_eq!(q.to_string(), "-25672375/32768*x0^4 + x0*y0 - y0 + 7/3");
        assert_eq!(p(&q.to_string()), q);
        assert_eq!(MPoly::zero().to_string(), "0");
    }

    #[test]
    fn specialize_leaves_free_vars() {
        let q = p("a*x + b");
        let s = q.specialize(&point(&[(Var::A, int(2))]));
        assert_eq!(s, p("2*x + b"));
    }

    #[test]
    fn exact_division() {
        let a = p("x^2*y - y^3 + a*x - a*y");
        let d = p("x - y");
        assert_eq!(a.div_exact(&d).unwrap(), p("x*y + y^2 + a"));
        assert!(p("x^2 + 1").div_exact(&d).is_none());
    }

    #[test]
    fn compose_substitutes_simultaneously() {
        let q = p("x*y");
        let mut m = BTreeMap::new();
        m.insert(Var::X, p("y"));
        m.insert(Var::Y, p("x + 1"));
        assert_eq!(q.compose(&m), p("x*y + y"));
    }

    #[test]
    fn interval_eval_examples() {
        let mut bx = IBox::new();
        bx.insert(Var::X, Interval::new(int(-1), int(1)).unwrap());
        bx.insert(Var::Y, Interval::new(int(-1), int(1)).unwrap());
        let e = p("x*y").interval_eval(&bx).unwrap();
        assert!(e.lo <= int(-1) && e.hi >= int(1));
        assert_eq!(p("5").interval_eval(&bx).unwrap(), Interval::point(int(5)));
    }

    #[test]
    fn primitive_normalizes() {
        assert_eq!(p("-3/2*x^2 + 3/4").primitive(), p("2*x^2 - 1"));
        assert_eq!(p("x/3").primitive(), p("x"));
    }
}
