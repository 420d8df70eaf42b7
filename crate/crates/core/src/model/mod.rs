//! Constructors for the map, its equilibrium chain, Jury quantities, the
//! Gram characteristic polynomial, its discriminant sequence and the
//! snapback system.

mod classifiers;

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use classifiers::{classifier, classifier_polys, mu1mu2_minus_1};

use crate::error::{Error, Result};
use crate::exact::rational::{self, int, Rational};
use crate::exact::roots::{isolate_real_roots, RootBox1};
use crate::exact::{IBox, Interval, MPoly, Point, Var};
use crate::solve2d::Box2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KopelParams {
    #[serde(with = "rational::serde_rat")]
    pub mu1: Rational,
    #[serde(with = "rational::serde_rat")]
    pub mu2: Rational,
    #[serde(with = "rational::serde_rat")]
    pub rho1: Rational,
    #[serde(with = "rational::serde_rat")]
    pub rho2: Rational,
}

fn check_rho(name: &str, r: &Rational) -> Result<()> {
    if !r.is_positive() || *r > Rational::one() {
        return Err(Error::Usage(format!("{name} must lie in (0, 1], got {r}")));
    }
    Ok(())
}

fn check_mu(name: &str, m: &Rational) -> Result<()> {
    if !m.is_positive() {
        return Err(Error::Usage(format!("{name} must be positive, got {m}")));
    }
    Ok(())
}

impl KopelParams {
    pub fn new(mu1: Rational, mu2: Rational, rho1: Rational, rho2: Rational) -> Result<Self> {
        check_mu("mu1", &mu1)?;
        check_mu("mu2", &mu2)?;
        check_rho("rho1", &rho1)?;
        check_rho("rho2", &rho2)?;
        Ok(KopelParams { mu1, mu2, rho1, rho2 })
    }

    pub fn bindings(&self) -> Point {
        crate::exact::point(&[
            (Var::Mu1, self.mu1.clone()),
            (Var::Mu2, self.mu2.clone()),
            (Var::Rho1, self.rho1.clone()),
            (Var::Rho2, self.rho2.clone()),
        ])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymParams {
    #[serde(with = "rational::serde_rat")]
    pub mu: Rational,
    #[serde(with = "rational::serde_rat")]
    pub rho: Rational,
}

impl SymParams {
    pub fn new(mu: Rational, rho: Rational) -> Result<Self> {
        check_mu("mu", &mu)?;
        check_rho("rho", &rho)?;
        Ok(SymParams { mu, rho })
    }

    pub fn bindings(&self) -> Point {
        crate::exact::point(&[(Var::Mu, self.mu.clone()), (Var::Rho, self.rho.clone())])
    }

    pub fn to_kopel(&self) -> KopelParams {
        KopelParams {
            mu1: self.mu.clone(),
            mu2: self.mu.clone(),
            rho1: self.rho.clone(),
            rho2: self.rho.clone(),
        }
    }
}

/// A polynomial map of the plane in (x, y).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMap2 {
    pub fx: MPoly,
    pub fy: MPoly,
}

impl PolyMap2 {
    /// Image of an exact point; every parameter must already be bound.
    pub fn apply(&self, x: &Rational, y: &Rational) -> Result<(Rational, Rational)> {
        let at = crate::exact::point(&[(Var::X, x.clone()), (Var::Y, y.clone())]);
        Ok((self.fx.eval(&at)?, self.fy.eval(&at)?))
    }

    /// Interval enclosure of the image of a box.
    pub fn apply_box(&self, b: &Box2) -> Result<Box2> {
        let ib: IBox = b.as_ibox(Var::X, Var::Y);
        Ok(Box2::new(self.fx.interval_eval(&ib)?, self.fy.interval_eval(&ib)?))
    }

    pub fn jacobian(&self) -> [[MPoly; 2]; 2] {
        [
            [self.fx.derivative(Var::X), self.fx.derivative(Var::Y)],
            [self.fy.derivative(Var::X), self.fy.derivative(Var::Y)],
        ]
    }

    pub fn jacobian_det(&self) -> MPoly {
        let j = self.jacobian();
        &j[0][0] * &j[1][1] - &j[0][1] * &j[1][0]
    }

    pub fn specialize(&self, at: &Point) -> PolyMap2 {
        PolyMap2 { fx: self.fx.specialize(at), fy: self.fy.specialize(at) }
    }

    /// Substitutes (x, y) := (px, py) into both components.
    pub fn compose_with(&self, px: &MPoly, py: &MPoly) -> (MPoly, MPoly) {
        let mut s = BTreeMap::new();
        s.insert(Var::X, px.clone());
        s.insert(Var::Y, py.clone());
        (self.fx.compose(&s), self.fy.compose(&s))
    }
}

fn kopel_components(mu1: &MPoly, mu2: &MPoly, rho1: &MPoly, rho2: &MPoly) -> PolyMap2 {
    let x = MPoly::var(Var::X);
    let y = MPoly::var(Var::Y);
    let one = MPoly::one();
    let fx = (&one - rho1) * &x + rho1 * mu1 * &y * (&one - &y);
    let fy = (&one - rho2) * &y + rho2 * mu2 * &x * (&one - &x);
    PolyMap2 { fx, fy }
}

/// The map with symbolic mu1, mu2, rho1, rho2.
pub fn generic_map() -> PolyMap2 {
    kopel_components(
        &MPoly::var(Var::Mu1),
        &MPoly::var(Var::Mu2),
        &MPoly::var(Var::Rho1),
        &MPoly::var(Var::Rho2),
    )
}

/// The symmetric map with symbolic mu, rho.
pub fn symmetric_map() -> PolyMap2 {
    let mu = MPoly::var(Var::Mu);
    let rho = MPoly::var(Var::Rho);
    kopel_components(&mu, &mu, &rho, &rho)
}

pub fn build_map(p: &KopelParams) -> PolyMap2 {
    generic_map().specialize(&p.bindings())
}

pub fn build_sym_map(p: &SymParams) -> PolyMap2 {
    symmetric_map().specialize(&p.bindings())
}

/// The triangular equilibrium chain (G2, G1) in (x, y; mu1, mu2).
///
/// The trivial branch [y, x] gives E0 = (0, 0).
pub fn equilibrium_chain() -> (MPoly, MPoly) {
    let g2: MPoly = "y + mu2*x^2 - mu2*x".parse().expect("G2");
    let g1: MPoly = "mu1*mu2^2*x^3 - 2*mu1*mu2^2*x^2 + (mu1*mu2^2 + mu1*mu2)*x - mu1*mu2 + 1"
        .parse()
        .expect("G1");
    (g2, g1)
}

/// Jury-criterion quantities of a planar map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JuryTriple {
    pub cd1: MPoly,
    pub cd2: MPoly,
    pub cd3: MPoly,
    /// Jacobian determinant, kept for the identity cd1 + cd2 = 2(1 + det).
    pub det: MPoly,
}

pub fn jury_quantities(map: &PolyMap2) -> JuryTriple {
    let j = map.jacobian();
    let tr = &j[0][0] + &j[1][1];
    let det = map.jacobian_det();
    let one = MPoly::one();
    JuryTriple {
        cd1: &one - &tr + &det,
        cd2: &one + &tr + &det,
        cd3: &one - &det,
        det,
    }
}

/// det(M^T M - lambda I) for the Jacobian M of `map` (symbolic in x, y
/// unless the caller specializes afterwards).
pub fn gram_char_poly(map: &PolyMap2) -> MPoly {
    let m = map.jacobian();
    let a00 = &m[0][0] * &m[0][0] + &m[1][0] * &m[1][0];
    let a11 = &m[0][1] * &m[0][1] + &m[1][1] * &m[1][1];
    let a01 = &m[0][0] * &m[0][1] + &m[1][0] * &m[1][1];
    let lam = MPoly::var(Var::Lambda);
    (&a00 - &lam) * (&a11 - &lam) - &a01 * &a01
}

/// Gram polynomial of the symmetric map at a point (x, y).
pub fn gram_char_poly_at(map: &PolyMap2, x: &Rational, y: &Rational) -> MPoly {
    gram_char_poly(map).specialize(&crate::exact::point(&[(Var::X, x.clone()), (Var::Y, y.clone())]))
}

/// lambda^n D(1/lambda) with n = deg_lambda D.
pub fn reciprocal(d: &MPoly) -> MPoly {
    let mut c = d.coeffs_in(Var::Lambda);
    c.reverse();
    MPoly::from_coeffs_in(Var::Lambda, &c)
}

/// Exact quotient num / den of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFn {
    pub num: MPoly,
    pub den: MPoly,
}

/// Zero discriminant sequence T_n, ..., T_0 and the ratios delta_k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrSeq {
    /// `t[k]` is T_k.
    pub t: Vec<MPoly>,
    /// `delta[k]` is delta_k = T_k(0) / T_{k-1}(0) for k >= 2; entries 0, 1 unused.
    pub delta: Vec<Option<RatFn>>,
}

impl DiscrSeq {
    pub fn n(&self) -> usize {
        self.t.len() - 1
    }

    pub fn at(&self, k: usize, lam: &Rational) -> MPoly {
        self.t[k].specialize(&crate::exact::point(&[(Var::Lambda, lam.clone())]))
    }
}

fn lambda_at(p: &MPoly, v: i64) -> MPoly {
    p.specialize(&crate::exact::point(&[(Var::Lambda, int(v))]))
}

/// Builds T_n = D + D*, (lambda - 1) T_{n-1} = D - D*, and
/// lambda T_{k-2} = delta_k (lambda + 1) T_{k-1} - T_k.
pub fn discriminant_sequence(d: &MPoly) -> Result<DiscrSeq> {
    let n = d.degree(Var::Lambda) as usize;
    if n == 0 {
        return Err(Error::Domain("sequence needs positive degree in lambda".into()));
    }
    let ds = reciprocal(d);
    let lam = MPoly::var(Var::Lambda);
    let one = MPoly::one();
    let mut t = vec![MPoly::zero(); n + 1];
    let mut delta = vec![None; n + 1];
    t[n] = d + &ds;
    t[n - 1] = (d - &ds)
        .div_exact(&(&lam - &one))
        .ok_or_else(|| Error::Domain("D - D* not divisible by lambda - 1".into()))?;
    let singular = |k: usize, v: &MPoly| -> Result<()> {
        if v.is_zero() {
            return Err(Error::Singular(format!("T_{k}(0) vanishes; the construction is interrupted")));
        }
        Ok(())
    };
    for k in (2..=n).rev() {
        let num = lambda_at(&t[k], 0);
        let den = lambda_at(&t[k - 1], 0);
        singular(k, &num)?;
        singular(k - 1, &den)?;
        let full = &num * &(&lam + &one) * &t[k - 1] - &den * &t[k];
        let over_lam = full
            .div_exact(&lam)
            .ok_or_else(|| Error::Domain("recursion step not divisible by lambda".into()))?;
        t[k - 2] = over_lam.div_exact(&den).ok_or_else(|| {
            Error::Usage("symbolic T_k with non-polynomial quotient; specialize first".into())
        })?;
        delta[k] = Some(RatFn { num, den });
    }
    singular(0, &lambda_at(&t[0], 0))?;
    Ok(DiscrSeq { t, delta })
}

/// C_i = (-1)^i T_i(1) for the Gram polynomial of `map` at symbolic (x, y).
pub fn repelling_polys(map: &PolyMap2) -> Result<Vec<MPoly>> {
    let seq = discriminant_sequence(&gram_char_poly(map))?;
    Ok((0..=seq.n())
        .map(|i| {
            let v = lambda_at(&seq.t[i], 1);
            if i % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect())
}

/// Equalities and inequations for an m-step return to `target`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SnapbackSystem {
    /// F^m(x0, y0) - target, as polynomials in (x0, y0).
    pub equalities: Vec<MPoly>,
    /// (x0 - tx)^2 + (y0 - ty)^2, then det F'(x_k) for k = 1..m.
    pub inequations: Vec<MPoly>,
    /// The orbit x_k = F^k(x0) for k = 0..m, as polynomial pairs.
    pub orbit: Vec<(MPoly, MPoly)>,
}

/// Largest m the CLI will build; systems have degree 2^m per coordinate.
pub const MAX_CLI_M: u32 = 3;

pub fn snapback_system(map: &PolyMap2, m: u32, target: &(Rational, Rational)) -> Result<SnapbackSystem> {
    if m < 2 {
        return Err(Error::Usage("m must be at least 2".into()));
    }
    let (tx, ty) = target;
    let x0 = MPoly::var(Var::X0);
    let y0 = MPoly::var(Var::Y0);
    let mut orbit = vec![(x0.clone(), y0.clone())];
    for _ in 0..m {
        let (px, py) = orbit.last().unwrap();
        orbit.push(map.compose_with(px, py));
    }
    let (fx, fy) = orbit.last().unwrap().clone();
    let equalities = vec![fx - MPoly::constant(tx.clone()), fy - MPoly::constant(ty.clone())];
    let dx = &x0 - &MPoly::constant(tx.clone());
    let dy = &y0 - &MPoly::constant(ty.clone());
    let mut inequations = vec![&dx * &dx + &dy * &dy];
    let det = map.jacobian_det();
    for (px, py) in &orbit[1..] {
        let mut s = BTreeMap::new();
        s.insert(Var::X, px.clone());
        s.insert(Var::Y, py.clone());
        inequations.push(det.compose(&s));
    }
    Ok(SnapbackSystem { equalities, inequations, orbit })
}

/// Equilibrium coordinate: exact, or an isolated root of a quadratic.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coord {
    Exact(#[serde(with = "rational::serde_rat")] Rational),
    Algebraic(RootBox1),
}

impl Coord {
    pub fn interval(&self) -> Interval {
        match self {
            Coord::Exact(r) => Interval::point(r.clone()),
            Coord::Algebraic(b) => b.interval.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymEquilibrium {
    pub label: String,
    pub x: Coord,
    pub y: Coord,
}

impl SymEquilibrium {
    pub fn as_box(&self) -> Box2 {
        Box2::new(self.x.interval(), self.y.interval())
    }
}

/// E0, E1 and, for mu > 3, the off-diagonal pair E2, E3 whose coordinates
/// are the roots of mu^2 z^2 - mu (mu + 1) z + (mu + 1).
pub fn symmetric_equilibria(mu: &Rational) -> Result<Vec<SymEquilibrium>> {
    check_mu("mu", mu)?;
    let zero = Rational::zero();
    let e1 = Rational::one() - mu.recip();
    let mut out = vec![
        SymEquilibrium { label: "E0".into(), x: Coord::Exact(zero.clone()), y: Coord::Exact(zero) },
        SymEquilibrium { label: "E1".into(), x: Coord::Exact(e1.clone()), y: Coord::Exact(e1) },
    ];
    let three = int(3);
    if *mu > three {
        let z = MPoly::var(Var::Z);
        let mu_p = MPoly::constant(mu.clone());
        let q = &mu_p * &mu_p * &z * &z - &mu_p * &(&mu_p + &MPoly::one()) * &z + (&mu_p + &MPoly::one());
        let roots = isolate_real_roots(&q, Var::Z)?;
        if roots.len() == 2 {
            let (lo, hi) = (roots[0].clone(), roots[1].clone());
            out.push(SymEquilibrium {
                label: "E2".into(),
                x: Coord::Algebraic(hi.clone()),
                y: Coord::Algebraic(lo.clone()),
            });
            out.push(SymEquilibrium { label: "E3".into(), x: Coord::Algebraic(lo), y: Coord::Algebraic(hi) });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn map_fixes_e1_and_e0() {
        let m = build_sym_map(&SymParams::new(int(2), int(1)).unwrap());
        assert_eq!(m.apply(&rat(1, 2), &rat(1, 2)).unwrap(), (rat(1, 2), rat(1, 2)));
        assert_eq!(m.apply(&int(0), &int(0)).unwrap(), (int(0), int(0)));
    }

    #[test]
    fn first_trajectory_step() {
        let m = build_sym_map(&SymParams::new(int(59), rat(5, 32)).unwrap());
        let (x, y) = m.apply(&rat(2, 5), &rat(1, 100)).unwrap();
        assert_eq!(x, rat(428765625, 1_000_000_000));
        assert_eq!(y, rat(222093750, 100_000_000));
    }

    #[test]
    fn jury_sum_identity() {
        let j = jury_quantities(&generic_map());
        assert_eq!(&j.cd1 + &j.cd2, (MPoly::one() + j.det.clone()).scale(&int(2)));
    }

    #[test]
    fn cd_at_origin() {
        let j = jury_quantities(&generic_map());
        let e0 = crate::exact::point(&[(Var::X, int(0)), (Var::Y, int(0))]);
        assert_eq!(j.cd1.specialize(&e0), p("rho1*rho2*(1 - mu1*mu2)"));
        assert_eq!(j.cd3.specialize(&e0), p("rho1*rho2*(mu1*mu2 - 1) + rho1 + rho2"));
    }

    #[test]
    fn sequence_for_lambda_squared_minus_4() {
        let s = discriminant_sequence(&p("lambda^2 - 4")).unwrap();
        assert_eq!(s.t[2], p("-3*lambda^2 - 3"));
        assert_eq!(s.t[1], p("5*lambda + 5"));
        assert_eq!(s.t[0], p("-6"));
    }

    #[test]
    fn singular_sequence_is_reported() {
        // D = lambda^2 - 1: D* = 1 - lambda^2, T2 = 0 at lambda = 0
        assert!(matches!(discriminant_sequence(&p("lambda^2 - 1")), Err(Error::Singular(_))));
    }

    #[test]
    fn off_diagonal_equilibria_are_fixed() {
        let mu = int(4);
        let eqs = symmetric_equilibria(&mu).unwrap();
        assert_eq!(eqs.len(), 4);
        let m = build_sym_map(&SymParams::new(mu, rat(1, 2)).unwrap());
        for e in &eqs {
            let b = e.as_box();
            let img = m.apply_box(&b).unwrap();
            assert!(img.intersects(&b), "{}", e.label);
        }
        assert_eq!(symmetric_equilibria(&int(2)).unwrap().len(), 2);
    }
}
