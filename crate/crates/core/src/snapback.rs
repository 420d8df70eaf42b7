//! Per-point snapback-repeller certification for the symmetric map.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::exact::{MPoly, Var};
use crate::model::{self, build_sym_map, discriminant_sequence, gram_char_poly, snapback_system, PolyMap2, SymParams};
use crate::solve2d::{
    box_in_disk, box_outside_disk, certify_positive_on_disk, solve_system_2d_all, verify_disk_certificate,
    DiskCertificate, SolutionBox, SolveOptions, Verdict,
};

pub const DEFAULT_MAX_DEPTH: u32 = 40;

pub fn default_radii() -> Vec<Rational> {
    vec![rational::rat(1, 5), rational::rat(1, 8), rational::rat(1, 16), rational::rat(1, 32)]
}

/// Which sign pattern certified the repeller.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pattern {
    /// T2(1) > 0, -T1(1) > 0, T0(1) > 0
    #[serde(rename = "TE0")]
    Te0,
    /// the same with every sign flipped
    #[serde(rename = "TE0-2")]
    Te0Neg,
}

impl Pattern {
    /// +1 for the first pattern, -1 for the flipped one.
    pub fn orientation(self) -> i8 {
        match self {
            Pattern::Te0 => 1,
            Pattern::Te0Neg => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepellerVerdict {
    #[serde(with = "rational::serde_rat_pair")]
    pub fixed_point: (Rational, Rational),
    /// T0(1), T1(1), T2(1); empty when the sequence is singular.
    #[serde(with = "rational::serde_rat_vec")]
    pub t_at_one: Vec<Rational>,
    /// T0(0), T1(0), T2(0); empty when the sequence is singular.
    #[serde(with = "rational::serde_rat_vec")]
    pub t_at_zero: Vec<Rational>,
    /// Signs of T2(1), -T1(1), T0(1).
    pub conditions: Vec<i8>,
    pub normal: bool,
    pub pattern: Option<Pattern>,
    pub singular: bool,
    pub verdict: bool,
}

fn check_fixed(map: &PolyMap2, t: &(Rational, Rational)) -> Result<()> {
    if map.apply(&t.0, &t.1)? != *t {
        return Err(Error::Usage(format!("({}, {}) is not a fixed point of the map", t.0, t.1)));
    }
    Ok(())
}

/// Gram-matrix eigenvalue test at an exact fixed point via the zero
/// discriminant sequence of det(M^T M - lambda I).
pub fn repeller_test(sym: &SymParams, fixed_point: &(Rational, Rational)) -> Result<RepellerVerdict> {
    let map = build_sym_map(sym);
    check_fixed(&map, fixed_point)?;
    let d = model::gram_char_poly_at(&map, &fixed_point.0, &fixed_point.1);
    let mut v = RepellerVerdict {
        fixed_point: fixed_point.clone(),
        t_at_one: vec![],
        t_at_zero: vec![],
        conditions: vec![],
        normal: false,
        pattern: None,
        singular: false,
        verdict: false,
    };
    let seq = match discriminant_sequence(&d) {
        Ok(s) => s,
        Err(Error::Singular(_)) => {
            v.singular = true;
            return Ok(v);
        }
        Err(e) => return Err(e),
    };
    let val = |k: usize, l: i64| seq.at(k, &rational::int(l)).constant_value().unwrap_or_default();
    v.t_at_one = (0..=2).map(|k| val(k, 1)).collect();
    v.t_at_zero = (0..=2).map(|k| val(k, 0)).collect();
    v.normal = v.t_at_zero.iter().all(|t| !t.is_zero());
    v.conditions = vec![
        rational::sign_of(&v.t_at_one[2]),
        -rational::sign_of(&v.t_at_one[1]),
        rational::sign_of(&v.t_at_one[0]),
    ];
    if v.normal {
        if v.conditions.iter().all(|s| *s > 0) {
            v.pattern = Some(Pattern::Te0);
        } else if v.conditions.iter().all(|s| *s < 0) {
            v.pattern = Some(Pattern::Te0Neg);
        }
    }
    v.verdict = v.pattern.is_some();
    Ok(v)
}

/// All real solutions of F^m(x0) = target, target included.
pub fn solve_snapback_system(
    sym: &SymParams,
    m: u32,
    target: &(Rational, Rational),
    opts: &SolveOptions,
) -> Result<Vec<SolutionBox>> {
    let sys = snapback_system(&build_sym_map(sym), m, target)?;
    solve_system_2d_all(&sys.equalities[0], &sys.equalities[1], (Var::X0, Var::Y0), opts)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub solution: SolutionBox,
    /// Signs of det F'(x_k), k = 1..m; None when refinement ran out.
    pub jacobian_signs: Vec<Option<i8>>,
    /// Oriented signs of T2(1), -T1(1), T0(1) at the candidate.
    pub tx0_signs: Vec<Option<i8>>,
    /// Signs of T2(0), T1(0), T0(0) at the candidate.
    pub tx0_normal: Vec<Option<i8>>,
    pub tx0_holds: Option<bool>,
}

impl CandidateRecord {
    pub fn jacobians_nonzero(&self) -> bool {
        self.solution.certified && self.jacobian_signs.iter().all(|s| matches!(s, Some(v) if *v != 0))
    }
}

const MIN_REFINE_LOG2: i64 = -80;

/// Refines the candidate box until every polynomial's enclosure over it
/// has a strict sign, or the width floor is reached.
fn decide_signs(polys: &[MPoly], vars: (Var, Var), sol: &mut SolutionBox) -> Result<Vec<Option<i8>>> {
    let floor = rational::pow2(MIN_REFINE_LOG2);
    loop {
        let ib = sol.bx.as_ibox(vars.0, vars.1);
        let signs = polys
            .iter()
            .map(|p| Ok(p.interval_eval(&ib)?.sign().filter(|s| *s != 0)))
            .collect::<Result<Vec<_>>>()?;
        let w = sol.bx.max_width();
        if signs.iter().all(|s| s.is_some()) || w <= floor || w.is_zero() {
            return Ok(signs);
        }
        let next = sol.refined(&(w / rational::int(2)))?;
        if next.bx == sol.bx {
            return Ok(signs);
        }
        *sol = next;
    }
}

/// The Gram sequence values T_i(1) and T_i(0) as polynomials in (x, y).
fn sequence_polys(sym: &SymParams) -> Result<(Vec<MPoly>, Vec<MPoly>)> {
    let d = gram_char_poly(&build_sym_map(sym));
    let seq = discriminant_sequence(&d)?;
    let at = |l: i64| (0..=2).map(|k| seq.at(k, &rational::int(l))).collect::<Vec<_>>();
    Ok((at(1), at(0)))
}

/// Non-target solutions of the m-step return system with the orbit
/// Jacobian signs and the repeller conditions at each candidate.
pub fn find_snapback_candidates(
    sym: &SymParams,
    m: u32,
    target: &(Rational, Rational),
    opts: &SolveOptions,
) -> Result<Vec<CandidateRecord>> {
    let map = build_sym_map(sym);
    check_fixed(&map, target)?;
    let sys = snapback_system(&map, m, target)?;
    let sols = solve_system_2d_all(&sys.equalities[0], &sys.equalities[1], (Var::X0, Var::Y0), opts)?;
    let (t1, t0) = match sequence_polys(sym) {
        Ok(v) => v,
        Err(Error::Singular(_)) => (vec![], vec![]),
        Err(e) => return Err(e),
    };
    let oriented: Vec<MPoly> = if t1.is_empty() { vec![] } else { vec![t1[2].clone(), -&t1[1], t1[0].clone()] };
    let normal: Vec<MPoly> = t0.iter().rev().cloned().collect();
    let jac = sys.inequations[1..].to_vec();
    sols.into_par_iter()
        .filter(|s| !s.bx.contains(&target.0, &target.1))
        .map(|mut solution| {
            let jacobian_signs = decide_signs(&jac, (Var::X0, Var::Y0), &mut solution)?;
            let tx0_signs = decide_signs(&oriented, (Var::X, Var::Y), &mut solution)?;
            let tx0_normal = decide_signs(&normal, (Var::X, Var::Y), &mut solution)?;
            let tx0_holds = if oriented.is_empty() || tx0_signs.iter().chain(&tx0_normal).any(|s| s.is_none()) {
                None
            } else {
                let first = tx0_signs[0].unwrap();
                Some(tx0_signs.iter().all(|s| *s == Some(first)))
            };
            Ok(CandidateRecord { solution, jacobian_signs, tx0_signs, tx0_normal, tx0_holds })
        })
        .collect()
}

/// C2, C1, C0 oriented by `pattern` and translated so the target is the origin.
pub fn ball_polys(sym: &SymParams, target: &(Rational, Rational), pattern: Pattern) -> Result<Vec<MPoly>> {
    let c = model::repelling_polys(&build_sym_map(sym))?;
    let mut shift = BTreeMap::new();
    shift.insert(Var::X, MPoly::var(Var::X) + MPoly::constant(target.0.clone()));
    shift.insert(Var::Y, MPoly::var(Var::Y) + MPoly::constant(target.1.clone()));
    Ok(c.iter()
        .rev()
        .map(|p| {
            let q = p.compose(&shift);
            if pattern == Pattern::Te0Neg {
                -q
            } else {
                q
            }
        })
        .collect())
}

/// Certifies C2, C1, C0 > 0 on the closed ball of `radius` about the target.
pub fn certify_repelling_ball(
    sym: &SymParams,
    target: &(Rational, Rational),
    radius: &Rational,
    max_depth: u32,
) -> Result<DiskCertificate> {
    certify_positive_on_disk(&ball_polys(sym, target, Pattern::Te0)?, radius, max_depth)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RadiusAttempt {
    #[serde(with = "rational::serde_rat")]
    pub radius: Rational,
    pub disk_verdict: Verdict,
    pub in_ball: Vec<usize>,
    /// Candidates whose boxes cross the circle even at the width floor.
    pub straddling: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SnapbackCertificate {
    pub params: SymParams,
    #[serde(with = "rational::serde_rat_pair")]
    pub target: (Rational, Rational),
    pub m: u32,
    #[serde(with = "rational::serde_opt_rat")]
    pub radius: Option<Rational>,
    pub repeller: RepellerVerdict,
    pub candidates: Vec<CandidateRecord>,
    pub candidates_in_ball: Vec<usize>,
    pub disk: Option<DiskCertificate>,
    pub attempts: Vec<RadiusAttempt>,
    pub verdict: Verdict,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct SnapbackOptions {
    pub radii: Vec<Rational>,
    pub max_depth: u32,
    pub solve: SolveOptions,
}

impl Default for SnapbackOptions {
    fn default() -> Self {
        SnapbackOptions { radii: default_radii(), max_depth: DEFAULT_MAX_DEPTH, solve: SolveOptions::default() }
    }
}

enum Placement {
    Inside,
    Outside,
    Straddles,
}

fn place(c: &mut CandidateRecord, target: &(Rational, Rational), r: &Rational) -> Result<Placement> {
    let floor = rational::pow2(MIN_REFINE_LOG2);
    loop {
        let b = c.solution.bx.shifted(&-target.0.clone(), &-target.1.clone());
        if box_in_disk(&b, r) {
            return Ok(Placement::Inside);
        }
        if box_outside_disk(&b, r) {
            return Ok(Placement::Outside);
        }
        let w = c.solution.bx.max_width();
        let next = c.solution.refined(&(&w / rational::int(2)))?;
        if w <= floor || next.bx == c.solution.bx {
            return Ok(Placement::Straddles);
        }
        c.solution = next;
    }
}

/// Repeller test, candidate search, then the first radius whose ball is
/// certified repelling and holds a candidate with nonsingular orbit.
pub fn certify_snapback(
    sym: &SymParams,
    target: &(Rational, Rational),
    m: u32,
    opts: &SnapbackOptions,
) -> Result<SnapbackCertificate> {
    if opts.radii.is_empty() {
        return Err(Error::Usage("at least one radius is required".into()));
    }
    if opts.radii.iter().any(|r| *r <= Rational::zero()) {
        return Err(Error::Usage("radii must be positive".into()));
    }
    let repeller = repeller_test(sym, target)?;
    let mut cert = SnapbackCertificate {
        params: sym.clone(),
        target: target.clone(),
        m,
        radius: None,
        repeller: repeller.clone(),
        candidates: vec![],
        candidates_in_ball: vec![],
        disk: None,
        attempts: vec![],
        verdict: Verdict::No,
        reason: String::new(),
    };
    if repeller.singular {
        cert.verdict = Verdict::Undecided;
        cert.reason = "repeller test singular: some T_k(0) vanishes".into();
        return Ok(cert);
    }
    let Some(pattern) = repeller.pattern else {
        cert.reason = "target is not a repeller".into();
        return Ok(cert);
    };
    cert.candidates = find_snapback_candidates(sym, m, target, &opts.solve)?;
    if cert.candidates.is_empty() {
        cert.reason = "no point returns to the target".into();
        return Ok(cert);
    }
    let polys = ball_polys(sym, target, pattern)?;
    let mut undecided = false;
    for r in &opts.radii {
        let disk = certify_positive_on_disk(&polys, r, opts.max_depth)?;
        let mut attempt =
            RadiusAttempt { radius: r.clone(), disk_verdict: disk.verdict, in_ball: vec![], straddling: vec![] };
        if disk.verdict == Verdict::Undecided {
            undecided = true;
        }
        if disk.verdict == Verdict::Yes {
            for (i, c) in cert.candidates.iter_mut().enumerate() {
                match place(c, target, r)? {
                    Placement::Inside => attempt.in_ball.push(i),
                    Placement::Straddles => attempt.straddling.push(i),
                    Placement::Outside => {}
                }
            }
            let good: Vec<usize> =
                attempt.in_ball.iter().copied().filter(|&i| cert.candidates[i].jacobians_nonzero()).collect();
            if !attempt.straddling.is_empty() || good.len() < attempt.in_ball.len() {
                undecided = true;
            }
            if !good.is_empty() {
                cert.attempts.push(attempt);
                cert.radius = Some(r.clone());
                cert.candidates_in_ball = good;
                cert.disk = Some(disk);
                cert.verdict = Verdict::Yes;
                cert.reason = "repelling ball certified and holds a nonsingular snapback point".into();
                return Ok(cert);
            }
        }
        cert.attempts.push(attempt);
    }
    if undecided {
        cert.verdict = Verdict::Undecided;
        cert.reason = "some radius left an undecided sub-step".into();
    } else {
        cert.reason = "no tried radius gives a repelling ball containing a candidate".into();
    }
    Ok(cert)
}

/// Re-checks a certificate from its own data plus exact recomputation of
/// the repeller test and the ball polynomials.
pub fn verify_snapback_certificate(cert: &SnapbackCertificate) -> Result<()> {
    let fail = |m: &str| Err(Error::Domain(format!("snapback certificate rejected: {m}")));
    let rep = repeller_test(&cert.params, &cert.target)?;
    if rep != cert.repeller {
        return fail("repeller record does not re-evaluate");
    }
    if cert.verdict != Verdict::Yes {
        if cert.verdict == Verdict::No && rep.pattern.is_some() && cert.candidates.is_empty() {
            let sols = solve_snapback_system(&cert.params, cert.m, &cert.target, &SolveOptions::default())?;
            if sols.iter().any(|s| !s.bx.contains(&cert.target.0, &cert.target.1)) {
                return fail("NO claims no candidates but the system has non-target solutions");
            }
        }
        return Ok(());
    }
    let Some(pattern) = rep.pattern else {
        return fail("YES without a repeller pattern");
    };
    let (Some(r), Some(disk)) = (&cert.radius, &cert.disk) else {
        return fail("YES without radius or disk certificate");
    };
    if disk.verdict != Verdict::Yes || &disk.radius != r {
        return fail("disk certificate is not YES at the stated radius");
    }
    if disk.polys != ball_polys(&cert.params, &cert.target, pattern)? {
        return fail("disk certificate covers the wrong polynomials");
    }
    verify_disk_certificate(disk)?;
    if cert.candidates_in_ball.is_empty() {
        return fail("no candidate in the ball");
    }
    let map = build_sym_map(&cert.params);
    let sys = snapback_system(&map, cert.m, &cert.target)?;
    for &i in &cert.candidates_in_ball {
        let Some(c) = cert.candidates.get(i) else {
            return fail("candidate index out of range");
        };
        let b = &c.solution.bx;
        if !c.solution.certified {
            return fail("in-ball candidate box is not certified");
        }
        if b.contains(&cert.target.0, &cert.target.1) {
            return fail("candidate box contains the target");
        }
        if !box_in_disk(&b.shifted(&-cert.target.0.clone(), &-cert.target.1.clone()), r) {
            return fail("candidate corner outside the ball");
        }
        let ib = b.as_ibox(Var::X0, Var::Y0);
        for q in &sys.inequations[1..] {
            if q.interval_eval(&ib)?.sign().filter(|s| *s != 0).is_none() {
                return fail("orbit Jacobian enclosure contains zero");
            }
        }
        let mut img = b.clone();
        for _ in 0..cert.m {
            img = map.apply_box(&img)?;
        }
        if !img.contains(&cert.target.0, &cert.target.1) {
            return fail("orbit enclosure misses the target");
        }
    }
    Ok(())
}

/// The origin, as an exact fixed point.
pub fn origin() -> (Rational, Rational) {
    (Rational::zero(), Rational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use crate::exact::Interval;
    use crate::solve2d::Box2;

    fn sp(rho: Rational, mu: Rational) -> SymParams {
        SymParams::new(mu, rho).unwrap()
    }

    #[test]
    fn repeller_examples() {
        let v = repeller_test(&sp(rat(5, 32), int(59)), &origin()).unwrap();
        assert!(v.verdict);
        assert_eq!(v.pattern, Some(Pattern::Te0));
        let v = repeller_test(&sp(rat(175, 256), int(2)), &origin()).unwrap();
        assert!(v.verdict);
        let v = repeller_test(&sp(int(1), rat(1, 2)), &origin()).unwrap();
        assert!(!v.verdict);
    }

    #[test]
    fn repeller_requires_fixed_point() {
        assert!(repeller_test(&sp(int(1), int(2)), &(int(1), int(1))).is_err());
    }

    #[test]
    fn ball_polys_at_origin_are_the_c_sequence() {
        let s = sp(rat(5, 32), int(59));
        let b = ball_polys(&s, &origin(), Pattern::Te0).unwrap();
        let c = model::repelling_polys(&build_sym_map(&s)).unwrap();
        assert_eq!(b, vec![c[2].clone(), c[1].clone(), c[0].clone()]);
    }

    #[test]
    fn orbit_of_reference_box_returns() {
        let s = sp(rat(5, 32), int(59));
        let b = Box2::new(
            Interval::new(rat(128075, 1048576), rat(32019, 262144)).unwrap(),
            Interval::new(rat(2001, 16384), rat(1001, 8192)).unwrap(),
        );
        let map = build_sym_map(&s);
        let img = map.apply_box(&map.apply_box(&b).unwrap()).unwrap();
        assert!(img.contains(&int(0), &int(0)));
    }
}
