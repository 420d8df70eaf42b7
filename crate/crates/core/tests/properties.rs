//! Property tests for the invariants of each module.

mod common;

use kopel::dynamics::{agreeing_digits, iterate_trajectory, Mode};
use kopel::exact::rational::{int, rat, to_f64, Rational};
use kopel::exact::roots::root_bound_interval;
use kopel::exact::{isolate_real_roots, point, resultant, sturm_count, IBox, Interval, MPoly, Var};
use kopel::model::{
    build_map, build_sym_map, discriminant_sequence, gram_char_poly, jury_quantities, reciprocal, snapback_system,
    KopelParams, SymParams,
};
use kopel::model::{classifier, mu1mu2_minus_1};
use kopel::snapback::{self, certify_repelling_ball, find_snapback_candidates};
use kopel::solve2d::{
    box_in_disk, certify_positive_on_disk, solve_system_2d, verify_disk_certificate, Box2, SolveOptions, Verdict,
};
use kopel::stability;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn rational(num: i64, den: i64) -> impl Strategy<Value = Rational> {
    (-num..=num, 1..=den).prop_map(|(n, d)| rat(n, d))
}

fn positive(lo: i64, hi: i64, den: i64) -> impl Strategy<Value = Rational> {
    (lo..=hi, Just(den)).prop_map(|(n, d)| rat(n, d))
}

fn x() -> MPoly {
    MPoly::var(Var::X)
}

fn y() -> MPoly {
    MPoly::var(Var::Y)
}

fn c(r: Rational) -> MPoly {
    MPoly::constant(r)
}

/// Univariate polynomial in x from coefficients, constant term first.
fn upoly(coeffs: &[Rational]) -> MPoly {
    coeffs.iter().enumerate().fold(MPoly::zero(), |acc, (k, a)| acc + c(a.clone()) * x().pow(k as u32))
}

fn upoly_strategy(max_deg: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec(rational(9, 4), 2..=max_deg + 1)
        .prop_map(|v| upoly(&v))
        .prop_filter("positive degree", |p| p.degree(Var::X) > 0)
}

/// Polynomial in x whose coefficients are affine in y.
fn bivariate_strategy(max_deg: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((rational(5, 3), rational(5, 3)), 2..=max_deg + 1)
        .prop_map(|v| {
            v.into_iter()
                .enumerate()
                .fold(MPoly::zero(), |acc, (k, (a, b))| acc + (c(a) + c(b) * y()) * x().pow(k as u32))
        })
        .prop_filter("positive degree", |p| p.degree(Var::X) > 0)
}

fn at_x(v: &Rational) -> kopel::exact::Point {
    point(&[(Var::X, v.clone())])
}

fn parity_sign(n: u32) -> MPoly {
    if n % 2 == 1 {
        -MPoly::one()
    } else {
        MPoly::one()
    }
}

// ------------------------------------------------------------ exact

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_antisymmetry(a in bivariate_strategy(3), b in bivariate_strategy(3)) {
        let (da, db) = (a.degree(Var::X), b.degree(Var::X));
        let ab = resultant(&a, &b, Var::X).unwrap();
        let ba = resultant(&b, &a, Var::X).unwrap();
        prop_assert_eq!(ab, parity_sign(da * db) * ba);
    }

    #[test]
    fn resultant_multiplicative(a in upoly_strategy(3), b in upoly_strategy(3), k in upoly_strategy(2)) {
        let r = |p: &MPoly, q: &MPoly| resultant(p, q, Var::X).unwrap();
        prop_assert_eq!(r(&(&a * &k), &b), r(&a, &b) * r(&k, &b));
    }

    #[test]
    fn resultant_with_linear_factor(a in upoly_strategy(4), t in rational(7, 5)) {
        let lin = x() - c(t.clone());
        let fc = a.eval(&at_x(&t)).unwrap();
        let want = parity_sign(a.degree(Var::X)) * c(fc);
        prop_assert_eq!(resultant(&a, &lin, Var::X).unwrap(), want);
    }

    #[test]
    fn planted_common_factor_vanishes(a in upoly_strategy(2), b in upoly_strategy(2), g in upoly_strategy(2)) {
        prop_assert!(resultant(&(&a * &g), &(&b * &g), Var::X).unwrap().is_zero());
    }

    /// Products of linear factors: the resultant is the product of root
    /// differences, nonzero when the root sets are disjoint.
    #[test]
    fn coprime_products_have_product_formula(
        ra in prop::collection::vec(rational(6, 4), 1..4),
        rb in prop::collection::vec(rational(6, 4), 1..4),
    ) {
        prop_assume!(ra.iter().all(|a| !rb.contains(a)));
        let prod = |rs: &[Rational]| rs.iter().fold(MPoly::one(), |acc, r| acc * (x() - c(r.clone())));
        let res = resultant(&prod(&ra), &prod(&rb), Var::X).unwrap();
        let mut want = Rational::one();
        for a in &ra {
            for b in &rb {
                want *= a - b;
            }
        }
        prop_assert!(!want.is_zero());
        prop_assert_eq!(res, c(want));
    }

    #[test]
    fn isolation_count_matches_sturm(coeffs in prop::collection::vec(-9i64..=9, 2..=9), rep in prop::option::of(rational(4, 3))) {
        let mut p = upoly(&coeffs.iter().map(|&k| int(k)).collect::<Vec<_>>());
        if let Some(r) = rep {
            let l = x() - c(r);
            p = &p * &(&l * &l);
        }
        prop_assume!(p.degree(Var::X) > 0);
        let boxes = isolate_real_roots(&p, Var::X).unwrap();
        let bound = root_bound_interval(&p, Var::X).unwrap();
        prop_assert_eq!(boxes.len(), sturm_count(&p, Var::X, &bound).unwrap());
        // ordered; neighbours may only share a non-root endpoint
        for w in boxes.windows(2) {
            prop_assert!(w[0].interval.hi <= w[1].interval.lo);
            if w[0].interval.hi == w[1].interval.lo {
                prop_assert!(!p.eval(&at_x(&w[0].interval.hi)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn root_boxes_show_sign_change(coeffs in prop::collection::vec(-9i64..=9, 2..=9)) {
        let p = upoly(&coeffs.iter().map(|&k| int(k)).collect::<Vec<_>>());
        prop_assume!(p.degree(Var::X) > 0);
        for b in isolate_real_roots(&p, Var::X).unwrap() {
            match b.exact() {
                Some(r) => prop_assert!(p.eval(&at_x(&r)).unwrap().is_zero()),
                None => {
                    let lo = b.sqf.eval(&at_x(&b.interval.lo)).unwrap();
                    let hi = b.sqf.eval(&at_x(&b.interval.hi)).unwrap();
                    prop_assert!((&lo * &hi).is_negative());
                }
            }
        }
    }

    #[test]
    fn interval_eval_contains_samples(
        coeffs in prop::collection::vec(rational(9, 4), 6),
        x0 in rational(20, 8), y0 in rational(20, 8),
        wx in 0i64..16, wy in 0i64..16,
        seeds in prop::collection::vec((0i64..=64, 0i64..=64), 100),
    ) {
        // low-degree polynomial with a cross term
        let mons = [MPoly::one(), x(), y(), x() * y(), x().pow(2), y().pow(3)];
        let p = coeffs.iter().zip(&mons).fold(MPoly::zero(), |acc, (k, m)| acc + c(k.clone()) * m.clone());
        let ix = Interval::new(x0.clone(), &x0 + rat(wx, 8)).unwrap();
        let iy = Interval::new(y0.clone(), &y0 + rat(wy, 8)).unwrap();
        let mut ib = IBox::new();
        ib.insert(Var::X, ix.clone());
        ib.insert(Var::Y, iy.clone());
        let enc = p.interval_eval(&ib).unwrap();
        for (s, t) in seeds {
            let px = &ix.lo + ix.width() * rat(s, 64);
            let py = &iy.lo + iy.width() * rat(t, 64);
            let v = p.eval(&point(&[(Var::X, px), (Var::Y, py)])).unwrap();
            prop_assert!(enc.contains(&v));
        }
    }

    #[test]
    fn specialize_commutes_with_resultant(a in bivariate_strategy(3), b in bivariate_strategy(3), t in rational(5, 3)) {
        let at = point(&[(Var::Y, t)]);
        let (a0, b0) = (a.specialize(&at), b.specialize(&at));
        // only when neither leading coefficient vanishes
        prop_assume!(a0.degree(Var::X) == a.degree(Var::X) && b0.degree(Var::X) == b.degree(Var::X));
        let lhs = resultant(&a, &b, Var::X).unwrap().specialize(&at);
        prop_assert_eq!(lhs, resultant(&a0, &b0, Var::X).unwrap());
    }
}

// ------------------------------------------------------------ solve2d

/// Newton from a grid of starting points; returns converged roots.
fn newton_roots(p: &MPoly, q: &MPoly, lim: f64) -> Vec<(f64, f64)> {
    let f = |m: &MPoly, a: f64, b: f64| {
        to_f64(&m.eval(&point(&[(Var::X, kopel::exact::rational::from_f64(a)), (Var::Y, kopel::exact::rational::from_f64(b))])).unwrap())
    };
    let (px, py, qx, qy) = (p.derivative(Var::X), p.derivative(Var::Y), q.derivative(Var::X), q.derivative(Var::Y));
    let mut out = vec![];
    let n = 8;
    for i in 0..=n {
        for j in 0..=n {
            let (mut a, mut b) = (-lim + 2.0 * lim * i as f64 / n as f64, -lim + 2.0 * lim * j as f64 / n as f64);
            for _ in 0..40 {
                let (u, v) = (f(p, a, b), f(q, a, b));
                let (j11, j12, j21, j22) = (f(&px, a, b), f(&py, a, b), f(&qx, a, b), f(&qy, a, b));
                let det = j11 * j22 - j12 * j21;
                if det.abs() < 1e-12 || !a.is_finite() || !b.is_finite() || a.abs() > 1e3 || b.abs() > 1e3 {
                    break;
                }
                a -= (j22 * u - j12 * v) / det;
                b -= (j11 * v - j21 * u) / det;
            }
            if a.is_finite() && b.is_finite() && a.abs() < lim && b.abs() < lim {
                let (u, v) = (f(p, a, b), f(q, a, b));
                if u.abs() < 1e-10 && v.abs() < 1e-10 {
                    out.push((a, b));
                }
            }
        }
    }
    out
}

fn lin_strategy() -> impl Strategy<Value = MPoly> {
    (rational(4, 2), rational(4, 2), rational(4, 2)).prop_map(|(a, b, k)| c(a) * x() + c(b) * y() + c(k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Systems of total degree <= 4 with a planted solution.
    #[test]
    fn solver_is_complete_and_boxes_enclose_zeros(
        a in rational(3, 2), b in rational(3, 2),
        l1 in lin_strategy(), l2 in lin_strategy(), l3 in lin_strategy(), l4 in lin_strategy(),
        extra in prop::bool::ANY,
    ) {
        let (dx, dy) = (x() - c(a.clone()), y() - c(b.clone()));
        let mut p = &dx * &l1 + &dy * &l2;
        let mut q = &dx * &l3 + &dy * &l4;
        if extra {
            p = &p * &(x() + y() - c(int(5)));
            q = &q + x().pow(2) * &dy;
        }
        prop_assume!(p.total_degree() <= 4 && q.total_degree() <= 4);
        let search = Box2::square(&int(4));
        let sols = match solve_system_2d(&p, &q, (Var::X, Var::Y), &search, &SolveOptions::default()) {
            Ok(s) => s,
            // infinitely many solutions (common curve): nothing to check
            Err(kopel::Error::Degenerate(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        for s in sols.iter().filter(|s| s.certified) {
            let ib = s.bx.as_ibox(Var::X, Var::Y);
            prop_assert!(p.interval_eval(&ib).unwrap().contains_zero());
            prop_assert!(q.interval_eval(&ib).unwrap().contains_zero());
        }
        prop_assert!(sols.iter().any(|s| s.bx.contains(&a, &b)), "planted root missing");
        for (rx, ry) in newton_roots(&p, &q, 3.9) {
            let hit = sols.iter().any(|s| {
                let m = s.midpoint();
                (to_f64(&m.0) - rx).abs() < 1e-6 && (to_f64(&m.1) - ry).abs() < 1e-6
            });
            prop_assert!(hit, "grid root ({}, {}) missing", rx, ry);
        }
    }

    #[test]
    fn disk_yes_implies_positivity(
        k in positive(1, 40, 16), a in rational(4, 4), b in rational(4, 4), s in rational(3, 4),
        r in positive(1, 8, 8),
        pts in prop::collection::vec((-1000i64..=1000, -1000i64..=1000), 1000),
    ) {
        // k + (x - a)^2 + s*(x - a)(y - b) + (y - b)^2 is positive definite for |s| < 2
        let (u, v) = (x() - c(a), y() - c(b));
        let p1 = c(k.clone()) + &u * &u + c(s) * &u * &v + &v * &v;
        let p2 = c(k) - c(rat(1, 100)) * (x().pow(2) + y().pow(2));
        let cert = certify_positive_on_disk(&[p1.clone(), p2.clone()], &r, 16).unwrap();
        if cert.verdict == Verdict::Yes {
            verify_disk_certificate(&cert).unwrap();
            for (i, j) in pts {
                if i * i + j * j > 1_000_000 {
                    continue;
                }
                let at = point(&[(Var::X, rat(i, 1000) * &r), (Var::Y, rat(j, 1000) * &r)]);
                prop_assert!(p1.eval(&at).unwrap().is_positive());
                prop_assert!(p2.eval(&at).unwrap().is_positive());
            }
        }
    }

    #[test]
    fn straddling_boxes_are_not_in_disk(
        cx in rational(8, 4), cy in rational(8, 4), w in positive(1, 16, 8), r in positive(1, 16, 4),
    ) {
        let bx = Box2::new(
            Interval::new(&cx - &w, &cx + &w).unwrap(),
            Interval::new(&cy - &w, &cy + &w).unwrap(),
        );
        let outside_corner = bx.corners().iter().any(|(a, b)| a * a + b * b > &r * &r);
        if outside_corner {
            prop_assert!(!box_in_disk(&bx, &r));
        } else {
            prop_assert!(box_in_disk(&bx, &r));
        }
    }
}

// ------------------------------------------------------------ model

fn params_strategy() -> impl Strategy<Value = KopelParams> {
    (positive(8, 160, 32), positive(8, 160, 32), positive(1, 32, 32), positive(1, 32, 32))
        .prop_map(|(a, b, r1, r2)| KopelParams::new(a, b, r1, r2).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn equilibria_are_fixed_points(p in params_strategy()) {
        let map = build_map(&p);
        for e in stability::enumerate_equilibria(&p.mu1, &p.mu2, true).unwrap() {
            match &e.exact {
                Some((ex, ey)) => prop_assert_eq!(map.apply(ex, ey).unwrap(), (ex.clone(), ey.clone())),
                None => {
                    let bx = Box2::new(e.x_interval.clone(), e.y_interval.clone());
                    let img = map.apply_box(&bx).unwrap();
                    prop_assert!(img.intersects(&bx));
                }
            }
        }
    }

    #[test]
    fn jury_sum_identity(p in params_strategy(), px in rational(4, 3), py in rational(4, 3)) {
        let j = jury_quantities(&build_map(&p));
        prop_assert_eq!(&j.cd1 + &j.cd2, (MPoly::one() + &j.det).scale(&int(2)));
        let at = point(&[(Var::X, px), (Var::Y, py)]);
        let s = j.cd1.eval(&at).unwrap() + j.cd2.eval(&at).unwrap();
        prop_assert_eq!(s, int(2) * (Rational::one() + j.det.eval(&at).unwrap()));
    }

    #[test]
    fn sequence_identities_for_quadratics(a in rational(9, 4), b in rational(9, 4), k in positive(1, 9, 4)) {
        let lam = MPoly::var(Var::Lambda);
        let d = c(k) * lam.pow(2) + c(a) * &lam + c(b);
        let seq = match discriminant_sequence(&d) {
            Ok(s) => s,
            Err(kopel::Error::Singular(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let ds = reciprocal(&d);
        prop_assert_eq!(&seq.t[2], &(&d + &ds));
        prop_assert_eq!(&(&lam - &MPoly::one()) * &seq.t[1], &d - &ds);
        let delta = seq.delta[2].as_ref().unwrap();
        // lambda T0 = delta (lambda + 1) T1 - T2, cleared of the denominator
        let lhs = &delta.den * &(&lam * &seq.t[0]);
        let rhs = &delta.num * &(&lam + &MPoly::one()) * &seq.t[1] - &delta.den * &seq.t[2];
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn origin_solves_return_system(mu in positive(1, 80, 4), rho in positive(1, 32, 32)) {
        let sp = SymParams::new(mu, rho).unwrap();
        let sys = snapback_system(&build_sym_map(&sp), 2, &snapback::origin()).unwrap();
        let at = point(&[(Var::X0, Rational::zero()), (Var::Y0, Rational::zero())]);
        for e in &sys.equalities {
            prop_assert!(e.eval(&at).unwrap().is_zero());
        }
    }

    #[test]
    fn gram_constant_term_is_squared_det(p in params_strategy(), px in rational(4, 3), py in rational(4, 3)) {
        let map = build_map(&p);
        let at = point(&[(Var::X, px), (Var::Y, py), (Var::Lambda, Rational::zero())]);
        let d0 = gram_char_poly(&map).eval(&at).unwrap();
        let det = map.jacobian_det().eval(&at).unwrap();
        prop_assert_eq!(&d0, &(&det * &det));
        prop_assert!(!d0.is_negative());
    }
}

// ------------------------------------------------------------ stability

fn sign(name: &str, mu1: &Rational, mu2: &Rational, rho: Option<&Rational>) -> i8 {
    let mut at = point(&[(Var::Mu1, mu1.clone()), (Var::Mu2, mu2.clone())]);
    if let Some(r) = rho {
        at.insert(Var::Rho1, r.clone());
    }
    let v = if name == "mu1mu2_minus_1" { mu1mu2_minus_1() } else { classifier(name).clone() };
    let v = v.eval(&at).unwrap();
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn equilibrium_counts_are_consistent(mu1 in positive(1, 200, 32), mu2 in positive(1, 200, 32)) {
        let count = stability::count_positive_equilibria(&mu1, &mu2).unwrap();
        let eqs = stability::enumerate_equilibria(&mu1, &mu2, false).unwrap();
        prop_assert_eq!(count.count as usize, eqs.iter().filter(|e| e.positive).count());
        let p = KopelParams::new(mu1, mu2, Rational::one(), Rational::one()).unwrap();
        let rep = stability::classify_stability(&p).unwrap();
        prop_assert_eq!(rep.positive_count, count.count);
        prop_assert!(rep.stable_count <= rep.positive_count);
    }

    #[test]
    fn classifier_spot_checks_full_adjustment(mu1 in positive(1, 200, 32), mu2 in positive(1, 200, 32)) {
        let p = KopelParams::new(mu1.clone(), mu2.clone(), Rational::one(), Rational::one()).unwrap();
        let rep = stability::classify_stability(&p).unwrap();
        prop_assume!(!rep.any_degenerate);
        let s = |n: &str| sign(n, &mu1, &mu2, None);
        if s("R1") > 0 && s("S3") > 0 && s("A1") < 0 && s("A2") > 0 {
            prop_assert_eq!(rep.stable_count, 2);
        }
        if s("mu1mu2_minus_1") > 0 && ((s("R1") < 0 && s("S3") > 0) || (s("R1") > 0 && s("S3") < 0)) {
            prop_assert_eq!(rep.stable_count, 1);
        }
    }

    #[test]
    fn classifier_spot_checks_equal_adjustment(
        mu1 in positive(1, 200, 32), mu2 in positive(1, 200, 32), rho in positive(1, 32, 32),
    ) {
        let p = KopelParams::new(mu1.clone(), mu2.clone(), rho.clone(), rho.clone()).unwrap();
        let rep = stability::classify_stability(&p).unwrap();
        prop_assume!(!rep.any_degenerate);
        let s = |n: &str| sign(n, &mu1, &mu2, Some(&rho));
        if s("mu1mu2_minus_1") > 0 && ((s("R1") < 0 && s("H3") > 0) || (s("R1") > 0 && s("H3") < 0)) {
            prop_assert_eq!(rep.stable_count, 1);
        }
    }

    #[test]
    fn jury_agrees_with_eigenvalues(p in params_strategy()) {
        let rep = stability::classify_stability(&p).unwrap();
        for e in rep.equilibria.iter().filter(|e| e.positive && !e.degenerate) {
            if let Some(oracle) = common::eigen_oracle(&p, e) {
                prop_assert_eq!(e.stable, Some(oracle));
            }
        }
    }
}

// ------------------------------------------------------------ snapback

fn slow_case() -> SymParams {
    SymParams::new(int(2), rat(175, 256)).unwrap()
}

#[test]
fn ball_certificates_are_monotone_in_radius() {
    let sp = slow_case();
    let mut seen_yes = false;
    // descending chain 1/16, 1/32, ..., 1/8192
    for k in 4..=13 {
        let r = kopel::exact::rational::pow2(-k);
        let cert = certify_repelling_ball(&sp, &snapback::origin(), &r, 24).unwrap();
        if seen_yes {
            assert_eq!(cert.verdict, Verdict::Yes, "YES lost at radius 2^-{k}");
        }
        if cert.verdict == Verdict::Yes {
            verify_disk_certificate(&cert).unwrap();
            seen_yes = true;
        }
    }
    assert!(seen_yes);
}

#[test]
fn candidates_lie_beyond_the_certified_ball() {
    let sp = slow_case();
    let largest = (2..=13)
        .map(|k| kopel::exact::rational::pow2(-k))
        .find(|r| certify_repelling_ball(&sp, &snapback::origin(), r, 24).unwrap().verdict == Verdict::Yes)
        .expect("some radius certifies");
    let cands = find_snapback_candidates(&sp, 2, &snapback::origin(), &SolveOptions::default()).unwrap();
    assert_eq!(cands.len(), 3);
    for cnd in cands {
        let b = &cnd.solution.bx;
        // squared distance from the origin to the box, bounded below
        let near = |iv: &Interval| {
            if iv.contains_zero() {
                Rational::zero()
            } else {
                let m = if iv.lo.is_positive() { iv.lo.clone() } else { -iv.hi.clone() };
                &m * &m
            }
        };
        assert!(near(&b.x_interval) + near(&b.y_interval) > &largest * &largest);
    }
}

#[test]
fn certification_is_deterministic() {
    let sp = slow_case();
    let r = rat(1, 1024);
    let a = certify_repelling_ball(&sp, &snapback::origin(), &r, 24).unwrap();
    let b = certify_repelling_ball(&sp, &snapback::origin(), &r, 24).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let opts = snapback::SnapbackOptions::default();
    let a = snapback::certify_snapback(&sp, &snapback::origin(), 2, &opts).unwrap();
    let b = snapback::certify_snapback(&sp, &snapback::origin(), 2, &opts).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn yes_certificates_reverify(rho in positive(4, 6, 32), mu in positive(57, 61, 1)) {
        let sp = SymParams::new(mu, rho).unwrap();
        let opts = snapback::SnapbackOptions { radii: vec![rat(1, 5), rat(1, 8)], ..Default::default() };
        let cert = snapback::certify_snapback(&sp, &snapback::origin(), 2, &opts).unwrap();
        if cert.verdict == Verdict::Yes {
            snapback::verify_snapback_certificate(&cert).unwrap();
        }
    }
}

// ------------------------------------------------------------ dynamics

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn trajectories_are_deterministic(p in params_strategy(), x0 in rational(10, 10), y0 in rational(10, 10)) {
        let a = iterate_trajectory(&p, &(x0.clone(), y0.clone()), 12, Mode::default());
        let b = iterate_trajectory(&p, &(x0, y0), 12, Mode::default());
        prop_assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn float_mode_tracks_exact_mode(p in params_strategy(), x0 in rational(10, 10), y0 in rational(10, 10)) {
        let init = (x0, y0);
        let ex = iterate_trajectory(&p, &init, 8, Mode::default());
        let bf = iterate_trajectory(&p, &init, 8, Mode::Bigfloat { precision: 256 });
        for (a, b) in ex.points.iter().zip(&bf.points).take_while(|(a, _)| a.is_exact()) {
            let (a, b) = (a.to_rationals(), b.to_rationals());
            prop_assert!(agreeing_digits(&a.0, &b.0) >= 40.0);
            prop_assert!(agreeing_digits(&a.1, &b.1) >= 40.0);
        }
    }

    #[test]
    fn diagonal_is_invariant(mu in positive(1, 16, 4), rho in positive(1, 32, 32), x0 in rational(10, 10)) {
        let p = SymParams::new(mu, rho).unwrap().to_kopel();
        for mode in [Mode::default(), Mode::Bigfloat { precision: 128 }] {
            let t = iterate_trajectory(&p, &(x0.clone(), x0.clone()), 20, mode);
            for s in &t.points {
                let (a, b) = s.to_rationals();
                prop_assert_eq!(a, b);
            }
        }
    }
}
