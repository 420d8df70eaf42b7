//! Certified solving of bivariate systems and certified positivity on disks.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::exact::roots::{isolate_real_roots, refine_root, RootBox1};
use crate::exact::{resultant, IBox, Interval, MPoly, Point, Var};

/// Three-valued outcome of every certifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Yes,
    No,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "YES",
            Verdict::No => "NO",
            Verdict::Undecided => "UNDECIDED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Box2 {
    pub x_interval: Interval,
    pub y_interval: Interval,
}

impl Box2 {
    pub fn new(x: Interval, y: Interval) -> Self {
        Box2 { x_interval: x, y_interval: y }
    }

    pub fn square(r: &Rational) -> Self {
        let iv = Interval::hull_of(-r.clone(), r.clone());
        Box2::new(iv.clone(), iv)
    }

    pub fn point(x: Rational, y: Rational) -> Self {
        Box2::new(Interval::point(x), Interval::point(y))
    }

    pub fn center(&self) -> (Rational, Rational) {
        (self.x_interval.mid(), self.y_interval.mid())
    }

    pub fn corners(&self) -> [(Rational, Rational); 4] {
        let (x, y) = (&self.x_interval, &self.y_interval);
        [
            (x.lo.clone(), y.lo.clone()),
            (x.lo.clone(), y.hi.clone()),
            (x.hi.clone(), y.lo.clone()),
            (x.hi.clone(), y.hi.clone()),
        ]
    }

    pub fn as_ibox(&self, xv: Var, yv: Var) -> IBox {
        let mut b = IBox::new();
        b.insert(xv, self.x_interval.clone());
        b.insert(yv, self.y_interval.clone());
        b
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        self.x_interval.contains(x) && self.y_interval.contains(y)
    }

    pub fn intersects(&self, o: &Box2) -> bool {
        self.x_interval.intersect(&o.x_interval).is_some()
            && self.y_interval.intersect(&o.y_interval).is_some()
    }

    /// Translates by (dx, dy).
    pub fn shifted(&self, dx: &Rational, dy: &Rational) -> Box2 {
        Box2::new(
            Interval { lo: &self.x_interval.lo + dx, hi: &self.x_interval.hi + dx },
            Interval { lo: &self.y_interval.lo + dy, hi: &self.y_interval.hi + dy },
        )
    }

    pub fn max_width(&self) -> Rational {
        rational::max(&self.x_interval.width(), &self.y_interval.width())
    }
}

fn point2(xv: Var, x: &Rational, yv: Var, y: &Rational) -> Point {
    let mut p = Point::new();
    p.insert(xv, x.clone());
    p.insert(yv, y.clone());
    p
}

/// A box holding at most one solution; `certified` means exactly one.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolutionBox {
    #[serde(rename = "box")]
    pub bx: Box2,
    pub certified: bool,
    pub residual_witness: String,
    #[serde(skip)]
    roots: Option<(RootBox1, RootBox1)>,
}

impl SolutionBox {
    pub fn midpoint(&self) -> (Rational, Rational) {
        self.bx.center()
    }

    /// Shrinks a box to width at most `w`. Certification is preserved: the
    /// solution's coordinates are the isolated resultant roots.
    pub fn refined(&self, w: &Rational) -> Result<SolutionBox> {
        let Some((rx, ry)) = &self.roots else {
            return Ok(self.clone());
        };
        let rx = refine_root(rx, w)?;
        let ry = refine_root(ry, w)?;
        Ok(SolutionBox {
            bx: Box2::new(rx.interval.clone(), ry.interval.clone()),
            certified: self.certified,
            residual_witness: self.residual_witness.clone(),
            roots: Some((rx, ry)),
        })
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Refinement rounds per candidate pair before reporting UNDECIDED.
    pub max_rounds: u32,
    /// Final width of certified boxes.
    pub target_width: Rational,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { max_rounds: 80, target_width: rational::pow2(-24) }
    }
}

/// The system (P, Q) with its Jacobian entries, in variables (xv, yv).
struct System<'a> {
    p: &'a MPoly,
    q: &'a MPoly,
    xv: Var,
    yv: Var,
    jac: [[MPoly; 2]; 2],
}

impl<'a> System<'a> {
    fn new(p: &'a MPoly, q: &'a MPoly, xv: Var, yv: Var) -> Self {
        let jac = [
            [p.derivative(xv), p.derivative(yv)],
            [q.derivative(xv), q.derivative(yv)],
        ];
        System { p, q, xv, yv, jac }
    }

    fn excludes(&self, b: &Box2) -> Result<bool> {
        let ib = b.as_ibox(self.xv, self.yv);
        Ok(!self.p.interval_eval(&ib)?.contains_zero() || !self.q.interval_eval(&ib)?.contains_zero())
    }

    /// Krawczyk test: K(X) inside the interior of X proves a unique zero.
    fn krawczyk(&self, b: &Box2) -> Result<Option<Box2>> {
        let (cx, cy) = b.center();
        let at = point2(self.xv, &cx, self.yv, &cy);
        let mut jm = [[0f64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                jm[i][j] = rational::to_f64(&self.jac[i][j].eval(&at)?);
            }
        }
        let det = jm[0][0] * jm[1][1] - jm[0][1] * jm[1][0];
        if det == 0.0 || !det.is_finite() {
            return Ok(None);
        }
        let yf = [
            [jm[1][1] / det, -jm[0][1] / det],
            [-jm[1][0] / det, jm[0][0] / det],
        ];
        if yf.iter().flatten().any(|v| !v.is_finite()) {
            return Ok(None);
        }
        let ym: Vec<Vec<Rational>> =
            yf.iter().map(|r| r.iter().map(|&v| rational::from_f64(v)).collect()).collect();
        let f = [self.p.eval(&at)?, self.q.eval(&at)?];
        let ib = b.as_ibox(self.xv, self.yv);
        let mut ji = vec![vec![Interval::zero(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                ji[i][j] = self.jac[i][j].interval_eval(&ib)?;
            }
        }
        let d = [
            &b.x_interval - &Interval::point(cx.clone()),
            &b.y_interval - &Interval::point(cy.clone()),
        ];
        let c = [cx, cy];
        let mut k = Vec::with_capacity(2);
        for i in 0..2 {
            let yf_i = &ym[i][0] * &f[0] + &ym[i][1] * &f[1];
            let mut acc = Interval::point(&c[i] - yf_i);
            for (j, dj) in d.iter().enumerate() {
                // (I - Y J(X))_{ij}
                let mut m = &ji[0][j].scale(&ym[i][0]) + &ji[1][j].scale(&ym[i][1]);
                m = -&m;
                if i == j {
                    m = &m + &Interval::point(Rational::one());
                }
                acc = &acc + &(&m * dj);
            }
            k.push(acc);
        }
        let kb = Box2::new(k[0].clone(), k[1].clone());
        let inside = kb.x_interval.is_interior_of(&b.x_interval)
            && kb.y_interval.is_interior_of(&b.y_interval);
        Ok(inside.then_some(kb))
    }

    /// Miranda test: P changes sign between the x-edges and Q between the
    /// y-edges (or with the roles of P and Q swapped).
    fn miranda(&self, b: &Box2) -> Result<bool> {
        let edge = |p: &MPoly, fix_x: bool, at: &Rational| -> Result<Option<i8>> {
            let mut ib = b.as_ibox(self.xv, self.yv);
            let v = if fix_x { self.xv } else { self.yv };
            ib.insert(v, Interval::point(at.clone()));
            let e = p.interval_eval(&ib)?;
            Ok(e.sign().filter(|s| *s != 0))
        };
        let opposite = |p: &MPoly, fix_x: bool| -> Result<bool> {
            let (lo, hi) = if fix_x {
                (&b.x_interval.lo, &b.x_interval.hi)
            } else {
                (&b.y_interval.lo, &b.y_interval.hi)
            };
            Ok(matches!((edge(p, fix_x, lo)?, edge(p, fix_x, hi)?), (Some(a), Some(c)) if a != c))
        };
        Ok((opposite(self.p, true)? && opposite(self.q, false)?)
            || (opposite(self.q, true)? && opposite(self.p, false)?))
    }
}

fn isolate_in(r: &MPoly, v: Var, within: Option<&Interval>) -> Result<Vec<RootBox1>> {
    let Some(within) = within else {
        return isolate_real_roots(r, v);
    };
    let mut out = Vec::new();
    for b in isolate_real_roots(r, v)? {
        let mut b = b;
        // shrink until the box is decided against the search range
        loop {
            if b.interval.intersect(within).is_none() {
                break;
            }
            if b.interval.is_subset_of(within) || b.exact().is_some() {
                out.push(b);
                break;
            }
            let w = b.width() / rational::int(2);
            if w < rational::pow2(-200) {
                out.push(b);
                break;
            }
            b = refine_root(&b, &w)?;
        }
    }
    Ok(out)
}

/// All real solutions of {P = 0, Q = 0} in `search`, each in its own box.
///
/// Candidates are products of root boxes of res(P,Q,y) in x and res(P,Q,x)
/// in y; every common solution lies in exactly one such product, so the
/// enumeration is complete. Pairs are excluded by interval evaluation or
/// certified by Krawczyk/Miranda; undecidable pairs are reported, not dropped.
pub fn solve_system_2d(
    p: &MPoly,
    q: &MPoly,
    vars: (Var, Var),
    search: &Box2,
    opts: &SolveOptions,
) -> Result<Vec<SolutionBox>> {
    solve_in(p, q, vars, Some(search), opts)
}

/// All real solutions in the plane.
pub fn solve_system_2d_all(p: &MPoly, q: &MPoly, vars: (Var, Var), opts: &SolveOptions) -> Result<Vec<SolutionBox>> {
    solve_in(p, q, vars, None, opts)
}

fn solve_in(
    p: &MPoly,
    q: &MPoly,
    vars: (Var, Var),
    search: Option<&Box2>,
    opts: &SolveOptions,
) -> Result<Vec<SolutionBox>> {
    let (xv, yv) = vars;
    for (name, f) in [("P", p), ("Q", q)] {
        if let Some(v) = f.vars().into_iter().find(|v| *v != xv && *v != yv) {
            return Err(Error::Usage(format!("{name} involves unbound variable {v}")));
        }
    }
    let rx = resultant(p, q, yv)?;
    let ry = resultant(p, q, xv)?;
    if rx.is_zero() || ry.is_zero() {
        return Err(Error::Degenerate("the two polynomials share a common factor".into()));
    }
    let xs = isolate_in(&rx, xv, search.map(|b| &b.x_interval))?;
    let ys = isolate_in(&ry, yv, search.map(|b| &b.y_interval))?;
    let sys = System::new(p, q, xv, yv);
    let pairs: Vec<(RootBox1, RootBox1)> = xs
        .iter()
        .flat_map(|a| ys.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let decided: Vec<Result<Option<SolutionBox>>> =
        pairs.into_par_iter().map(|(a, b)| decide_pair(&sys, a, b, opts)).collect();
    let mut out = Vec::new();
    for d in decided {
        if let Some(s) = d? {
            out.push(s);
        }
    }
    out.sort_by(|a, b| {
        (&a.bx.x_interval.lo, &a.bx.y_interval.lo).cmp(&(&b.bx.x_interval.lo, &b.bx.y_interval.lo))
    });
    Ok(out)
}

fn decide_pair(
    sys: &System<'_>,
    mut a: RootBox1,
    mut b: RootBox1,
    opts: &SolveOptions,
) -> Result<Option<SolutionBox>> {
    for _ in 0..opts.max_rounds {
        let bx = Box2::new(a.interval.clone(), b.interval.clone());
        if sys.excludes(&bx)? {
            return Ok(None);
        }
        let witness = if let Some(k) = sys.krawczyk(&bx)? {
            Some(format!(
                "krawczyk: K(X) = {} x {} lies in the interior of X",
                k.x_interval, k.y_interval
            ))
        } else if sys.miranda(&bx)? {
            Some("miranda: opposite edge signs for both equations".to_string())
        } else {
            None
        };
        if let Some(w) = witness {
            let s = SolutionBox { bx, certified: true, residual_witness: w, roots: Some((a, b)) };
            return s.refined(&opts.target_width).map(Some);
        }
        let wa = a.width() / rational::int(2);
        let wb = b.width() / rational::int(2);
        a = refine_root(&a, &wa)?;
        b = refine_root(&b, &wb)?;
    }
    Ok(Some(SolutionBox {
        bx: Box2::new(a.interval.clone(), b.interval.clone()),
        certified: false,
        residual_witness: "undecided: neither excluded nor certified at the refinement cap".into(),
        roots: Some((a, b)),
    }))
}

/// True iff every corner satisfies x^2 + y^2 <= r^2; the maximum of
/// x^2 + y^2 over an axis-aligned box is attained at a corner.
pub fn box_in_disk(b: &Box2, r: &Rational) -> bool {
    let r2 = r * r;
    b.corners().iter().all(|(x, y)| x * x + y * y <= r2)
}

fn nearest_sq(iv: &Interval) -> Rational {
    if iv.contains_zero() {
        Rational::zero()
    } else {
        let m = rational::min(&iv.lo.abs(), &iv.hi.abs());
        &m * &m
    }
}

/// True iff the box misses the closed disk of radius r entirely.
pub fn box_outside_disk(b: &Box2, r: &Rational) -> bool {
    nearest_sq(&b.x_interval) + nearest_sq(&b.y_interval) > r * r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LeafKind {
    /// Every enclosure strictly positive.
    Pass,
    /// Misses the disk.
    Outside,
}

/// Cell of the subdivision tree: at `level` the square is cut into
/// 2^ceil(level/2) columns and 2^floor(level/2) rows.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiskLeaf {
    pub level: u32,
    pub ix: u64,
    pub iy: u64,
    pub kind: LeafKind,
    #[serde(rename = "box")]
    pub bx: Box2,
    pub enclosures: Vec<Interval>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiskCertificate {
    pub polys: Vec<MPoly>,
    #[serde(with = "rational::serde_rat")]
    pub radius: Rational,
    pub verdict: Verdict,
    pub subdivision_depth: u32,
    pub max_depth: u32,
    pub failure_witness: Option<Box2>,
    #[serde(with = "rational::serde_rat_vec")]
    pub witness_values: Vec<Rational>,
    pub leaves: Vec<DiskLeaf>,
}

fn cell_box(r: &Rational, level: u32, ix: u64, iy: u64) -> Box2 {
    let nx = rational::pow2(level.div_ceil(2) as i64);
    let ny = rational::pow2((level / 2) as i64);
    let side = r * rational::int(2);
    let wx = &side / nx;
    let wy = &side / ny;
    let x0 = -r.clone() + &wx * Rational::from_integer(ix.into());
    let y0 = -r.clone() + &wy * Rational::from_integer(iy.into());
    Box2::new(
        Interval { lo: x0.clone(), hi: x0 + wx },
        Interval { lo: y0.clone(), hi: y0 + wy },
    )
}

fn children(level: u32, ix: u64, iy: u64) -> [(u64, u64); 2] {
    // even levels are square: split x; odd levels split y
    if level % 2 == 0 {
        [(2 * ix, iy), (2 * ix + 1, iy)]
    } else {
        [(ix, 2 * iy), (ix, 2 * iy + 1)]
    }
}

enum Cell {
    Leaf(DiskLeaf),
    Negative(Box2, Vec<Rational>),
    Split { zero: Option<(Box2, Vec<Rational>)> },
}

fn examine(polys: &[MPoly], r: &Rational, level: u32, ix: u64, iy: u64) -> Result<Cell> {
    let bx = cell_box(r, level, ix, iy);
    if box_outside_disk(&bx, r) {
        return Ok(Cell::Leaf(DiskLeaf {
            level,
            ix,
            iy,
            kind: LeafKind::Outside,
            bx,
            enclosures: vec![],
        }));
    }
    let (cx, cy) = bx.center();
    let mut zero = None;
    if &cx * &cx + &cy * &cy <= r * r {
        let at = point2(Var::X, &cx, Var::Y, &cy);
        let vals = polys.iter().map(|p| p.eval(&at)).collect::<Result<Vec<_>>>()?;
        if vals.iter().any(|v| v.is_negative()) {
            return Ok(Cell::Negative(Box2::point(cx, cy), vals));
        }
        if vals.iter().any(|v| v.is_zero()) {
            zero = Some((Box2::point(cx, cy), vals));
        }
    }
    if zero.is_none() {
        let ib = bx.as_ibox(Var::X, Var::Y);
        let enc = polys.iter().map(|p| p.interval_eval(&ib)).collect::<Result<Vec<_>>>()?;
        if enc.iter().all(|e| e.strictly_positive()) {
            return Ok(Cell::Leaf(DiskLeaf { level, ix, iy, kind: LeafKind::Pass, bx, enclosures: enc }));
        }
    }
    Ok(Cell::Split { zero })
}

/// Certifies that every polynomial is strictly positive on the closed disk
/// x^2 + y^2 <= r^2, by dyadic subdivision of the enclosing square.
pub fn certify_positive_on_disk(polys: &[MPoly], r: &Rational, max_depth: u32) -> Result<DiskCertificate> {
    if !r.is_positive() {
        return Err(Error::Domain("radius must be positive".into()));
    }
    for p in polys {
        if p.vars().iter().any(|v| *v != Var::X && *v != Var::Y) {
            return Err(Error::Usage(format!("polynomial not bivariate in (x, y): {p}")));
        }
    }
    let mut cert = DiskCertificate {
        polys: polys.to_vec(),
        radius: r.clone(),
        verdict: Verdict::Undecided,
        subdivision_depth: 0,
        max_depth,
        failure_witness: None,
        witness_values: vec![],
        leaves: vec![],
    };
    let mut frontier: Vec<(u64, u64)> = vec![(0, 0)];
    // first exact zero seen at a center, with the level it was seen at
    let mut zero_seen: Option<(u32, Box2, Vec<Rational>)> = None;
    let mut level = 0u32;
    loop {
        cert.subdivision_depth = level;
        let cells: Vec<Result<Cell>> = frontier
            .par_iter()
            .map(|&(ix, iy)| examine(polys, r, level, ix, iy))
            .collect();
        let mut next = Vec::new();
        for ((ix, iy), c) in frontier.iter().zip(cells) {
            match c? {
                Cell::Leaf(l) => cert.leaves.push(l),
                Cell::Negative(w, vals) => {
                    cert.verdict = Verdict::No;
                    cert.failure_witness = Some(w);
                    cert.witness_values = vals;
                    return Ok(cert);
                }
                Cell::Split { zero } => {
                    if let (None, Some((w, vals))) = (&zero_seen, zero) {
                        zero_seen = Some((level, w, vals));
                    }
                    next.extend(children(level, *ix, *iy));
                }
            }
        }
        // a zero stands as the witness once one deeper level found no negative
        if let Some((zl, w, vals)) = &zero_seen {
            if level > *zl || level >= max_depth {
                cert.verdict = Verdict::No;
                cert.failure_witness = Some(w.clone());
                cert.witness_values = vals.clone();
                return Ok(cert);
            }
        }
        if next.is_empty() {
            cert.verdict = Verdict::Yes;
            return Ok(cert);
        }
        if level >= max_depth {
            cert.verdict = Verdict::Undecided;
            return Ok(cert);
        }
        frontier = next;
        level += 1;
    }
}

/// Re-checks a disk certificate from scratch.
pub fn verify_disk_certificate(cert: &DiskCertificate) -> Result<()> {
    let r = &cert.radius;
    let fail = |m: String| Err(Error::Domain(format!("disk certificate rejected: {m}")));
    match cert.verdict {
        Verdict::No => {
            let Some(w) = &cert.failure_witness else {
                return fail("NO without witness".into());
            };
            let (x, y) = (&w.x_interval.lo, &w.y_interval.lo);
            if &x.clone() * x + y * y > r * r {
                return fail("witness outside the disk".into());
            }
            let at = point2(Var::X, x, Var::Y, y);
            for p in &cert.polys {
                if !p.eval(&at)?.is_positive() {
                    return Ok(());
                }
            }
            fail("witness is positive for every polynomial".into())
        }
        Verdict::Undecided => Ok(()),
        Verdict::Yes => {
            let keys: HashSet<(u32, u64, u64)> =
                cert.leaves.iter().map(|l| (l.level, l.ix, l.iy)).collect();
            if keys.len() != cert.leaves.len() {
                return fail("duplicate leaf".into());
            }
            let mut area = Rational::zero();
            for l in &cert.leaves {
                let nx = 1u128 << l.level.div_ceil(2);
                let ny = 1u128 << (l.level / 2);
                if l.ix as u128 >= nx || l.iy as u128 >= ny {
                    return fail(format!("leaf index out of range at level {}", l.level));
                }
                if l.bx != cell_box(r, l.level, l.ix, l.iy) {
                    return fail("leaf box does not match its index".into());
                }
                // no ancestor may also be a leaf
                let (mut lv, mut ix, mut iy) = (l.level, l.ix, l.iy);
                while lv > 0 {
                    lv -= 1;
                    if lv % 2 == 0 {
                        ix /= 2;
                    } else {
                        iy /= 2;
                    }
                    if keys.contains(&(lv, ix, iy)) {
                        return fail("nested leaves".into());
                    }
                }
                area += rational::pow2(-(l.level as i64));
                match l.kind {
                    LeafKind::Outside => {
                        if !box_outside_disk(&l.bx, r) {
                            return fail("outside leaf meets the disk".into());
                        }
                    }
                    LeafKind::Pass => {
                        let ib = l.bx.as_ibox(Var::X, Var::Y);
                        for p in &cert.polys {
                            if !p.interval_eval(&ib)?.strictly_positive() {
                                return fail("leaf enclosure not strictly positive".into());
                            }
                        }
                    }
                }
            }
            if !area.is_one() {
                return fail("leaves do not tile the square".into());
            }
            Ok(())
        }
    }
}
