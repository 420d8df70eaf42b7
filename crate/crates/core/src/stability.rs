//! Equilibrium counting, Jury classification, the sample table and grid scans.

use std::collections::BTreeMap;
use std::io::Write;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{self, int, Rational};
use crate::exact::roots::{isolate_real_roots, refine_root, root_sign, RootBox1};
use crate::exact::upoly::UPoly;
use crate::exact::{point, IBox, Interval, MPoly, Point, Var};
use crate::model::{self, classifier, equilibrium_chain, jury_quantities, KopelParams};

/// Default width for reported equilibrium boxes (about 9.5e-7).
pub fn default_width() -> Rational {
    rational::pow2(-20)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquilibriumCount {
    pub count: u32,
    pub label: String,
}

fn mu_point(mu1: &Rational, mu2: &Rational) -> Point {
    point(&[(Var::Mu1, mu1.clone()), (Var::Mu2, mu2.clone())])
}

/// Number of positive equilibria from the signs of R1 and mu1*mu2 - 1.
pub fn count_positive_equilibria(mu1: &Rational, mu2: &Rational) -> Result<EquilibriumCount> {
    if mu1 <= &Rational::zero() || mu2 <= &Rational::zero() {
        return Err(Error::Usage("mu1 and mu2 must be positive".into()));
    }
    let at = mu_point(mu1, mu2);
    let r1 = classifier("R1").sign_at(&at)?;
    let m = model::mu1mu2_minus_1().sign_at(&at)?;
    let (count, label) = match (r1, m) {
        (1, _) => (3, "three distinct positive equilibria (R1 > 0)"),
        (-1, 1) => (1, "one positive equilibrium (R1 < 0, mu1*mu2 > 1)"),
        (-1, _) => (0, "no positive equilibrium (R1 < 0, mu1*mu2 <= 1)"),
        _ if *mu1 == int(3) && *mu2 == int(3) => {
            (1, "one positive equilibrium (2/3, 2/3) of multiplicity 3 (R1 = 0)")
        }
        _ => (2, "two positive equilibria, one double (R1 = 0)"),
    };
    Ok(EquilibriumCount { count, label: label.into() })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquilibriumRecord {
    pub x_interval: Interval,
    #[serde(with = "rational::serde_opt_rat_pair", default)]
    pub exact: Option<(Rational, Rational)>,
    pub y_interval: Interval,
    pub multiplicity: u32,
    pub positive: bool,
    pub jury_signs: Option<[i8; 3]>,
    pub stable: Option<bool>,
    pub degenerate: bool,
    #[serde(skip)]
    root: Option<RootBox1>,
}

impl EquilibriumRecord {
    pub fn midpoint(&self) -> (Rational, Rational) {
        (self.x_interval.mid(), self.y_interval.mid())
    }
}

fn y_of(mu2: &Rational, x: &Interval) -> Interval {
    // mu2 * x * (1 - x), evaluated tightly as mu2 * (1/4 - (x - 1/2)^2)
    let h = rational::rat(1, 2);
    let s = (x - &Interval::point(h.clone())).pow(2);
    (&Interval::point(&h * &h) - &s).scale(mu2)
}

/// The rational root inside the box when its square-free factor is linear.
fn linear_root(b: &RootBox1) -> Option<Rational> {
    let u = UPoly::from_mpoly(&b.poly, b.var).ok()?;
    u.squarefree_decomposition()
        .into_iter()
        .filter(|(f, _)| f.degree() == 1)
        .map(|(f, _)| -&f.0[0] / &f.0[1])
        .find(|r| b.interval.contains(r))
}

/// Equilibria from the chain [G2, G1]: isolate G1 in x, then y = mu2 x (1 - x).
pub fn enumerate_equilibria(mu1: &Rational, mu2: &Rational, include_zero: bool) -> Result<Vec<EquilibriumRecord>> {
    let (_, g1) = equilibrium_chain();
    let g1 = g1.specialize(&mu_point(mu1, mu2));
    let mut out = Vec::new();
    if include_zero {
        out.push(EquilibriumRecord {
            x_interval: Interval::zero(),
            exact: Some((Rational::zero(), Rational::zero())),
            y_interval: Interval::zero(),
            multiplicity: 1,
            positive: false,
            jury_signs: None,
            stable: None,
            degenerate: false,
            root: None,
        });
    }
    if g1.is_constant() {
        return Ok(out);
    }
    let width = default_width();
    for b in isolate_real_roots(&g1, Var::X)? {
        let (sx, b) = root_sign(&b)?;
        if let Some(r) = linear_root(&b) {
            let y = mu2 * &r * (Rational::one() - &r);
            out.push(EquilibriumRecord {
                x_interval: Interval::point(r.clone()),
                exact: Some((r.clone(), y.clone())),
                y_interval: Interval::point(y.clone()),
                multiplicity: b.multiplicity,
                positive: r > Rational::zero() && y > Rational::zero(),
                jury_signs: None,
                stable: None,
                degenerate: false,
                root: Some(b),
            });
            continue;
        }
        let mut b = refine_root(&b, &width)?;
        // y > 0 iff 0 < x < 1; G1(1) = 1, so x = 1 is never a root
        let mut y = y_of(mu2, &b.interval);
        while y.sign().is_none() || y.width() > width {
            b = refine_root(&b, &(b.width() / int(2)))?;
            y = y_of(mu2, &b.interval);
        }
        out.push(EquilibriumRecord {
            x_interval: b.interval.clone(),
            exact: None,
            positive: sx > 0 && y.strictly_positive(),
            y_interval: y,
            multiplicity: b.multiplicity,
            jury_signs: None,
            stable: None,
            degenerate: false,
            root: Some(b),
        });
    }
    Ok(out)
}

/// Sign of univariate `h` at the root isolated by `b`: exact zero via
/// gcd with the square-free part plus Sturm counting, otherwise by
/// refining until the enclosure excludes zero.
fn sign_at_root(h: &MPoly, b: &RootBox1) -> Result<i8> {
    let hu = UPoly::from_mpoly(h, Var::X)?;
    if hu.is_zero() {
        return Ok(0);
    }
    if let Some(r) = b.exact() {
        return Ok(hu.sign_at(&r));
    }
    let sqf = UPoly::from_mpoly(&b.sqf, b.var)?;
    let g = hu.gcd(&sqf);
    if g.degree() > 0 {
        if let Some(r) = linear_root(b) {
            if g.sign_at(&r) == 0 {
                return Ok(0);
            }
        } else {
            let n = crate::exact::sturm_count(&g.to_mpoly(Var::X), Var::X, &b.interval)?;
            if n > 0 {
                return Ok(0);
            }
        }
    }
    if let Some(r) = linear_root(b) {
        return Ok(hu.sign_at(&r));
    }
    let mut cur = b.clone();
    loop {
        let mut ib = IBox::new();
        ib.insert(Var::X, cur.interval.clone());
        if let Some(s) = h.interval_eval(&ib)?.sign().filter(|s| *s != 0) {
            return Ok(s);
        }
        cur = refine_root(&cur, &(cur.width() / int(2)))?;
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabilityReport {
    pub params: KopelParams,
    pub equilibria: Vec<EquilibriumRecord>,
    pub positive_count: u32,
    pub stable_count: u32,
    pub any_degenerate: bool,
}

/// Jury signs (CD1, CD2, CD3) at every positive equilibrium.
pub fn classify_stability(params: &KopelParams) -> Result<StabilityReport> {
    let mut eqs = enumerate_equilibria(&params.mu1, &params.mu2, false)?;
    let jury = jury_quantities(&model::build_map(params));
    let y_sub = MPoly::constant(params.mu2.clone()) * MPoly::var(Var::X) * (MPoly::one() - MPoly::var(Var::X));
    let cds: Vec<MPoly> = [&jury.cd1, &jury.cd2, &jury.cd3]
        .iter()
        .map(|cd| cd.substitute(Var::Y, &y_sub))
        .collect();
    let mut stable_count = 0;
    let mut positive_count = 0;
    let mut any_degenerate = false;
    for e in eqs.iter_mut().filter(|e| e.positive) {
        positive_count += 1;
        let b = e.root.as_ref().expect("positive equilibria come from root boxes");
        let mut s = [0i8; 3];
        for (k, cd) in cds.iter().enumerate() {
            s[k] = sign_at_root(cd, b)?;
        }
        e.degenerate = s.contains(&0);
        e.stable = Some(!e.degenerate && s.iter().all(|v| *v > 0));
        e.jury_signs = Some(s);
        any_degenerate |= e.degenerate;
        if e.stable == Some(true) {
            stable_count += 1;
        }
    }
    Ok(StabilityReport {
        params: params.clone(),
        equilibria: eqs,
        positive_count,
        stable_count,
        any_degenerate,
    })
}

/// Sample table rows at rho1 = rho2 = 1: (mu1, mu2, stable count,
/// signs of mu1*mu2 - 1, R1, S3).
pub const SAMPLE_TABLE: [(&str, &str, u32, [i8; 3]); 39] = [
    ("1", "1/2", 0, [-1, -1, 1]),
    ("1", "2", 1, [1, -1, 1]),
    ("1", "5", 0, [1, -1, -1]),
    ("25/8", "1/4", 0, [-1, -1, 1]),
    ("25/8", "1", 1, [1, -1, 1]),
    ("25/8", "25/8", 2, [1, 1, 1]),
    ("25/8", "13/4", 1, [1, -1, 1]),
    ("25/8", "4", 0, [1, -1, -1]),
    ("13/4", "1/4", 0, [-1, -1, 1]),
    ("13/4", "1", 1, [1, -1, 1]),
    ("13/4", "13/4", 2, [1, 1, 1]),
    ("13/4", "55/16", 1, [1, 1, -1]),
    ("13/4", "4", 0, [1, -1, -1]),
    ("27/8", "1/4", 0, [-1, -1, 1]),
    ("27/8", "1", 1, [1, -1, 1]),
    ("27/8", "2", 0, [1, -1, -1]),
    ("27/8", "3", 1, [1, -1, 1]),
    ("27/8", "13/4", 2, [1, 1, 1]),
    ("27/8", "7/2", 1, [1, 1, -1]),
    ("27/8", "5", 0, [1, -1, -1]),
    ("219/64", "1/4", 0, [-1, -1, 1]),
    ("219/64", "1", 1, [1, -1, 1]),
    ("219/64", "2", 0, [1, -1, -1]),
    ("219/64", "103/32", 1, [1, 1, -1]),
    ("219/64", "13/4", 2, [1, 1, 1]),
    ("219/64", "7/2", 1, [1, 1, -1]),
    ("219/64", "5", 0, [1, -1, -1]),
    ("7/2", "1/4", 0, [-1, -1, 1]),
    ("7/2", "1", 1, [1, -1, 1]),
    ("7/2", "2", 0, [1, -1, -1]),
    ("7/2", "13/4", 1, [1, 1, -1]),
    ("7/2", "7/2", 0, [1, 1, 1]),
    ("7/2", "4", 1, [1, 1, -1]),
    ("7/2", "5", 0, [1, -1, -1]),
    ("5", "1/8", 0, [-1, -1, 1]),
    ("5", "1/2", 1, [1, -1, 1]),
    ("5", "1", 0, [1, -1, -1]),
    ("5", "57/16", 1, [1, 1, -1]),
    ("5", "4", 0, [1, 1, 1]),
];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableRow {
    #[serde(with = "rational::serde_rat")]
    pub mu1: Rational,
    #[serde(with = "rational::serde_rat")]
    pub mu2: Rational,
    pub expected_num: u32,
    pub expected_signs: [i8; 3],
    pub num: u32,
    pub signs: [i8; 3],
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableReport {
    pub rows: Vec<TableRow>,
    pub all_match: bool,
}

/// Signs of mu1*mu2 - 1, R1 and S3.
pub fn table_signs(mu1: &Rational, mu2: &Rational) -> Result<[i8; 3]> {
    let at = mu_point(mu1, mu2);
    Ok([
        model::mu1mu2_minus_1().sign_at(&at)?,
        classifier("R1").sign_at(&at)?,
        classifier("S3").sign_at(&at)?,
    ])
}

pub fn verify_sample_table() -> Result<TableReport> {
    let rows: Vec<Result<TableRow>> = SAMPLE_TABLE
        .par_iter()
        .map(|(a, b, num, signs)| {
            let mu1 = rational::parse_rational(a)?;
            let mu2 = rational::parse_rational(b)?;
            let rep = classify_stability(&KopelParams::new(mu1.clone(), mu2.clone(), int(1), int(1))?)?;
            let got = table_signs(&mu1, &mu2)?;
            Ok(TableRow {
                matches: rep.stable_count == *num && got == *signs,
                mu1,
                mu2,
                expected_num: *num,
                expected_signs: *signs,
                num: rep.stable_count,
                signs: got,
            })
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let all_match = rows.iter().all(|r| r.matches);
    Ok(TableReport { rows, all_match })
}

/// `n` evenly spaced rational nodes from `lo` to `hi` inclusive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisSpec {
    #[serde(with = "rational::serde_rat")]
    pub lo: Rational,
    #[serde(with = "rational::serde_rat")]
    pub hi: Rational,
    pub n: usize,
}

impl AxisSpec {
    /// Parses `lo:hi:n`, or a single value.
    pub fn parse(s: &str) -> Result<AxisSpec> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => {
                let v = rational::parse_rational(v)?;
                Ok(AxisSpec { lo: v.clone(), hi: v, n: 1 })
            }
            [lo, hi, n] => {
                let n: usize = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::Usage(format!("bad node count in `{s}`")))?;
                if n == 0 {
                    return Err(Error::Usage("axis needs at least one node".into()));
                }
                Ok(AxisSpec { lo: rational::parse_rational(lo)?, hi: rational::parse_rational(hi)?, n })
            }
            _ => Err(Error::Usage(format!("axis spec `{s}` is not lo:hi:n"))),
        }
    }

    pub fn nodes(&self) -> Vec<Rational> {
        if self.n == 1 {
            return vec![self.lo.clone()];
        }
        let step = (&self.hi - &self.lo) / Rational::from_integer((self.n - 1).into());
        (0..self.n)
            .map(|i| &self.lo + &step * Rational::from_integer(i.into()))
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanGrid {
    pub mu1: AxisSpec,
    pub mu2: AxisSpec,
    /// rho1 = rho2 axis; enables stable counts.
    pub rho: Option<AxisSpec>,
}

/// Classifier names accepted by the scanner.
pub const SCAN_CLASSIFIERS: [&str; 6] = ["R1", "mu1mu2_minus_1", "S3", "H3", "A1", "A2"];

pub fn default_classifiers(with_rho: bool) -> Vec<String> {
    let n = if with_rho { 6 } else { 3 };
    SCAN_CLASSIFIERS[..n].iter().map(|s| s.to_string()).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanRecord {
    #[serde(with = "rational::serde_rat")]
    pub mu1: Rational,
    #[serde(with = "rational::serde_rat")]
    pub mu2: Rational,
    #[serde(with = "rational::serde_opt_rat", default)]
    pub rho: Option<Rational>,
    pub eq_count: u32,
    pub stable_count: Option<u32>,
    pub signs: BTreeMap<String, i8>,
    pub degenerate: bool,
}

fn classifier_sign(name: &str, at: &Point) -> Result<i8> {
    match name {
        "mu1mu2_minus_1" => model::mu1mu2_minus_1().sign_at(at),
        "R1" | "S3" | "A1" | "A2" => classifier(name).sign_at(at),
        "H3" => {
            if !at.contains_key(&Var::Rho1) {
                return Err(Error::Usage("H3 needs a rho axis".into()));
            }
            classifier("H3").sign_at(at)
        }
        _ => Err(Error::Usage(format!("unknown classifier `{name}`"))),
    }
}

fn scan_node(mu1: &Rational, mu2: &Rational, rho: Option<&Rational>, classifiers: &[String]) -> Result<ScanRecord> {
    let mut at = mu_point(mu1, mu2);
    if let Some(r) = rho {
        at.insert(Var::Rho1, r.clone());
        at.insert(Var::Rho2, r.clone());
    }
    let mut signs = BTreeMap::new();
    for c in classifiers {
        signs.insert(c.clone(), classifier_sign(c, &at)?);
    }
    let mut degenerate = signs.values().any(|s| *s == 0);
    let eq_count = count_positive_equilibria(mu1, mu2)?.count;
    let mut stable_count = None;
    if let Some(r) = rho {
        if !degenerate {
            let rep = classify_stability(&KopelParams::new(mu1.clone(), mu2.clone(), r.clone(), r.clone())?)?;
            degenerate = rep.any_degenerate;
            if !degenerate {
                stable_count = Some(rep.stable_count);
            }
        }
    }
    Ok(ScanRecord {
        mu1: mu1.clone(),
        mu2: mu2.clone(),
        rho: rho.cloned(),
        eq_count,
        stable_count,
        signs,
        degenerate,
    })
}

/// Evaluates every grid node (in parallel) and returns records in grid
/// order: mu1 outermost, then mu2, then rho.
pub fn scan_region(grid: &ScanGrid, classifiers: &[String]) -> Result<Vec<ScanRecord>> {
    for c in classifiers {
        if !SCAN_CLASSIFIERS.contains(&c.as_str()) {
            return Err(Error::Usage(format!("unknown classifier `{c}`")));
        }
        if c == "H3" && grid.rho.is_none() {
            return Err(Error::Usage("H3 needs a rho axis".into()));
        }
    }
    let rhos: Vec<Option<Rational>> = match &grid.rho {
        Some(ax) => {
            let ns = ax.nodes();
            for r in &ns {
                if r <= &Rational::zero() || r > &Rational::one() {
                    return Err(Error::Usage(format!("rho node {r} outside (0, 1]")));
                }
            }
            ns.into_iter().map(Some).collect()
        }
        None => vec![None],
    };
    let mut nodes = Vec::new();
    for a in grid.mu1.nodes() {
        for b in grid.mu2.nodes() {
            if a <= Rational::zero() || b <= Rational::zero() {
                return Err(Error::Usage(format!("mu node ({a}, {b}) not positive")));
            }
            for r in &rhos {
                nodes.push((a.clone(), b.clone(), r.clone()));
            }
        }
    }
    nodes
        .par_iter()
        .map(|(a, b, r)| scan_node(a, b, r.as_ref(), classifiers))
        .collect()
}

const DIGITS: usize = 12;

fn sign_str(s: i8) -> &'static str {
    match s {
        1 => "+",
        -1 => "-",
        _ => "0",
    }
}

/// CSV with decimal columns followed by exact `p/q` columns.
pub fn write_scan_csv<W: Write>(records: &[ScanRecord], classifiers: &[String], with_rho: bool, mut w: W) -> Result<()> {
    let mut header = vec!["mu1".to_string(), "mu2".to_string()];
    if with_rho {
        header.push("rho".into());
    }
    header.push("eq_count".into());
    header.push("stable_count".into());
    header.extend(classifiers.iter().map(|c| format!("sign_{c}")));
    header.push("degenerate".into());
    header.push("mu1_exact".into());
    header.push("mu2_exact".into());
    if with_rho {
        header.push("rho_exact".into());
    }
    writeln!(w, "{}", header.join(","))?;
    for r in records {
        let mut row = vec![rational::to_decimal(&r.mu1, DIGITS), rational::to_decimal(&r.mu2, DIGITS)];
        let rho = r.rho.as_ref();
        if with_rho {
            row.push(rho.as_ref().map(|v| rational::to_decimal(v, DIGITS)).unwrap_or_default());
        }
        row.push(r.eq_count.to_string());
        row.push(r.stable_count.map(|c| c.to_string()).unwrap_or_default());
        row.extend(classifiers.iter().map(|c| sign_str(r.signs[c]).to_string()));
        row.push(r.degenerate.to_string());
        row.push(r.mu1.to_string());
        row.push(r.mu2.to_string());
        if with_rho {
            row.push(rho.map(|v| v.to_string()).unwrap_or_default());
        }
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn classifier_region_counts() {
        assert_eq!(count_positive_equilibria(&int(4), &int(4)).unwrap().count, 3);
        assert_eq!(count_positive_equilibria(&int(2), &int(2)).unwrap().count, 1);
        let c = count_positive_equilibria(&int(3), &int(3)).unwrap();
        assert_eq!(c.count, 1);
        assert!(c.label.contains("multiplicity 3"));
        assert_eq!(count_positive_equilibria(&int(1), &rat(1, 2)).unwrap().count, 0);
    }

    #[test]
    fn triple_root_is_exact() {
        let e = enumerate_equilibria(&int(3), &int(3), false).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].exact, Some((rat(2, 3), rat(2, 3))));
        assert_eq!(e[0].multiplicity, 3);
    }

    #[test]
    fn two_stable_at_thirteen_quarters() {
        let p = KopelParams::new(rat(13, 4), rat(13, 4), int(1), int(1)).unwrap();
        assert_eq!(classify_stability(&p).unwrap().stable_count, 2);
    }

    #[test]
    fn sample_table_matches() {
        let r = verify_sample_table().unwrap();
        assert_eq!(r.rows.len(), 39);
        assert!(r.all_match);
    }

    #[test]
    fn axis_parsing() {
        let a = AxisSpec::parse("1:2:3").unwrap();
        assert_eq!(a.nodes(), vec![int(1), rat(3, 2), int(2)]);
        assert_eq!(AxisSpec::parse("5/2").unwrap().nodes(), vec![rat(5, 2)]);
        assert!(AxisSpec::parse("1:2").is_err());
        assert!(AxisSpec::parse("1:2:0").is_err());
    }
}
