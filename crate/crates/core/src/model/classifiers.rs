//! Named parameter-space polynomials.
//!
//! R2, R3 and H3 are stored as text and checked against resultant
//! computations in the test suite.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::exact::mpoly::point;
use crate::exact::rational::int;
use crate::exact::{MPoly, Var};

pub const R2_TEXT: &str = "mu1^3*mu2^3*rho1^3*rho2^3 - 4*mu1^3*mu2^2*rho1^3*rho2^3 \
     - 4*mu1^2*mu2^3*rho1^3*rho2^3 + 17*mu1^2*mu2^2*rho1^3*rho2^3 \
     - 2*mu1^2*mu2^2*rho1^3*rho2^2 - 2*mu1^2*mu2^2*rho1^2*rho2^3 \
     + 4*mu1^2*mu2^2*rho1^2*rho2^2 + 4*mu1^2*mu2*rho1^3*rho2^3 \
     + 8*mu1^2*mu2*rho1^3*rho2^2 + 8*mu1^2*mu2*rho1^2*rho2^3 - 16*mu1^2*mu2*rho1^2*rho2^2 \
     + 4*mu1*mu2^2*rho1^3*rho2^3 + 8*mu1*mu2^2*rho1^3*rho2^2 + 8*mu1*mu2^2*rho1^2*rho2^3 \
     - 16*mu1*mu2^2*rho1^2*rho2^2 - 45*mu1*mu2*rho1^3*rho2^3 - 36*mu1*mu2*rho1^3*rho2^2 \
     - 4*mu1*mu2*rho1^3*rho2 - 36*mu1*mu2*rho1^2*rho2^3 + 64*mu1*mu2*rho1^2*rho2^2 \
     + 16*mu1*mu2*rho1^2*rho2 - 4*mu1*mu2*rho1*rho2^3 + 16*mu1*mu2*rho1*rho2^2 \
     - 16*mu1*mu2*rho1*rho2 + 27*rho1^3*rho2^3 + 54*rho1^3*rho2^2 + 36*rho1^3*rho2 \
     + 8*rho1^3 + 54*rho1^2*rho2^3 - 36*rho1^2*rho2^2 - 120*rho1^2*rho2 - 48*rho1^2 \
     + 36*rho1*rho2^3 - 120*rho1*rho2^2 + 48*rho1*rho2 + 96*rho1 + 8*rho2^3 - 48*rho2^2 \
     + 96*rho2 - 64";

pub const R3_TEXT: &str = "mu1^3*mu2^3*rho1^3*rho2^3 - 4*mu1^3*mu2^2*rho1^3*rho2^3 \
     - 4*mu1^2*mu2^3*rho1^3*rho2^3 + 17*mu1^2*mu2^2*rho1^3*rho2^3 \
     - mu1^2*mu2^2*rho1^3*rho2^2 - mu1^2*mu2^2*rho1^2*rho2^3 + 4*mu1^2*mu2*rho1^3*rho2^3 \
     + 4*mu1^2*mu2*rho1^3*rho2^2 + 4*mu1^2*mu2*rho1^2*rho2^3 + 4*mu1*mu2^2*rho1^3*rho2^3 \
     + 4*mu1*mu2^2*rho1^3*rho2^2 + 4*mu1*mu2^2*rho1^2*rho2^3 - 45*mu1*mu2*rho1^3*rho2^3 \
     - 18*mu1*mu2*rho1^3*rho2^2 - mu1*mu2*rho1^3*rho2 - 18*mu1*mu2*rho1^2*rho2^3 \
     - 2*mu1*mu2*rho1^2*rho2^2 - mu1*mu2*rho1*rho2^3 + 27*rho1^3*rho2^3 \
     + 27*rho1^3*rho2^2 + 9*rho1^3*rho2 + rho1^3 + 27*rho1^2*rho2^3 + 18*rho1^2*rho2^2 \
     + 3*rho1^2*rho2 + 9*rho1*rho2^3 + 3*rho1*rho2^2 + rho2^3";

pub const H3_TEXT: &str = "mu1^3*mu2^3*rho1^3 - 4*mu1^3*mu2^2*rho1^3 - 4*mu1^2*mu2^3*rho1^3 \
     + 17*mu1^2*mu2^2*rho1^3 - 2*mu1^2*mu2^2*rho1^2 + 4*mu1^2*mu2*rho1^3 \
     + 8*mu1^2*mu2*rho1^2 + 4*mu1*mu2^2*rho1^3 + 8*mu1*mu2^2*rho1^2 - 45*mu1*mu2*rho1^3 \
     - 36*mu1*mu2*rho1^2 - 4*mu1*mu2*rho1 + 27*rho1^3 + 54*rho1^2 + 36*rho1 + 8";

pub const R1_TEXT: &str = "mu1^2*mu2^2 - 4*mu1^2*mu2 - 4*mu1*mu2^2 + 18*mu1*mu2 - 27";

pub const S3_TEXT: &str = "mu1^3*mu2^3 - 4*mu1^3*mu2^2 - 4*mu1^2*mu2^3 + 15*mu1^2*mu2^2 \
     + 12*mu1^2*mu2 + 12*mu1*mu2^2 - 85*mu1*mu2 + 125";

pub const A1_TEXT: &str = "mu1*mu2 - 15";

pub const A2_TEXT: &str = "mu1^2*mu2^2 - 4*mu1^2*mu2 - 5*mu1*mu2^2 + 21*mu1*mu2 + 11*mu2 - 60";

fn parse(s: &str) -> MPoly {
    s.parse().expect("embedded polynomial parses")
}

/// The classifier family, keyed by name: R1, R2, R3, S2, S3, H3, A1, A2.
///
/// S2 is R2 at rho1 = rho2 = 1. H3 is kept in the normalization
/// R3|_{rho2=rho1} = rho1^3 * H3, which has the same sign for rho1 > 0.
pub fn classifier_polys() -> &'static BTreeMap<&'static str, MPoly> {
    static CELL: OnceLock<BTreeMap<&'static str, MPoly>> = OnceLock::new();
    CELL.get_or_init(|| {
        let r2 = parse(R2_TEXT);
        let s2 = r2.specialize(&point(&[(Var::Rho1, int(1)), (Var::Rho2, int(1))]));
        let mut m = BTreeMap::new();
        m.insert("R1", parse(R1_TEXT));
        m.insert("R2", r2);
        m.insert("R3", parse(R3_TEXT));
        m.insert("S2", s2);
        m.insert("S3", parse(S3_TEXT));
        m.insert("H3", parse(H3_TEXT));
        m.insert("A1", parse(A1_TEXT));
        m.insert("A2", parse(A2_TEXT));
        m
    })
}

pub fn classifier(name: &str) -> &'static MPoly {
    &classifier_polys()[name]
}

/// mu1*mu2 - 1
pub fn mu1mu2_minus_1() -> MPoly {
    parse("mu1*mu2 - 1")
}
