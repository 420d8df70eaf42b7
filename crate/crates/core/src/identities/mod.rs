//! Re-derivation of every displayed polynomial identity.

pub mod displays;

use serde::Serialize;

use crate::error::Result;
use crate::exact::mpoly::point;
use crate::exact::rational::{int, rat};
use crate::exact::{chain_resultant, discriminant, resultant, MPoly, Var};
use crate::model::{
    self, classifier, discriminant_sequence, equilibrium_chain, gram_char_poly, jury_quantities,
    reciprocal, snapback_system, symmetric_map, SymParams,
};

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
    pub all_hold: bool,
}

fn p(s: &str) -> MPoly {
    s.parse().expect("embedded polynomial parses")
}

struct Acc(Vec<IdentityCheck>);

impl Acc {
    fn eq(&mut self, name: &str, lhs: &MPoly, rhs: &MPoly) {
        self.0.push(IdentityCheck { name: name.into(), holds: lhs == rhs });
    }
}

/// Equilibrium-chain resultants and discriminants.
pub fn equilibrium_identities() -> Result<Vec<IdentityCheck>> {
    let (_, g1) = equilibrium_chain();
    let x = Var::X;
    let scale = p("mu1^3*mu2^6");
    let r1 = classifier("R1");
    let mut a = Acc(vec![]);
    a.eq("res(G1, 1-x, x) = 1", &resultant(&g1, &p("1 - x"), x)?, &MPoly::one());
    a.eq("res(G1, x, x) = mu1*mu2 - 1", &resultant(&g1, &p("x"), x)?, &p("mu1*mu2 - 1"));
    a.eq("res(G1, G1', x) = -mu1^3*mu2^6*R1", &discriminant(&g1, x)?, &-(&scale * r1));
    a.eq(
        "res(G1, G1'', x) = -8*mu1^3*mu2^6*(2*mu1*mu2^2 - 9*mu1*mu2 + 27)",
        &resultant(&g1, &g1.derivative(x).derivative(x), x)?,
        &p(displays::RES_G1_G1PP),
    );
    Ok(a.0)
}

/// Jury-quantity chain resultants and the specializations S2, S3, H3.
pub fn stability_identities() -> Result<Vec<IdentityCheck>> {
    let (g2, g1) = equilibrium_chain();
    let chain = [(g2, Var::Y), (g1, Var::X)];
    let j = jury_quantities(&model::generic_map());
    let scale = p("mu1^3*mu2^6");
    let (r1, r2, r3) = (classifier("R1"), classifier("R2"), classifier("R3"));
    let mut a = Acc(vec![]);
    a.eq(
        "res(CD1, [G2, G1]) = -rho1^3*rho2^3*mu1^3*mu2^6*(mu1*mu2 - 1)*R1",
        &chain_resultant(&j.cd1, &chain)?,
        &-(p("rho1^3*rho2^3*mu1^3*mu2^6*(mu1*mu2 - 1)") * r1),
    );
    a.eq("res(CD2, [G2, G1]) = -mu1^3*mu2^6*R2", &chain_resultant(&j.cd2, &chain)?, &-(&scale * r2));
    a.eq("res(CD3, [G2, G1]) = mu1^3*mu2^6*R3", &chain_resultant(&j.cd3, &chain)?, &(&scale * r3));
    let ones = point(&[(Var::Rho1, int(1)), (Var::Rho2, int(1))]);
    a.eq("S2 = R2|rho1=rho2=1 = (mu1*mu2 - 1)*R1", classifier("S2"), &(p("mu1*mu2 - 1") * r1));
    a.eq("S3 = R3|rho1=rho2=1", classifier("S3"), &r3.specialize(&ones));
    a.eq(
        "R3|rho2=rho1 = rho1^3*H3",
        &r3.substitute(Var::Rho2, &MPoly::var(Var::Rho1)),
        &(p("rho1^3") * classifier("H3")),
    );
    Ok(a.0)
}

/// Gram polynomial, its reciprocal and the zero discriminant sequence.
pub fn sequence_identities() -> Result<Vec<IdentityCheck>> {
    let d = gram_char_poly(&symmetric_map());
    let seq = discriminant_sequence(&d)?;
    let lam = MPoly::var(Var::Lambda);
    let lam2p1 = &lam * &lam + MPoly::one();
    let e0 = point(&[(Var::X, int(0)), (Var::Y, int(0)), (Var::Lambda, int(1))]);
    let mut a = Acc(vec![]);
    a.eq("D(lambda) matches display", &d, &p(displays::D));
    a.eq("D*(lambda) matches display", &reciprocal(&d), &p(displays::DSTAR));
    a.eq(
        "T2 = t22*(lambda^2 + 1) + t21*lambda",
        &seq.t[2],
        &(p(displays::T22) * &lam2p1 + p(displays::T21) * &lam),
    );
    a.eq("T1 = t11*(lambda + 1)", &seq.t[1], &(p(displays::T11) * (&lam + &MPoly::one())));
    a.eq("T0 = t00", &seq.t[0], &p(displays::T00));
    a.eq("T2(1)|E0 factored form", &seq.t[2].specialize(&e0), &p(displays::T2_AT_1_E0));
    a.eq("T1(1)|E0 factored form", &seq.t[1].specialize(&e0), &p(displays::T1_AT_1_E0));
    a.eq("T0(1)|E0 factored form", &seq.t[0].specialize(&e0), &p(displays::T0_AT_1_E0));
    let sp = SymParams::new(int(59), rat(5, 32))?;
    let c = model::repelling_polys(&model::build_sym_map(&sp))?;
    a.eq("C2 at (5/32, 59) matches display", &c[2], &p(displays::C2));
    a.eq("C1 at (5/32, 59) matches display", &c[1], &p(displays::C1));
    a.eq("C0 at (5/32, 59) matches display", &c[0], &p(displays::C0));
    Ok(a.0)
}

/// The two-step return system, symbolic and at both parameter points.
pub fn snapback_identities() -> Result<Vec<IdentityCheck>> {
    let origin = (int(0), int(0));
    let mut a = Acc(vec![]);
    let sym = snapback_system(&symmetric_map(), 2, &origin)?;
    a.eq("P1 symbolic matches display", &sym.equalities[0], &p(displays::P1_SYM));
    for (rho, mu, p1, p2, tag) in [
        (rat(175, 256), int(2), displays::P1_A, displays::P2_A, "(175/256, 2)"),
        (rat(5, 32), int(59), displays::P1_B, displays::P2_B, "(5/32, 59)"),
    ] {
        let sp = SymParams::new(mu, rho)?;
        let s = snapback_system(&model::build_sym_map(&sp), 2, &origin)?;
        a.eq(&format!("P1 at {tag} matches display"), &s.equalities[0], &p(p1));
        a.eq(&format!("P2 at {tag} matches display"), &s.equalities[1], &p(p2));
    }
    Ok(a.0)
}

pub fn run_all() -> Result<IdentityReport> {
    let mut checks = equilibrium_identities()?;
    checks.extend(stability_identities()?);
    checks.extend(sequence_identities()?);
    checks.extend(snapback_identities()?);
    let all_hold = checks.iter().all(|c| c.holds);
    Ok(IdentityReport { checks, all_hold })
}
