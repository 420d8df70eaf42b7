use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const NVARS: usize = 16;

/// The indeterminates every polynomial in the crate is built from.
///
/// The declaration order is the global variable order used by the
/// monomial ordering; it never changes, so two polynomials always live in
/// the same ring.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    X,
    Y,
    X0,
    Y0,
    Lambda,
    Mu,
    Mu1,
    Mu2,
    Rho,
    Rho1,
    Rho2,
    A,
    B,
    C,
    Z,
    T,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::X,
        Var::Y,
        Var::X0,
        Var::Y0,
        Var::Lambda,
        Var::Mu,
        Var::Mu1,
        Var::Mu2,
        Var::Rho,
        Var::Rho1,
        Var::Rho2,
        Var::A,
        Var::B,
        Var::C,
        Var::Z,
        Var::T,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::X0 => "x0",
            Var::Y0 => "y0",
            Var::Lambda => "lambda",
            Var::Mu => "mu",
            Var::Mu1 => "mu1",
            Var::Mu2 => "mu2",
            Var::Rho => "rho",
            Var::Rho1 => "rho1",
            Var::Rho2 => "rho2",
            Var::A => "a",
            Var::B => "b",
            Var::C => "c",
            Var::Z => "z",
            Var::T => "t",
        }
    }

    /// Accepts ASCII names and the Greek spellings (`λ`, `μ1`, `ρ`, ...).
    pub fn from_name(s: &str) -> Result<Var> {
        let ascii = s
            .replace('λ', "lambda")
            .replace('μ', "mu")
            .replace('ρ', "rho");
        Var::ALL
            .iter()
            .copied()
            .find(|v| v.name() == ascii)
            .ok_or_else(|| Error::Usage(format!("unknown variable `{s}`")))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
