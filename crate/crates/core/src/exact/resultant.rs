use super::mpoly::{MPoly, Point};
use super::var::Var;
use crate::error::{Error, Result};

/// Determinant by fraction-free (Bareiss) elimination over the polynomial ring.
pub fn bareiss_det(mut m: Vec<Vec<MPoly>>) -> MPoly {
    let n = m.len();
    if n == 0 {
        return MPoly::one();
    }
    let mut negate = false;
    let mut prev = MPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return MPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step is an exact division");
            }
            m[i][k] = MPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Sylvester matrix of `a` and `b` with respect to `v`.
pub fn sylvester_matrix(a: &MPoly, b: &MPoly, v: Var) -> Vec<Vec<MPoly>> {
    let ca = a.coeffs_in(v);
    let cb = b.coeffs_in(v);
    let (m, n) = (ca.len() - 1, cb.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![MPoly::zero(); size];
        for (k, c) in ca.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![MPoly::zero(); size];
        for (k, c) in cb.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    rows
}

/// Resultant of `a` and `b` with respect to `v`.
pub fn resultant(a: &MPoly, b: &MPoly, v: Var) -> Result<MPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::Domain("resultant of two zero polynomials".into()));
    }
    if a.is_zero() || b.is_zero() {
        return Ok(MPoly::zero());
    }
    let (m, n) = (a.degree(v), b.degree(v));
    if m == 0 {
        return Ok(a.pow(n));
    }
    if n == 0 {
        return Ok(b.pow(m));
    }
    Ok(bareiss_det(sylvester_matrix(a, b, v)))
}

/// Resultant of `a` with its derivative in `v` (no normalization).
pub fn discriminant(a: &MPoly, v: Var) -> Result<MPoly> {
    if a.degree(v) < 2 {
        return Err(Error::Domain(format!("discriminant needs degree >= 2 in {v}")));
    }
    resultant(a, &a.derivative(v), v)
}

/// Folds `resultant` over an elimination chain.
pub fn chain_resultant(p: &MPoly, chain: &[(MPoly, Var)]) -> Result<MPoly> {
    let mut running = p.clone();
    for (q, v) in chain {
        if !running.contains_var(*v) {
            return Err(Error::Usage(format!("{v} does not occur in the running polynomial")));
        }
        running = resultant(&running, q, *v)?;
    }
    Ok(running)
}

/// Raises `Degenerate` when a specialization kills a leading coefficient in `v`.
pub fn check_leading_coeffs(a: &MPoly, b: &MPoly, v: Var, at: &Point) -> Result<()> {
    for (name, p) in [("first", a), ("second", b)] {
        if p.degree(v) > 0 && p.leading_coeff_in(v).specialize(at).is_zero() {
            return Err(Error::Degenerate(format!(
                "leading coefficient in {v} of the {name} operand vanishes at the given point"
            )));
        }
    }
    Ok(())
}

/// Resultant of the specializations, after the leading-coefficient check.
pub fn specialized_resultant(a: &MPoly, b: &MPoly, v: Var, at: &Point) -> Result<MPoly> {
    check_leading_coeffs(a, b, v, at)?;
    resultant(&a.specialize(at), &b.specialize(at), v)
}
