//! Recursive-descent parser for polynomial text.
//!
//! Grammar: `+ - * / ^` and parentheses over rational literals and
//! variable names. Division is only allowed by nonzero constants.

use num_traits::ToPrimitive;

use super::mpoly::MPoly;
use super::rational::{parse_rational, Rational};
use super::var::Var;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '.') {
                i += 1;
            }
            // scientific suffix such as 1e-9
            if i < cs.len() && (cs[i] == 'e' || cs[i] == 'E') {
                let mut j = i + 1;
                if j < cs.len() && (cs[j] == '+' || cs[j] == '-') {
                    j += 1;
                }
                if j < cs.len() && cs[j].is_ascii_digit() {
                    while j < cs.len() && cs[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let lit: String = cs[st..i].iter().collect();
            out.push(Tok::Num(parse_rational(&lit)?));
        } else if c.is_alphabetic() {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            let name: String = cs[st..i].iter().filter(|&&c| c != '_').collect();
            out.push(Tok::Ident(name));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` at {i}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            if c == '*' {
                acc = acc * rhs;
            } else {
                let k = rhs
                    .constant_value()
                    .filter(|k| !num_traits::Zero::is_zero(k))
                    .ok_or_else(|| Error::Parse("division by non-constant or zero".into()))?;
                acc = acc.scale(&k.recip());
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let e = match self.toks.get(self.pos) {
                Some(Tok::Num(r)) if r.is_integer() => r
                    .to_integer()
                    .to_u32()
                    .ok_or_else(|| Error::Parse("exponent out of range".into()))?,
                _ => return Err(Error::Parse("exponent must be a non-negative integer".into())),
            };
            self.pos += 1;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match t {
            Some(Tok::Num(r)) => Ok(MPoly::constant(r)),
            Some(Tok::Ident(name)) => Var::from_name(&name)
                .map(MPoly::var)
                .map_err(|_| Error::Parse(format!("unknown variable `{name}`"))),
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

pub fn parse_poly(s: &str) -> Result<MPoly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn greek_and_subscripts() {
        let a = parse_poly("μ_1*ρ2 + λ^2").unwrap();
        let b = parse_poly("mu1*rho2 + lambda^2").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_poly("0.4").unwrap(), MPoly::constant(rat(2, 5)));
        assert_eq!(parse_poly("1e-2*x").unwrap(), parse_poly("x/100").unwrap());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("x +").is_err());
        assert!(parse_poly("x / y").is_err());
        assert!(parse_poly("q").is_err());
        assert!(parse_poly("x^-1").is_err());
        assert!(parse_poly("(x").is_err());
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_poly("-x^2").unwrap(), -parse_poly("x*x").unwrap());
        assert_eq!(parse_poly("2*(x+1)^2").unwrap(), parse_poly("2*x^2+4*x+2").unwrap());
    }
}
