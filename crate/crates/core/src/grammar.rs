//! Text format for polynomials and operators.
//!
//! ```text
//! expr   := [+|-] term ((+|-) term)*
//! term   := factor ((* | / | <juxtaposition>) factor)*
//! factor := atom [^ [-] INT]
//! atom   := INT | IDENT | ( expr )
//! ```
//!
//! `nu<i>` and `k` are parameters, `d<i>` is the derivative in the i-th
//! variable, and any other identifier must be one of the supplied variables.
//! Products compose operators left to right, so `d1 x1` means `x1 d1 + 1`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{Exponent, LaurentPoly, Param, ParamScalar, Rational, Vars};
use crate::weyl::WeylOp;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(src[start..i].parse().expect("digits"))));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            other => return Err(Error::Parse { pos: start, msg: format!("unexpected character `{other}`") }),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<WeylOp> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => self.pos += 1,
            Some(Tok::Minus) => {
                negate = true;
                self.pos += 1;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<WeylOp> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.offset();
                    let d = self.factor()?;
                    let inv = invert(&d).ok_or(Error::Parse { pos: at, msg: "divisor must be a nonzero scalar or monomial".into() })?;
                    acc = &acc * &inv;
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<WeylOp> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let e: u32 = match self.peek() {
            Some(Tok::Int(v)) => match u32::try_from(v) {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            },
            _ => return self.err("expected integer exponent"),
        };
        let at = self.offset();
        self.pos += 1;
        if negative {
            let inv = invert(&base).ok_or(Error::Parse { pos: at, msg: "negative power of a non-invertible factor".into() })?;
            Ok(inv.pow(e))
        } else {
            Ok(base.pow(e))
        }
    }

    fn atom(&mut self) -> Result<WeylOp> {
        let vars = self.vars;
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(WeylOp::scalar(vars, ParamScalar::from_rational(Rational::from_integer(v))))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = vars.position(&name) {
                    return Ok(WeylOp::x(vars, i));
                }
                if let Some(p) = Param::parse(&name) {
                    return Ok(WeylOp::scalar(vars, ParamScalar::param(p)));
                }
                if let Some(i) = name.strip_prefix('d').and_then(|s| s.parse::<usize>().ok()) {
                    if (1..=vars.len()).contains(&i) && !name[1..].starts_with('0') {
                        return Ok(WeylOp::d(vars, i - 1));
                    }
                }
                Err(Error::UnknownVariable(name))
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Inverse of a single derivative-free term with a nonzero coefficient.
fn invert(op: &WeylOp) -> Option<WeylOp> {
    if op.len() != 1 {
        return None;
    }
    let (x, d, c) = op.terms().next()?;
    if d.degree() != 0 {
        return None;
    }
    let inv = c.recip().ok()?;
    let neg = Exponent(x.0.iter().map(|e| -e).collect());
    Some(WeylOp::term(op.vars(), neg, d.clone(), inv))
}

/// Parses an operator over the given variables.
pub fn parse_op(src: &str, vars: &Vars) -> Result<WeylOp> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty input".into() });
    }
    let mut p = Parser { toks, pos: 0, end: src.len(), vars };
    let op = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(op)
}

/// Parses a Laurent polynomial over the given variables; derivatives are rejected.
pub fn parse_poly(src: &str, vars: &Vars) -> Result<LaurentPoly> {
    let op = parse_op(src, vars)?;
    let mut terms = Vec::with_capacity(op.len());
    for (x, d, c) in op.terms() {
        if d.degree() != 0 {
            return Err(Error::Parse { pos: 0, msg: "derivatives are not allowed in a polynomial".into() });
        }
        terms.push((x.clone(), c.clone()));
    }
    Ok(LaurentPoly::from_terms(vars, terms))
}

/// Parses a parameter-only expression.
pub fn parse_scalar(src: &str) -> Result<ParamScalar> {
    let vars = Vars::new(Vec::<String>::new());
    let p = parse_poly(src, &vars)?;
    Ok(p.coeff(&Exponent::zero(0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vars {
        Vars::indexed("x", 2)
    }

    #[test]
    fn parses_example_term() {
        let p = parse_poly("3/2 * nu1^2 * x1^2 x2^-1", &vars()).unwrap();
        assert_eq!(p.to_string(), "3/2 * nu1^2 * x1^2 x2^-1");
    }

    #[test]
    fn juxtaposition_composes() {
        let v = vars();
        let op = parse_op("d1 x1", &v).unwrap();
        assert_eq!(op, &(&WeylOp::x(&v, 0) * &WeylOp::d(&v, 0)) + &WeylOp::identity(&v));
    }

    #[test]
    fn operator_round_trip() {
        let v = vars();
        let op = parse_op("x1^2 d1 + 2 nu1 x1 - (x1 - x2)^2 d1 d2 + 1/(nu1 + nu2) * x2^-2", &v).unwrap();
        let printed = op.to_string();
        assert_eq!(parse_op(&printed, &v).unwrap(), op);
    }

    #[test]
    fn rational_coefficients_round_trip() {
        let v = vars();
        let p = parse_poly("(nu1 nu2 - 1)/(2 nu2 + 3) * x1 - 7/3 * k * x2 + nu1/nu2", &v).unwrap();
        assert_eq!(parse_poly(&p.to_string(), &v).unwrap(), p);
    }

    #[test]
    fn rejects_bad_input() {
        let v = vars();
        assert!(matches!(parse_poly("x3", &v), Err(Error::UnknownVariable(_))));
        assert!(matches!(parse_poly("x1 +", &v), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x1 / (x1 + x2)", &v), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("d1", &v), Err(Error::Parse { .. })));
        assert!(matches!(parse_op("x1 $", &v), Err(Error::Parse { pos: 3, .. })));
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("nu1 (nu1 - 1)").unwrap().to_string(), "nu1^2 - nu1");
    }
}
