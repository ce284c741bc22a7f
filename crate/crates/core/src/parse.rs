//! Text grammar for polynomials, the wire format of every command.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' INTEGER)?
//! atom   := INTEGER | IDENT | '(' expr ')'
//! ```
//!
//! The right operand of `/` must evaluate to a nonzero rational constant.
//! Printing a polynomial with `Display` produces text this parser accepts.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::{Poly, Rat};

#[derive(Debug, Clone, PartialEq)]
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

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((start, Tok::Int(s.parse().expect("digits"))));
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            other => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    at: usize,
    end: usize,
    vars: Option<&'a [String]>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    let pos = self.pos();
                    let d = self.unary()?;
                    let c = d.as_constant().ok_or(Error::NonConstantDivisor { pos })?;
                    if c.is_zero() {
                        return Err(Error::DivisionByZero { pos });
                    }
                    acc = acc.scale(&(Rat::from_integer(1.into()) / c));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let pos = self.pos();
        let Some(Tok::Int(n)) = self.peek().cloned() else {
            return Err(Error::BadExponent { pos });
        };
        self.at += 1;
        let e: u32 = n.try_into().map_err(|_| Error::BadExponent { pos })?;
        if self.peek() == Some(&Tok::Caret) {
            return Err(Error::Syntax {
                pos: self.pos(),
                msg: "chained exponent; use parentheses".into(),
            });
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Poly> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(Poly::constant(Rat::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if let Some(vs) = self.vars {
                    if !vs.contains(&name) {
                        return Err(Error::Syntax {
                            pos,
                            msg: format!("unknown variable {name}"),
                        });
                    }
                }
                Ok(Poly::var(&name))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::Syntax {
                        pos: self.pos(),
                        msg: "expected ')'".into(),
                    });
                }
                self.at += 1;
                Ok(e)
            }
            Some(t) => Err(Error::Syntax {
                pos,
                msg: format!("unexpected token {t:?}"),
            }),
            None => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

fn first_appearance(toks: &[(usize, Tok)]) -> Vec<String> {
    let mut seen = Vec::new();
    for (_, t) in toks {
        if let Tok::Ident(n) = t {
            if !seen.contains(n) {
                seen.push(n.clone());
            }
        }
    }
    seen
}

/// Parses and expands a polynomial.
///
/// With `variables` given, the result is expressed over exactly that list
/// and any other identifier is an error. Otherwise the variables are those
/// occurring in the text, in order of first appearance.
pub fn parse_poly(text: &str, variables: Option<&[String]>) -> Result<Poly> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        at: 0,
        end: text.chars().count(),
        vars: variables,
    };
    let poly = p.expr()?;
    if p.at != toks.len() {
        return Err(Error::Syntax {
            pos: p.pos(),
            msg: "trailing input".into(),
        });
    }
    let vars = match variables {
        Some(v) => v.to_vec(),
        None => first_appearance(&toks),
    };
    Ok(poly.with_vars(&vars))
}

/// Parses with variables inferred; convenience for literals in code and tests.
pub fn poly(text: &str) -> Result<Poly> {
    parse_poly(text, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    #[test]
    fn direct_literal() {
        let p = poly("u^2+2*u*v").unwrap();
        assert_eq!(p.vars(), ["u", "v"]);
        let terms: Vec<_> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        assert_eq!(
            terms,
            vec![
                (Monomial(vec![2, 0]), Rat::from_integer(1.into())),
                (Monomial(vec![1, 1]), Rat::from_integer(2.into())),
            ]
        );
    }

    #[test]
    fn binomial_expansion() {
        assert_eq!(
            poly("(u+v)^2").unwrap(),
            poly("u^2 + 2*u*v + v^2").unwrap()
        );
    }

    #[test]
    fn literal_with_parameter() {
        let p = poly("x0*x5 - x1^2 - a*x2^2").unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.vars(), ["x0", "x5", "x1", "a", "x2"]);
    }

    #[test]
    fn rational_literals_and_unary_minus() {
        let p = poly("-3/4*u^2 + (1/2)*(v - -v)").unwrap();
        assert_eq!(p.to_string(), "-3/4*u^2 + v");
        assert_eq!(poly("-x^2").unwrap(), -&poly("x^2").unwrap());
    }

    #[test]
    fn error_positions() {
        assert_eq!(
            poly("u + * v").unwrap_err(),
            Error::Syntax {
                pos: 4,
                msg: "unexpected token Star".into()
            }
        );
        assert_eq!(poly("u/0").unwrap_err(), Error::DivisionByZero { pos: 2 });
        assert_eq!(poly("u/(1-1)").unwrap_err(), Error::DivisionByZero { pos: 2 });
        assert_eq!(poly("1/u").unwrap_err(), Error::NonConstantDivisor { pos: 2 });
        assert_eq!(poly("u^-1").unwrap_err(), Error::BadExponent { pos: 2 });
        assert_eq!(poly("u^v").unwrap_err(), Error::BadExponent { pos: 2 });
        assert!(matches!(poly("u^1.5"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(poly("(u"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(poly("u v"), Err(Error::Syntax { .. })));
        assert!(matches!(poly(""), Err(Error::Syntax { pos: 0, .. })));
    }

    #[test]
    fn explicit_variable_list() {
        let vars: Vec<String> = ["w", "v", "u"].iter().map(|s| s.to_string()).collect();
        let p = parse_poly("u*v", Some(&vars)).unwrap();
        assert_eq!(p.vars(), vars.as_slice());
        assert!(parse_poly("u*z", Some(&vars)).is_err());
    }
}
