//! Text syntax for polynomials.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' integer)?
//! atom  := number | identifier | '(' expr ')'
//! ```
//!
//! Identifiers are the observables `A0 A1 B0 B1`, `I` for the identity, and
//! whatever named constants the coefficient field provides. Division is only
//! allowed by a nonzero scalar.

use super::NcPoly;
use crate::error::{Error, Result};
use crate::field::{parse_decimal, Field};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        if ch.is_ascii_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            out.push((start, Tok::Num(src[start..i].to_string())));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^()".contains(ch) {
            out.push((i, Tok::Op(ch)));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character {ch:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr<F: Field>(&mut self) -> Result<NcPoly<F>> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<F: Field>(&mut self) -> Result<NcPoly<F>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let at = self.offset();
                let d = self.unary::<F>()?;
                let inv = d
                    .as_constant()
                    .and_then(|c| c.try_inv())
                    .ok_or(Error::Parse {
                        pos: at,
                        msg: "division is only allowed by a nonzero scalar".into(),
                    })?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<F: Field>(&mut self) -> Result<NcPoly<F>> {
        if self.eat('-') {
            Ok(-self.unary::<F>()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power<F: Field>(&mut self) -> Result<NcPoly<F>> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let n: u32 = match self.peek() {
            Some(Tok::Num(s)) => match s.parse() {
                Ok(n) if n <= 64 => n,
                _ => return self.err("exponent must be an integer in 0..=64"),
            },
            _ => return self.err("expected integer exponent"),
        };
        self.pos += 1;
        let mut acc = NcPoly::one();
        for _ in 0..n {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn atom<F: Field>(&mut self) -> Result<NcPoly<F>> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        match tok {
            Tok::Num(s) => {
                let Some(r) = parse_decimal(&s) else {
                    return self.err(format!("bad number {s:?}"));
                };
                self.pos += 1;
                Ok(NcPoly::constant(F::from_rational(&r)))
            }
            Tok::Ident(name) => {
                let p = match name.as_str() {
                    "A0" => NcPoly::a(0),
                    "A1" => NcPoly::a(1),
                    "B0" => NcPoly::b(0),
                    "B1" => NcPoly::b(1),
                    "I" => NcPoly::one(),
                    other => match F::symbol(other) {
                        Some(c) => NcPoly::constant(c),
                        None => return self.err(format!("unknown identifier {other:?}")),
                    },
                };
                self.pos += 1;
                Ok(p)
            }
            Tok::Op('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Tok::Op(c) => self.err(format!("unexpected {c:?}")),
        }
    }
}

/// Parse a polynomial over the field `F`.
pub fn parse_poly<F: Field>(src: &str) -> Result<NcPoly<F>> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: src.len(),
    };
    let out = p.expr()?;
    if p.pos != toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parse a scalar expression (no observables).
pub fn parse_scalar<F: Field>(src: &str) -> Result<F> {
    parse_poly::<F>(src)?.as_constant().ok_or(Error::Parse {
        pos: 0,
        msg: "expected a scalar expression".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Scalar, Surd};

    #[test]
    fn parses_products_and_scalars() {
        let p: NcPoly<Scalar> = parse_poly("(-2*u)*A0*B1 + A0*A0").unwrap();
        let q = &NcPoly::one()
            + &(&NcPoly::a(0) * &NcPoly::b(1)).scale(&(&Scalar::u() * &Scalar::from_i64(-2)));
        assert_eq!(p, q);
        let c: Scalar = parse_scalar("1 - 2*st^2").unwrap();
        assert_eq!(c, Scalar::c());
        let r: Surd = parse_scalar("sqrt6/2").unwrap();
        assert_eq!(&r * &r, Surd::ratio(3, 2));
        let z: f64 = parse_scalar("1.5e-3").unwrap();
        assert_eq!(z, 1.5e-3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_poly::<Scalar>("A0/B0").is_err());
        assert!(parse_poly::<Scalar>("A2").is_err());
        assert!(parse_poly::<Scalar>("(A0").is_err());
        assert!(parse_poly::<Scalar>("A0 A1").is_err());
        assert!(parse_poly::<Scalar>("1/(c - c)").is_err());
        assert!(parse_poly::<Surd>("st").is_err());
    }

    #[test]
    fn round_trips_printer() {
        let p: NcPoly<Scalar> =
            parse_poly("c*u*A0 - A1*B1 + (st^2 + ct*u)/3*A0*A1*B0 - u*B1*B0 + 2").unwrap();
        let q: NcPoly<Scalar> = parse_poly(&p.to_string()).unwrap();
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
    }
}
