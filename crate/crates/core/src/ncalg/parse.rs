//! Text grammar for polynomials.
//!
//! ```text
//! expr     := ['-'|'+'] term { ('+'|'-') term }
//! term     := factor { '*' factor }
//! factor   := atom [ '^' uint ]
//! atom     := '(' expr ')' | rational | 'h' | 'e' '(' srational ')'
//!           | 'sqrt' '(' rational ')' | generator
//! rational := uint [ '/' uint ]
//! srational:= ['-'] uint [ '/' uint ]
//! ```
//!
//! Generators are the single-letter names of the algebra (`x`, `y` or
//! `a`..`d`), `h` is the deformation parameter, `e(k)` is the exponential
//! `e^{k h}` for rational `k`, and multiplication is always explicit.
//! Errors carry the byte position of the offending token.

use super::{AlgebraDescriptor, NCPoly};
use crate::error::{Error, Result};
use crate::qarith::hexp_rational;
use crate::scalar::{HSeries, RadicalScalar, Rational};
use num::BigInt;

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'0'..=b'9' => {
                let start = i;
                let mut v: u64 = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((bytes[i] - b'0') as u64))
                        .ok_or(Error::Parse {
                            position: start,
                            message: "integer literal out of range".to_string(),
                        })?;
                    i += 1;
                }
                toks.push((Tok::Int(v), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            b'+' | b'-' | b'*' | b'^' | b'/' | b'(' | b')' => {
                toks.push((Tok::Sym(b as char), i));
                i += 1;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(Error::Parse {
                    position: i,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    alg: &'a AlgebraDescriptor,
    order: usize,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|&(_, p)| p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.here(),
            message: message.into(),
        })
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(Tok::Sym(s)) if *s == c => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected `{c}`")),
        }
    }

    fn uint(&mut self) -> Result<u64> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => self.err("expected an integer"),
        }
    }

    /// `uint [ '/' uint ]`, with an optional leading sign when `signed`.
    fn rational(&mut self, signed: bool) -> Result<Rational> {
        let mut neg = false;
        if signed {
            if let Some(Tok::Sym(s @ ('+' | '-'))) = self.peek() {
                neg = *s == '-';
                self.pos += 1;
            }
        }
        let num = self.uint()?;
        let mut den = 1u64;
        if let Some(Tok::Sym('/')) = self.peek() {
            self.pos += 1;
            let at = self.here();
            den = self.uint()?;
            if den == 0 {
                return Err(Error::Parse {
                    position: at,
                    message: "zero denominator".to_string(),
                });
            }
        }
        let mut r = Rational::new(BigInt::from(num), BigInt::from(den));
        if neg {
            r = -r;
        }
        Ok(r)
    }

    fn expr(&mut self) -> Result<NCPoly> {
        let mut neg = false;
        if let Some(Tok::Sym(s @ ('+' | '-'))) = self.peek() {
            neg = *s == '-';
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        while let Some(Tok::Sym(s @ ('+' | '-'))) = self.peek() {
            let sub = *s == '-';
            self.pos += 1;
            let t = self.term()?;
            acc = if sub { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<NCPoly> {
        let mut acc = self.factor()?;
        while let Some(Tok::Sym('*')) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<NCPoly> {
        let base = self.atom()?;
        if let Some(Tok::Sym('^')) = self.peek() {
            self.pos += 1;
            let at = self.here();
            let e = self.uint()?;
            let e = u32::try_from(e).map_err(|_| Error::Parse {
                position: at,
                message: "exponent out of range".to_string(),
            })?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<NCPoly> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Sym('(')) => {
                let inner = self.expr()?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            Some(Tok::Int(_)) => {
                self.pos -= 1;
                let r = self.rational(false)?;
                Ok(self.constant(HSeries::from_rational(r, self.order)))
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "h" => Ok(self.constant(HSeries::monomial(1, RadicalScalar::one(), self.order))),
                "e" => {
                    self.expect_sym('(')?;
                    let k = self.rational(true)?;
                    self.expect_sym(')')?;
                    Ok(self.constant(hexp_rational(&k, self.order)))
                }
                "sqrt" => {
                    self.expect_sym('(')?;
                    let in_at = self.here();
                    let r = self.rational(false)?;
                    self.expect_sym(')')?;
                    let c = RadicalScalar::sqrt_rational(&r).map_err(|e| Error::Parse {
                        position: in_at,
                        message: e.to_string(),
                    })?;
                    Ok(self.constant(HSeries::constant(c, self.order)))
                }
                _ => {
                    let gens = self.alg.kind.generators();
                    match gens.iter().position(|g| *g == name) {
                        Some(idx) => NCPoly::generator(self.alg, idx, self.order),
                        None => Err(Error::Parse {
                            position: at,
                            message: format!(
                                "unknown identifier `{name}` (generators here are {})",
                                gens.join(", ")
                            ),
                        }),
                    }
                }
            },
            _ => Err(Error::Parse {
                position: at,
                message: "expected a value".to_string(),
            }),
        }
    }

    fn constant(&self, c: HSeries) -> NCPoly {
        let mut p = NCPoly::zero(self.alg, self.order);
        p.add_term(super::Mono::unit(), c);
        p
    }
}

/// Parse a polynomial in the grammar above into normal form.
pub fn parse_poly(alg: &AlgebraDescriptor, text: &str, order: usize) -> Result<NCPoly> {
    let toks = lex(text)?;
    let mut p = Parser {
        alg,
        order,
        toks,
        pos: 0,
        end: text.len(),
    };
    if p.peek().is_none() {
        return p.err("empty input");
    }
    let poly = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::super::{qdet, AlgebraDescriptor, AlgebraKind, Mono};
    use super::*;
    use crate::qarith::hexp_int;

    fn m2() -> AlgebraDescriptor {
        AlgebraDescriptor::new(AlgebraKind::M2)
    }

    fn plane() -> AlgebraDescriptor {
        AlgebraDescriptor::new(AlgebraKind::Plane)
    }

    #[test]
    fn parses_quantum_determinant() {
        let p = parse_poly(&m2(), "a*d - e(1)*b*c", 6).unwrap();
        assert_eq!(p, qdet(&m2(), 6).unwrap());
    }

    #[test]
    fn products_are_reduced_to_normal_form() {
        let p = parse_poly(&plane(), "y*x", 6).unwrap();
        assert_eq!(p.coeff(&Mono([1, 1, 0, 0])), hexp_int(-1, 6));
        let q = parse_poly(&plane(), "e(-1)*x*y", 6).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn scalars_signs_and_powers() {
        let p = parse_poly(&plane(), "-(1/2 + h)*x^2 + 3*y", 5).unwrap();
        let mut half_plus_h =
            HSeries::from_rational(Rational::new(BigInt::from(-1), BigInt::from(2)), 5);
        half_plus_h.set_coeff(1, RadicalScalar::from_int(-1));
        assert_eq!(p.coeff(&Mono([2, 0, 0, 0])), half_plus_h);
        assert_eq!(p.coeff(&Mono([0, 1, 0, 0])), HSeries::from_int(3, 5));
        let s = parse_poly(&plane(), "sqrt(8)", 4).unwrap();
        assert_eq!(
            s.coeff(&Mono::unit()),
            HSeries::constant(
                RadicalScalar::radical(Rational::from(BigInt::from(2)), 2),
                4
            )
        );
    }

    #[test]
    fn display_output_parses_back() {
        let order = 5;
        for text in ["a*d + (-2*h - 1/3*h^3)*b*c", "a*d - 2*h*b*c", "3/4", "h^2"] {
            let p = parse_poly(&m2(), text, order).unwrap();
            let q = parse_poly(&m2(), &format!("{p}"), order).unwrap();
            assert_eq!(p, q, "{text}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        match parse_poly(&plane(), "x + * y", 4) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_poly(&plane(), "x * z", 4) {
            Err(Error::Parse { position, message }) => {
                assert_eq!(position, 4);
                assert!(message.contains("x, y"), "{message}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_poly(&plane(), "1/0", 4) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_poly(&plane(), "", 4).is_err());
        assert!(parse_poly(&plane(), "x y", 4).is_err());
        assert!(parse_poly(&plane(), "x^", 4).is_err());
    }
}
