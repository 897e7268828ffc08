//! Canonical text form of [`MultiPoly`].
//!
//! Terms are printed leading-first in grlex order as `coef*m1^a*m2^b*m3^c*t^d`,
//! omitting zero exponents and writing `^1` as the bare variable. The zero
//! polynomial prints as `0`. The parser accepts this grammar plus optional
//! whitespace, explicit `^0`/`^1` exponents, repeated variables and an omitted
//! unit coefficient.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::monomial::{Monomial, Var};
use super::poly::MultiPoly;
use super::{AlgebraError, Rational};

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if a.is_integer() {
                write!(f, "{}", a.numer())?;
            } else {
                write!(f, "{}/{}", a.numer(), a.denom())?;
            }
            if !m.is_one() {
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn digits(&mut self) -> Result<&'a str, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits"))
    }

    fn ident(&mut self) -> Result<Var, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("");
        Var::from_name(name).ok_or_else(|| self.err(&format!("unknown variable `{name}`")))
    }

    fn factor(&mut self, mono: &mut Monomial) -> Result<(), AlgebraError> {
        let v = self.ident()?;
        let e: u32 = if self.eat(b'^') {
            self.digits()?
                .parse()
                .map_err(|_| self.err("exponent out of range"))?
        } else {
            1
        };
        mono.0[v.index()] += e;
        Ok(())
    }

    fn term(&mut self) -> Result<(Rational, Monomial), AlgebraError> {
        let mut mono = Monomial::ONE;
        let coef = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits()?.parse().expect("digits parse");
                let d: BigInt = if self.eat(b'/') {
                    self.digits()?.parse().expect("digits parse")
                } else {
                    BigInt::one()
                };
                if d == BigInt::from(0) {
                    return Err(self.err("zero denominator"));
                }
                if !self.eat(b'*') {
                    return Ok((Rational::new(n, d), mono));
                }
                Rational::new(n, d)
            }
            Some(_) => Rational::one(),
            None => return Err(self.err("unexpected end of input")),
        };
        self.factor(&mut mono)?;
        while self.eat(b'*') {
            self.factor(&mut mono)?;
        }
        Ok((coef, mono))
    }
}

impl FromStr for MultiPoly {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lx = Lexer {
            s: s.as_bytes(),
            pos: 0,
        };
        let mut terms = Vec::new();
        let mut sign = if lx.eat(b'-') { -1 } else { 1 };
        loop {
            let (c, m) = lx.term()?;
            terms.push((m, if sign < 0 { -c } else { c }));
            if lx.eat(b'+') {
                sign = 1;
            } else if lx.eat(b'-') {
                sign = -1;
            } else {
                break;
            }
        }
        if lx.peek().is_some() {
            return Err(lx.err("trailing input"));
        }
        Ok(MultiPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_leading_term_first() {
        let p = MultiPoly::mu(1).pow(2) - MultiPoly::t().scale_int(3) + MultiPoly::int(5);
        assert_eq!(p.to_string(), "1*m1^2 - 3*t + 5");
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }

    #[test]
    fn parses_loose_forms() {
        let p: MultiPoly = "m1*m1 - 3/6*t^1*m2^0 + 2".parse().unwrap();
        assert_eq!(p.to_string(), "1*m1^2 - 1/2*t + 2");
        let z: MultiPoly = "0".parse().unwrap();
        assert!(z.is_zero());
        let q: MultiPoly = "-2*m1^3*t^2".parse().unwrap();
        assert_eq!(q.to_string(), "-2*m1^3*t^2");
    }

    #[test]
    fn rejects_garbage() {
        assert!("m4".parse::<MultiPoly>().is_err());
        assert!("1/0*t".parse::<MultiPoly>().is_err());
        assert!("t +".parse::<MultiPoly>().is_err());
        assert!("t t".parse::<MultiPoly>().is_err());
    }
}
