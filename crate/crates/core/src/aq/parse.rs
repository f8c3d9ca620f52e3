//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr     := term { ("+" | "-") term }
//! term     := factor { "*" factor }
//! factor   := "-" factor | atom [ "^" sint ]
//! atom     := "z" | "s" | "q" | rational | "(" expr ")"
//! rational := uint [ "/" uint ]
//! ```
//!
//! `s` is `σ` and `q` is the ambient parameter. Factor order is kept, so
//! `s*z` normalizes to `q*z*s`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scalars::{self, Scalar};

use super::AqElement;

/// Parses an element of `A_q`.
pub fn parse(text: &str) -> Result<AqElement> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let x = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(x)
}

/// Parses an element of `A = K[z, z⁻¹]`: an expression free of `s`.
pub fn parse_laurent(text: &str) -> Result<LaurentPoly> {
    let x = parse(text)?;
    match x.sigma_hi() {
        None => Ok(LaurentPoly::zero()),
        Some(0) if x.sigma_lo() == Some(0) => Ok(x.coeff(0)),
        _ => Err(Error::Syntax {
            pos: 0,
            msg: "expected a Laurent polynomial in z".into(),
        }),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<AqElement> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<AqElement> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<AqElement> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        let start = self.pos;
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = self.sint()?;
        if e == 0 {
            return Err(self.err("exponents must be nonzero"));
        }
        if e > 0 {
            return Ok(base.pow(e as u32));
        }
        match base.unit_inverse() {
            Some(inv) => Ok(inv.pow(e.unsigned_abs() as u32)),
            None => Err(Error::Syntax {
                pos: start,
                msg: "negative power of a non-unit".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<AqElement> {
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                Ok(AqElement::z())
            }
            Some(b's') => {
                self.pos += 1;
                Ok(AqElement::sigma())
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(AqElement::constant(scalars::q().value().clone()))
            }
            Some(b'(') => {
                self.pos += 1;
                let x = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(x)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let den = if self.eat(b'/') {
                    let at = self.pos;
                    let d = self.uint()?;
                    if d == BigInt::from(0) {
                        return Err(Error::Syntax {
                            pos: at,
                            msg: "zero denominator".into(),
                        });
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                Ok(AqElement::constant(Scalar::from_bigints(num, den)?))
            }
            Some(_) => Err(self.err("expected z, s, q, a number or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn sint(&mut self) -> Result<i64> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let at = self.pos;
        let v: i64 = self.uint()?.try_into().map_err(|_| Error::Syntax {
            pos: at,
            msg: "exponent out of range".into(),
        })?;
        if v > 10_000 {
            return Err(Error::Syntax {
                pos: at,
                msg: "exponent out of range".into(),
            });
        }
        Ok(if neg { -v } else { v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(parse("s*z").unwrap(), parse("q*z*s").unwrap());
        assert_eq!(parse("s*z").unwrap().to_string(), "2*z*s");
        let x = parse("z^-1 + 2").unwrap();
        assert_eq!(x.to_string(), "z^-1 + 2");
        let w = parse("(z+1)*s - (q*z+1)").unwrap();
        assert_eq!(w.to_string(), "-1 - 2*z + s + z*s");
    }

    #[test]
    fn print_round_trip() {
        for src in [
            "0",
            "1",
            "-1/2*z^-3*s^-2 + 7",
            "s^2 - 3*s + 2",
            "-(z+s)^3",
            "q^-2*s^-1*z",
        ] {
            let x = parse(src).unwrap();
            assert_eq!(parse(&x.to_string()).unwrap(), x, "{src}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        match parse("z + * 2") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("z^0"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse("(z+1)^-1"),
            Err(Error::Syntax { pos: 0, .. })
        ));
        assert!(matches!(parse("(z"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("z z"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("1/0"), Err(Error::Syntax { .. })));
        assert!(parse_laurent("z+s").is_err());
    }
}
