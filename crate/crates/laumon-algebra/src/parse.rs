//! Reading the canonical text form back.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::ParseError;
use crate::expr::LaurentExpr;
use crate::var::{Monomial, Var, MAX_T};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(ParseError::Unexpected {
                found: c,
                offset: self.pos - c.len_utf8(),
            }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }

    fn unexpected(&mut self) -> ParseError {
        match self.peek() {
            Some(c) => ParseError::Unexpected {
                found: c,
                offset: self.pos,
            },
            None => ParseError::UnexpectedEnd,
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(self.unexpected());
        }
        digits.parse().map_err(|_| ParseError::BadNumber(digits.to_string()))
    }

    fn small_int(&mut self) -> Result<i32, ParseError> {
        let neg = self.peek() == Some('-');
        if neg {
            self.bump();
        }
        let digits = self.take_while(|c| c.is_ascii_digit());
        let k: i32 = digits.parse().map_err(|_| ParseError::BadNumber(digits.to_string()))?;
        Ok(if neg { -k } else { k })
    }

    fn variable(&mut self) -> Result<Var, ParseError> {
        let name = self.take_while(|c| c.is_ascii_alphanumeric());
        match name {
            "u" => Ok(Var::U),
            "v" => Ok(Var::V),
            "z" => Ok(Var::Z),
            _ => name
                .strip_prefix('t')
                .and_then(|i| i.parse::<usize>().ok())
                .filter(|i| (1..=MAX_T).contains(i))
                .map(Var::t)
                .ok_or_else(|| ParseError::UnknownVariable(name.to_string())),
        }
    }

    /// `[coef] ("*" var ["^" int])*` without sign.
    fn term(&mut self) -> Result<(Monomial, BigRational), ParseError> {
        let mut coeff = BigRational::one();
        let mut mono = Monomial::ONE;
        let mut need_factor = true;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = self.integer()?;
            let mut den = BigInt::one();
            let save = self.pos;
            if self.peek() == Some('/') {
                self.bump();
                if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    den = self.integer()?;
                    if den.is_zero() {
                        return Err(ParseError::ZeroDenominator);
                    }
                } else {
                    self.pos = save;
                }
            }
            coeff = BigRational::new(num, den);
            need_factor = false;
        }
        loop {
            if need_factor {
                need_factor = false;
            } else if self.peek() == Some('*') {
                self.bump();
            } else {
                break;
            }
            let v = self.variable()?;
            let e = if self.peek() == Some('^') {
                self.bump();
                self.small_int()?
            } else {
                1
            };
            mono = mono * Monomial::pow(v, e);
        }
        Ok((mono, coeff))
    }

    fn poly(&mut self) -> Result<LaurentExpr, ParseError> {
        let mut terms = Vec::new();
        let mut sign = BigRational::one();
        if self.peek() == Some('-') {
            self.bump();
            sign = -sign;
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, c * &sign));
            match self.peek() {
                Some('+') => sign = BigRational::one(),
                Some('-') => sign = -BigRational::one(),
                _ => break,
            }
            self.bump();
        }
        Ok(LaurentExpr::from_rational_terms(&terms))
    }

    fn side(&mut self) -> Result<LaurentExpr, ParseError> {
        if self.peek() == Some('(') {
            self.bump();
            let p = self.poly()?;
            self.expect(')')?;
            Ok(p)
        } else {
            self.poly()
        }
    }

    fn expr(&mut self) -> Result<LaurentExpr, ParseError> {
        let num = self.side()?;
        if self.peek() != Some('/') {
            return Ok(num);
        }
        self.bump();
        let den = self.side()?;
        num.checked_div(&den).map_err(|_| ParseError::ZeroDenominator)
    }
}

impl FromStr for LaurentExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor { src: s, pos: 0 };
        let out = cur.expr()?;
        if cur.peek().is_some() {
            return Err(cur.unexpected());
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for text in [
            "0",
            "1",
            "-3/2*t1^2*v^-1*z",
            "v + 1",
            "(-t2^-1*v^-1)/(v^2 - 1)",
            "(t1^2 - u*v)/(t3^2*v^2 + 2)",
        ] {
            let e: LaurentExpr = text.parse().unwrap();
            assert_eq!(e.to_string(), text);
        }
    }

    #[test]
    fn reduces_on_read() {
        let e: LaurentExpr = "(v^2 - 1)/(v - 1)".parse().unwrap();
        assert_eq!(e.to_string(), "v + 1");
    }

    #[test]
    fn rejects_garbage() {
        assert!("t10".parse::<LaurentExpr>().is_err());
        assert!("(v)/(0)".parse::<LaurentExpr>().is_err());
        assert!("v +".parse::<LaurentExpr>().is_err());
        assert!("1/0".parse::<LaurentExpr>().is_err());
    }
}
