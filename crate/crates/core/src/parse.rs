//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' uint]
//! atom   := int ['/' uint] | var | '(' poly ')'
//! ```
//!
//! This accepts everything the canonical printer emits plus the usual
//! hand-written forms such as `(s-1)^2` or `-t-t^2`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::tpoly::{TPoly, VarSet};

pub fn parse_poly(text: &str, vars: VarSet, field: Field) -> Result<TPoly> {
    parse_poly_at(text, vars, field, 1, 1)
}

/// Parses with error positions reported relative to (`line`, `col`).
pub fn parse_poly_at(text: &str, vars: VarSet, field: Field, line: usize, col: usize) -> Result<TPoly> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, vars, field, line, col };
    let poly = p.poly()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(poly)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    vars: VarSet,
    field: Field,
    line: usize,
    col: usize,
}

impl Parser {
    fn err(&self, msg: String) -> Error {
        Error::Parse { line: self.line, col: self.col + self.pos, msg }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn poly(&mut self) -> Result<TPoly> {
        let mut acc = TPoly::zero(self.vars, self.field);
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            self.eat('+');
        }
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<TPoly> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<TPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.uint()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large".into()))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an unsigned integer".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<TPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let p = self.poly()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`".into()));
                }
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let den = if self.eat('/') { self.uint()? } else { BigInt::from(1) };
                if den == BigInt::from(0) {
                    return Err(self.err("zero denominator".into()));
                }
                let q = BigRational::new(num, den);
                let c = self.field.from_rational(&q).map_err(|e| self.err(e.to_string()))?;
                Ok(TPoly::constant(self.vars, c))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.vars.names().iter().position(|v| *v == name) {
                    Some(i) => Ok(TPoly::var(self.vars, self.field, i)),
                    None => {
                        self.pos = start;
                        Err(self.err(format!("unknown variable `{name}`")))
                    }
                }
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of input".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_column_of_bad_token() {
        let err = parse_poly_at("s*t + *v", VarSet::Param, Field::Rationals, 3, 5).unwrap_err();
        match err {
            Error::Parse { line, col, .. } => assert_eq!((line, col), (3, 11)),
            e => panic!("{e}"),
        }
        assert!(parse_poly("T1 + T5", VarSet::T, Field::Rationals).is_err());
        assert!(parse_poly("(s+t", VarSet::Param, Field::Rationals).is_err());
        assert!(parse_poly("3/0*s", VarSet::Param, Field::Rationals).is_err());
    }

    #[test]
    fn affine_style_expressions() {
        let p = parse_poly("(t+t^2)*(s-1)^2", VarSet::Param, Field::Rationals).unwrap();
        let q = parse_poly("s^2*t^2 - 2*s*t^2 + t^2 + s^2*t - 2*s*t + t", VarSet::Param, Field::Rationals)
            .unwrap();
        assert_eq!(p, q);
        let r = parse_poly("-t-t^2", VarSet::Param, Field::Rationals).unwrap();
        assert_eq!(r.to_string(), "-t^2 - t");
    }
}
