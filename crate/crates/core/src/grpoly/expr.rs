//! Expressions for relations and coproducts.
//!
//! Grammar (`#` separates tensor legs and binds loosest inside a term):
//!
//! ```text
//! sum    := ['-'] term (('+' | '-') term)*
//! term   := prod ('#' prod)*
//! prod   := power ('*' power)*
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' sum ')'
//! ```

use std::sync::Arc;

use super::poly::GradedPoly;
use super::ring::{is_identifier, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Box<Expr>, u32),
    Tensor(Vec<Expr>),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: msg.into(),
        })
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

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match s.parse() {
            Ok(v) => Ok(v),
            Err(_) => self.err("integer literal out of range"),
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let first_neg = self.eat(b'-');
        let t = self.term()?;
        terms.push(if first_neg { Expr::Neg(Box::new(t)) } else { t });
        loop {
            if self.eat(b'+') {
                terms.push(self.term()?);
            } else if self.eat(b'-') {
                terms.push(Expr::Neg(Box::new(self.term()?)));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Add(terms)
        })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut legs = vec![self.prod()?];
        while self.eat(b'#') {
            legs.push(self.prod()?);
        }
        Ok(if legs.len() == 1 {
            legs.pop().unwrap()
        } else {
            Expr::Tensor(legs)
        })
    }

    fn prod(&mut self) -> Result<Expr> {
        let mut f = vec![self.power()?];
        while self.eat(b'*') {
            f.push(self.power()?);
        }
        Ok(if f.len() == 1 {
            f.pop().unwrap()
        } else {
            Expr::Mul(f)
        })
    }

    fn power(&mut self) -> Result<Expr> {
        let a = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            let Ok(e) = u32::try_from(e) else {
                return self.err("exponent out of range");
            };
            return Ok(Expr::Pow(Box::new(a), e));
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                debug_assert!(is_identifier(s));
                Ok(Expr::Var(s.to_string()))
            }
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser {
            src: src.as_bytes(),
            pos: 0,
        };
        let e = p.sum()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(e)
    }

    /// Variable names in order of first appearance.
    pub fn identifiers(&self) -> Vec<String> {
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Int(_) => {}
                Expr::Var(v) => {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                Expr::Neg(e) | Expr::Pow(e, _) => walk(e, out),
                Expr::Add(v) | Expr::Mul(v) | Expr::Tensor(v) => v.iter().for_each(|e| walk(e, out)),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Number of tensor legs; 1 for an ordinary expression.
    pub fn arity(&self) -> Result<usize> {
        match self {
            Expr::Int(_) | Expr::Var(_) => Ok(1),
            Expr::Neg(e) | Expr::Pow(e, _) => e.arity(),
            Expr::Tensor(l) => {
                for e in l {
                    if e.arity()? != 1 {
                        return Err(Error::Invalid("nested tensor product".into()));
                    }
                }
                Ok(l.len())
            }
            Expr::Add(v) | Expr::Mul(v) => {
                let mut a = 1;
                for e in v {
                    let b = e.arity()?;
                    if b != 1 && a != 1 && a != b {
                        return Err(Error::Invalid("tensor legs do not match".into()));
                    }
                    a = a.max(b);
                }
                Ok(a)
            }
        }
    }

    /// Evaluates with `resolve(name, leg)` giving each variable occurrence.
    /// Outside any tensor the leg is `None`.
    pub fn eval_with<F>(&self, ring: &Arc<Ring>, resolve: &F) -> Result<GradedPoly>
    where
        F: Fn(&str, Option<usize>) -> Result<GradedPoly>,
    {
        self.eval_leg(ring, resolve, None)
    }

    fn eval_leg<F>(&self, ring: &Arc<Ring>, resolve: &F, leg: Option<usize>) -> Result<GradedPoly>
    where
        F: Fn(&str, Option<usize>) -> Result<GradedPoly>,
    {
        Ok(match self {
            Expr::Int(c) => GradedPoly::constant(ring, *c),
            Expr::Var(name) => resolve(name, leg)?,
            Expr::Neg(e) => -&e.eval_leg(ring, resolve, leg)?,
            Expr::Add(v) => {
                let mut acc = GradedPoly::zero(ring);
                for e in v {
                    acc = acc.checked_add(&e.eval_leg(ring, resolve, leg)?)?;
                }
                acc
            }
            Expr::Mul(v) => {
                let mut acc = GradedPoly::one(ring);
                for e in v {
                    acc = acc.checked_mul(&e.eval_leg(ring, resolve, leg)?)?;
                }
                acc
            }
            Expr::Pow(e, k) => e.eval_leg(ring, resolve, leg)?.pow(*k),
            Expr::Tensor(l) => {
                if leg.is_some() {
                    return Err(Error::Invalid("nested tensor product".into()));
                }
                let mut acc = GradedPoly::one(ring);
                for (i, e) in l.iter().enumerate() {
                    acc = acc.checked_mul(&e.eval_leg(ring, resolve, Some(i))?)?;
                }
                acc
            }
        })
    }

    /// Evaluates an ordinary (tensor-free) expression by variable name.
    pub fn eval(&self, ring: &Arc<Ring>) -> Result<GradedPoly> {
        self.eval_with(ring, &|name, leg| {
            if leg.is_some() {
                return Err(Error::Invalid("unexpected tensor product".into()));
            }
            GradedPoly::var_named(ring, name)
        })
    }
}

/// Parses and evaluates an ordinary expression in `ring`.
pub fn parse_poly(ring: &Arc<Ring>, src: &str) -> Result<GradedPoly> {
    Expr::parse(src)?.eval(ring)
}

#[cfg(test)]
mod tests {
    use super::super::degree::InternalDegree;
    use super::super::ring::Variable;
    use super::*;

    #[test]
    fn parses_coproduct() {
        let e = Expr::parse("x2#1 + x1^2#x1 + 1#x2").unwrap();
        assert_eq!(e.arity().unwrap(), 2);
        match e {
            Expr::Add(t) => assert_eq!(t.len(), 3),
            _ => panic!("expected a sum"),
        }
    }

    #[test]
    fn evaluates_polynomial() {
        let r = Ring::new(
            3,
            vec![
                Variable::new("x", InternalDegree::constant(2)),
                Variable::new("y", InternalDegree::constant(2)),
            ],
        )
        .unwrap();
        let f = parse_poly(&r, "-(x + y)^2 + 2*x*y").unwrap();
        assert_eq!(f.to_string(), "-x^2 - y^2");
        assert_eq!(parse_poly(&r, "x^3 - x*x^2").unwrap(), GradedPoly::zero(&r));
    }

    #[test]
    fn reports_offsets() {
        match Expr::parse("x + * y") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{:?}", other),
        }
        assert!(Expr::parse("x)").is_err());
        let r = Ring::new(2, vec![Variable::new("x", InternalDegree::ZERO)]).unwrap();
        assert!(matches!(
            parse_poly(&r, "z"),
            Err(Error::UnknownIdentifier(_))
        ));
    }
}
