//! The shared literal grammar: polynomials and rational functions in `t`, and
//! fractional-exponent series with an optional `@prec` suffix.
//!
//! Positions are byte offsets into the parsed text.

use std::sync::Arc;

use num_rational::Ratio;

use crate::base_arith::gf::Field;
use crate::base_arith::poly::FqPoly;
use crate::base_arith::rat::ThetaRat;
use crate::base_arith::scalar::Scalar;
use crate::cinf_series::{Cinf, Ctx};

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Int(i64),
    Sym(char),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Ratio<i64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub node: Node,
    pub pos: usize,
}

/// A parsed literal: the expression and the `@` suffix, if any.
#[derive(Clone, Debug, PartialEq)]
pub struct Literal {
    pub expr: Expr,
    pub prec: Option<(Ratio<i64>, usize)>,
}

/// Byte offset and message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub pos: usize,
    pub msg: String,
}

type PResult<T> = std::result::Result<T, SyntaxError>;

fn err<T>(pos: usize, msg: impl Into<String>) -> PResult<T> {
    Err(SyntaxError { pos, msg: msg.into() })
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }
    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }
    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }
    fn expect(&mut self, c: u8) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.i, format!("expected '{}'", c as char))
        }
    }
    fn integer(&mut self) -> PResult<i64> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return err(start, "expected an integer");
        }
        std::str::from_utf8(&self.s[start..self.i])
            .unwrap()
            .parse()
            .or_else(|_| err(start, "integer out of range"))
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.i;
            if self.eat(b'+') {
                let rhs = self.term()?;
                lhs = Expr { node: Node::Add(Box::new(lhs), Box::new(rhs)), pos };
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                lhs = Expr { node: Node::Sub(Box::new(lhs), Box::new(rhs)), pos };
            } else {
                return Ok(lhs);
            }
        }
    }
    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let pos = self.i;
            if self.eat(b'*') {
                let rhs = self.unary()?;
                lhs = Expr { node: Node::Mul(Box::new(lhs), Box::new(rhs)), pos };
            } else if self.eat(b'/') {
                let rhs = self.unary()?;
                lhs = Expr { node: Node::Div(Box::new(lhs), Box::new(rhs)), pos };
            } else {
                return Ok(lhs);
            }
        }
    }
    fn unary(&mut self) -> PResult<Expr> {
        self.skip_ws();
        let pos = self.i;
        if self.eat(b'-') {
            let inner = self.unary()?;
            return Ok(Expr { node: Node::Neg(Box::new(inner)), pos });
        }
        self.power()
    }
    fn power(&mut self) -> PResult<Expr> {
        let base = self.atom()?;
        let pos = self.i;
        if self.eat(b'^') {
            let e = self.exponent()?;
            return Ok(Expr { node: Node::Pow(Box::new(base), e), pos });
        }
        Ok(base)
    }
    /// `3`, `-3`, `(-3/2)`.
    fn exponent(&mut self) -> PResult<Ratio<i64>> {
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            let a = self.integer()?;
            let pos = self.i;
            let b = if self.eat(b'/') { self.integer()? } else { 1 };
            if b == 0 {
                return err(pos, "zero denominator in exponent");
            }
            self.expect(b')')?;
            let r = Ratio::new(a, b);
            return Ok(if neg { -r } else { r });
        }
        let neg = self.eat(b'-');
        let a = self.integer()?;
        Ok(Ratio::from_integer(if neg { -a } else { a }))
    }
    fn atom(&mut self) -> PResult<Expr> {
        let pos = match self.peek() {
            None => return err(self.i, "unexpected end of input"),
            Some(_) => self.i,
        };
        let c = self.s[pos];
        if c.is_ascii_digit() {
            let n = self.integer()?;
            return Ok(Expr { node: Node::Int(n), pos });
        }
        if c == b'(' {
            self.i += 1;
            let inner = self.expr()?;
            self.expect(b')')?;
            return Ok(inner);
        }
        if matches!(c, b't' | b'T' | b'g' | b'w' | b'U') {
            self.i += 1;
            if self.i < self.s.len() && self.s[self.i].is_ascii_alphanumeric() {
                return err(pos, "unknown identifier");
            }
            return Ok(Expr { node: Node::Sym(c as char), pos });
        }
        err(pos, format!("unexpected character '{}'", c as char))
    }
}

/// Parse a full literal; `@` is accepted only when `allow_prec`.
pub fn parse(text: &str, allow_prec: bool) -> PResult<Literal> {
    let mut p = Parser { s: text.as_bytes(), i: 0 };
    let expr = p.expr()?;
    let mut prec = None;
    let at = p.i;
    if p.eat(b'@') {
        if !allow_prec {
            return err(at, "a precision suffix is not allowed here");
        }
        let pos = p.i;
        prec = Some((p.exponent()?, pos));
    }
    if p.peek().is_some() {
        return err(p.i, "trailing input");
    }
    Ok(Literal { expr, prec })
}

/// An arithmetic domain the grammar can be evaluated in.
pub trait Domain {
    type V: Clone;
    fn int(&self, n: i64) -> Self::V;
    fn sym(&self, c: char) -> Option<Self::V>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn sub(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn div(&self, a: &Self::V, b: &Self::V) -> Result<Self::V, String>;
    fn pow(&self, base: &Expr, a: &Self::V, e: Ratio<i64>) -> Result<Self::V, String>;
}

pub fn eval<D: Domain>(d: &D, e: &Expr) -> PResult<D::V> {
    let wrap = |r: Result<D::V, String>| r.or_else(|m| err(e.pos, m));
    Ok(match &e.node {
        Node::Int(n) => d.int(*n),
        Node::Sym(c) => match d.sym(*c) {
            Some(v) => v,
            None => return err(e.pos, format!("'{c}' is not defined here")),
        },
        Node::Neg(a) => d.neg(&eval(d, a)?),
        Node::Add(a, b) => d.add(&eval(d, a)?, &eval(d, b)?),
        Node::Sub(a, b) => d.sub(&eval(d, a)?, &eval(d, b)?),
        Node::Mul(a, b) => d.mul(&eval(d, a)?, &eval(d, b)?),
        Node::Div(a, b) => wrap(d.div(&eval(d, a)?, &eval(d, b)?))?,
        Node::Pow(a, k) => wrap(d.pow(a, &eval(d, a)?, *k))?,
    })
}

fn int_power<S: Scalar>(a: &S, e: Ratio<i64>) -> Result<S, String> {
    if !e.is_integer() {
        return Err("fractional exponents apply to t only".into());
    }
    let k = e.to_integer();
    let base = if k < 0 { a.recip().map_err(|x| x.to_string())? } else { a.clone() };
    Ok(base.pow(k.unsigned_abs()))
}

/// F_q(theta): `t`, integers, `g`.
pub struct RatDomain(pub Arc<Field>);

impl Domain for RatDomain {
    type V = ThetaRat;
    fn int(&self, n: i64) -> ThetaRat {
        ThetaRat::constant(self.0.clone(), self.0.from_int(n))
    }
    fn sym(&self, c: char) -> Option<ThetaRat> {
        match c {
            't' => Some(ThetaRat::theta(self.0.clone())),
            'g' => Some(ThetaRat::constant(self.0.clone(), self.0.generator())),
            _ => None,
        }
    }
    fn add(&self, a: &ThetaRat, b: &ThetaRat) -> ThetaRat {
        a.plus(b)
    }
    fn sub(&self, a: &ThetaRat, b: &ThetaRat) -> ThetaRat {
        a.minus(b)
    }
    fn mul(&self, a: &ThetaRat, b: &ThetaRat) -> ThetaRat {
        a.times(b)
    }
    fn neg(&self, a: &ThetaRat) -> ThetaRat {
        a.negate()
    }
    fn div(&self, a: &ThetaRat, b: &ThetaRat) -> Result<ThetaRat, String> {
        Ok(a.times(&b.recip().map_err(|_| "division by zero".to_string())?))
    }
    fn pow(&self, _: &Expr, a: &ThetaRat, e: Ratio<i64>) -> Result<ThetaRat, String> {
        int_power(a, e)
    }
}

/// The series model: `t` with rational exponents, integers, `g`, `w`.
pub struct CinfDomain(pub Arc<Ctx>);

impl Domain for CinfDomain {
    type V = Cinf;
    fn int(&self, n: i64) -> Cinf {
        Cinf::from_int(&self.0, n)
    }
    fn sym(&self, c: char) -> Option<Cinf> {
        let ctx = &self.0;
        match c {
            't' => Some(Cinf::theta(ctx)),
            'g' => Some(Cinf::from_fq(ctx, ctx.fq().generator())),
            'w' => Some(Cinf::monomial(ctx, ctx.ext().generator(), 0)),
            _ => None,
        }
    }
    fn add(&self, a: &Cinf, b: &Cinf) -> Cinf {
        a.add(b)
    }
    fn sub(&self, a: &Cinf, b: &Cinf) -> Cinf {
        a.sub(b)
    }
    fn mul(&self, a: &Cinf, b: &Cinf) -> Cinf {
        a.mul(b)
    }
    fn neg(&self, a: &Cinf) -> Cinf {
        a.neg()
    }
    fn div(&self, a: &Cinf, b: &Cinf) -> Result<Cinf, String> {
        a.div(b).map_err(|e| e.to_string())
    }
    fn pow(&self, base: &Expr, a: &Cinf, e: Ratio<i64>) -> Result<Cinf, String> {
        if base.node == Node::Sym('t') {
            let r = Ratio::new(*e.numer() as i128, *e.denom() as i128);
            let v = Cinf::scaled(&self.0, -r).map_err(|x| x.to_string())?;
            return Ok(Cinf::monomial(&self.0, 1, v));
        }
        int_power(a, e)
    }
}

pub fn parse_rat(f: &Arc<Field>, text: &str) -> PResult<ThetaRat> {
    let lit = parse(text, false)?;
    eval(&RatDomain(f.clone()), &lit.expr)
}

/// A polynomial in `t`.
pub fn parse_poly(f: &Arc<Field>, text: &str) -> PResult<FqPoly> {
    let x = parse_rat(f, text)?;
    if !x.is_poly() {
        return err(0, "expected a polynomial in t");
    }
    let c = x.den().lc();
    let inv = f.inv(c).unwrap();
    Ok(x.num().scale(inv))
}

pub fn parse_cinf(ctx: &Arc<Ctx>, text: &str) -> PResult<Cinf> {
    let lit = parse(text, true)?;
    let x = eval(&CinfDomain(ctx.clone()), &lit.expr)?;
    match lit.prec {
        None => Ok(x),
        Some((p, pos)) => {
            let r = Ratio::new(*p.numer() as i128, *p.denom() as i128);
            let v = Cinf::scaled(ctx, r).or_else(|e| err(pos, e.to_string()))?;
            Ok(x.with_prec(v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_arith::spec::FieldSpec;
    use crate::cinf_series::CinfConfig;

    #[test]
    fn rational_round_trip() {
        for (p, s) in [(2, "t^3+t+1"), (3, "-t^2+1"), (2, "(t+1)/(t^2+t+1)"), (3, "t^-2"), (2, "t^6")] {
            let f = FieldSpec::prime(p).fq();
            let x = parse_rat(&f, s).unwrap();
            assert_eq!(parse_rat(&f, &x.to_string()).unwrap(), x);
        }
        let f = FieldSpec::prime(2).fq();
        assert_eq!(parse_rat(&f, "t^2 + 1").unwrap().to_string(), "t^2+1");
        assert_eq!(parse_rat(&f, "1/t^2").unwrap(), parse_rat(&f, "t^(-2)").unwrap());
    }

    #[test]
    fn positions() {
        let f = FieldSpec::prime(2).fq();
        assert_eq!(parse_rat(&f, "t + x").unwrap_err().pos, 4);
        assert_eq!(parse_rat(&f, "1/0").unwrap_err().pos, 1);
        assert_eq!(parse_rat(&f, "t^(1/2)").unwrap_err().pos, 1);
        assert_eq!(parse("t@3", false).unwrap_err().pos, 1);
    }

    #[test]
    fn series_literals() {
        let ctx = Ctx::new(&FieldSpec::prime(2), 2, &CinfConfig::default()).unwrap();
        for s in ["t^(-3/2)+w*t^(1/2)", "w^2+t^-1@10", "1+t^(-1/3)@(7/2)"] {
            let x = parse_cinf(&ctx, s).unwrap();
            assert_eq!(parse_cinf(&ctx, &x.to_string()).unwrap(), x);
        }
        assert_eq!(parse_cinf(&ctx, "w^3").unwrap(), Cinf::one(&ctx));
    }
}
