//! Rational functions in theta over F_q.

use std::fmt;
use std::sync::Arc;

use super::gf::Field;
use super::poly::{fmt_coeff, fmt_term, join_terms, FqPoly, Var};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// num/den with den monic and gcd(num, den) = 1.
#[derive(Clone, PartialEq, Eq)]
pub struct ThetaRat {
    num: FqPoly,
    den: FqPoly,
}

impl ThetaRat {
    pub fn new(num: FqPoly, den: FqPoly) -> Result<ThetaRat> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        let g = num.gcd(&den);
        let mut n = num.div_exact(&g)?;
        let mut d = den.div_exact(&g)?;
        let lc = d.lc();
        let inv = n.field().inv(lc).unwrap();
        n = n.scale(inv);
        d = d.scale(inv);
        Ok(ThetaRat { num: n.with_var(Var::Theta), den: d.with_var(Var::Theta) })
    }
    pub fn from_poly(p: FqPoly) -> ThetaRat {
        let one = FqPoly::one(p.field().clone(), Var::Theta);
        ThetaRat { num: p.with_var(Var::Theta), den: one }
    }
    pub fn zero(f: Arc<Field>) -> ThetaRat {
        ThetaRat::from_poly(FqPoly::zero(f, Var::Theta))
    }
    pub fn constant(f: Arc<Field>, a: u32) -> ThetaRat {
        ThetaRat::from_poly(FqPoly::constant(f, a, Var::Theta))
    }
    pub fn theta(f: Arc<Field>) -> ThetaRat {
        ThetaRat::from_poly(FqPoly::x(f, Var::Theta))
    }
    /// c * theta^k for any integer k.
    pub fn monomial(f: Arc<Field>, c: u32, k: i64) -> ThetaRat {
        if k >= 0 {
            ThetaRat::from_poly(FqPoly::monomial(f, c, k as usize, Var::Theta))
        } else {
            ThetaRat::new(
                FqPoly::constant(f.clone(), c, Var::Theta),
                FqPoly::monomial(f, 1, (-k) as usize, Var::Theta),
            )
            .unwrap()
        }
    }

    pub fn num(&self) -> &FqPoly {
        &self.num
    }
    pub fn den(&self) -> &FqPoly {
        &self.den
    }
    pub fn field(&self) -> &Arc<Field> {
        self.num.field()
    }
    pub fn is_poly(&self) -> bool {
        self.den.degree() == Some(0)
    }
    /// v_inf = deg den - deg num; None for zero.
    pub fn valuation(&self) -> Option<i64> {
        let dn = self.num.degree()? as i64;
        Some(self.den.degree().unwrap() as i64 - dn)
    }
    /// True when the denominator is a power of theta, so the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        let d = self.den.coeffs();
        d.iter().take(d.len() - 1).all(|&c| c == 0)
    }
    /// Laurent terms (exponent of theta, coefficient), highest exponent first.
    pub fn laurent_terms(&self) -> Option<Vec<(i64, u32)>> {
        if !self.is_laurent() {
            return None;
        }
        let shift = self.den.degree().unwrap() as i64;
        Some(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i as i64 - shift, c))
                .collect(),
        )
    }

    fn like_poly(&self, p: FqPoly) -> ThetaRat {
        ThetaRat::from_poly(p)
    }
}

impl fmt::Debug for ThetaRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ThetaRat {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(terms) = self.laurent_terms() {
            let f = self.field();
            let rendered: Vec<String> = terms
                .iter()
                .map(|&(e, c)| {
                    let mono = match e {
                        0 => String::new(),
                        1 => "t".to_string(),
                        _ => format!("t^{e}"),
                    };
                    fmt_term(&fmt_coeff(f, c), &mono)
                })
                .collect();
            return write!(out, "{}", join_terms(&rendered));
        }
        write!(out, "({})/({})", self.num, self.den)
    }
}

impl Scalar for ThetaRat {
    fn zero_like(&self) -> Self {
        ThetaRat::zero(self.field().clone())
    }
    fn one_like(&self) -> Self {
        ThetaRat::constant(self.field().clone(), 1)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        if self.den == o.den {
            return ThetaRat::new(self.num.add(&o.num), self.den.clone()).unwrap();
        }
        let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        ThetaRat::new(n, self.den.mul(&o.den)).unwrap()
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
    fn times(&self, o: &Self) -> Self {
        if self.is_poly() && o.is_poly() {
            return self.like_poly(self.num.mul(&o.num));
        }
        ThetaRat::new(self.num.mul(&o.num), self.den.mul(&o.den)).unwrap()
    }
    fn negate(&self) -> Self {
        ThetaRat { num: self.num.neg(), den: self.den.clone() }
    }
    fn recip(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::Singular);
        }
        ThetaRat::new(self.den.clone(), self.num.clone())
    }
    fn twist(&self, k: u32) -> Self {
        ThetaRat { num: self.num.frobenius_power(k), den: self.den.frobenius_power(k) }
    }
    fn theta_like(&self) -> Self {
        ThetaRat::theta(self.field().clone())
    }
    fn int_like(&self, n: i64) -> Self {
        let f = self.field().clone();
        let c = f.from_int(n);
        ThetaRat::constant(f, c)
    }
    fn fq_like(&self, a: u32) -> Self {
        ThetaRat::constant(self.field().clone(), a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_arith::spec::FieldSpec;

    #[test]
    fn normalizes_and_prints() {
        let f = FieldSpec::prime(2).fq();
        let t = ThetaRat::theta(f.clone());
        let x = t.times(&t).plus(&t).times(&t.recip().unwrap());
        assert_eq!(x.to_string(), "t+1");
        let y = ThetaRat::monomial(f.clone(), 1, -2).plus(&t.pow(6));
        assert_eq!(y.to_string(), "t^6+t^-2");
        let z = t.plus(&t.one_like()).recip().unwrap();
        assert_eq!(z.to_string(), "(1)/(t+1)");
        assert_eq!(z.valuation(), Some(1));
    }

    #[test]
    fn twist_is_qth_power() {
        let f = FieldSpec::prime(3).fq();
        let t = ThetaRat::theta(f);
        let x = t.plus(&t.int_like(2)).times(&t.recip().unwrap());
        assert_eq!(x.twist(1), x.pow(3));
    }
}
