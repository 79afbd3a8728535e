//! Skew polynomials sum c_i tau^i with tau * c = c^q * tau.

use std::fmt;

use crate::base_arith::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct SkewPoly<S> {
    c: Vec<S>,
    zero: S,
}

impl<S: Scalar> PartialEq for SkewPoly<S> {
    fn eq(&self, o: &Self) -> bool {
        let n = self.c.len().max(o.c.len());
        (0..n).all(|i| self.coeff(i) == o.coeff(i))
    }
}

impl<S: Scalar> fmt::Debug for SkewPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Skew{:?}", self.c)
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for SkewPoly<S> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match i {
                0 => format!("({c})"),
                1 => format!("({c})*tau"),
                _ => format!("({c})*tau^{i}"),
            });
        }
        if parts.is_empty() {
            return write!(out, "0");
        }
        write!(out, "{}", parts.join("+"))
    }
}

impl<S: Scalar> SkewPoly<S> {
    pub fn new(mut c: Vec<S>, zero: &S) -> SkewPoly<S> {
        while c.last().map(|x| x.is_zero()).unwrap_or(false) {
            c.pop();
        }
        SkewPoly { c, zero: zero.zero_like() }
    }
    pub fn zero(zero: &S) -> SkewPoly<S> {
        SkewPoly { c: vec![], zero: zero.zero_like() }
    }
    pub fn constant(a: S) -> SkewPoly<S> {
        let z = a.zero_like();
        SkewPoly::new(vec![a], &z)
    }
    /// a * tau^i.
    pub fn monomial(a: S, i: usize) -> SkewPoly<S> {
        let z = a.zero_like();
        let mut c = vec![z.clone(); i];
        c.push(a);
        SkewPoly::new(c, &z)
    }
    pub fn tau(zero: &S) -> SkewPoly<S> {
        SkewPoly::monomial(zero.one_like(), 1)
    }
    pub fn coeffs(&self) -> &[S] {
        &self.c
    }
    pub fn coeff(&self, i: usize) -> S {
        self.c.get(i).cloned().unwrap_or_else(|| self.zero.zero_like())
    }
    pub fn zero_coeff(&self) -> &S {
        &self.zero
    }
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    pub fn lc(&self) -> S {
        self.c.last().cloned().unwrap_or_else(|| self.zero.zero_like())
    }
    /// Lowest index with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }
    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        SkewPoly::new((0..n).map(|i| self.coeff(i).plus(&o.coeff(i))).collect(), &self.zero)
    }
    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        SkewPoly::new((0..n).map(|i| self.coeff(i).minus(&o.coeff(i))).collect(), &self.zero)
    }
    pub fn neg(&self) -> Self {
        SkewPoly::new(self.c.iter().map(|x| x.negate()).collect(), &self.zero)
    }
    /// a * self (scalar on the left).
    pub fn scale_left(&self, a: &S) -> Self {
        SkewPoly::new(self.c.iter().map(|x| a.times(x)).collect(), &self.zero)
    }
    /// self * a (scalar on the right): c_i * a^(q^i).
    pub fn scale_right(&self, a: &S) -> Self {
        SkewPoly::new(
            self.c.iter().enumerate().map(|(i, x)| x.times(&a.twist(i as u32))).collect(),
            &self.zero,
        )
    }
    /// tau^k * self.
    pub fn tau_left(&self, k: usize) -> Self {
        if self.c.is_empty() {
            return self.clone();
        }
        let mut c = vec![self.zero.zero_like(); k];
        c.extend(self.c.iter().map(|x| x.twist(k as u32)));
        SkewPoly::new(c, &self.zero)
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return SkewPoly::zero(&self.zero);
        }
        let mut c = vec![self.zero.zero_like(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[i + j] = c[i + j].plus(&a.times(&b.twist(i as u32)));
            }
        }
        SkewPoly::new(c, &self.zero)
    }
    /// Evaluate the additive map x -> sum c_i x^(q^i).
    pub fn apply(&self, x: &S) -> S {
        let mut acc = self.zero.zero_like();
        for (i, c) in self.c.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.plus(&c.times(&x.twist(i as u32)));
            }
        }
        acc
    }
    pub fn map<R: Scalar>(&self, zero: &R, f: impl Fn(&S) -> R) -> SkewPoly<R> {
        SkewPoly::new(self.c.iter().map(f).collect(), zero)
    }
    pub fn try_map<R: Scalar>(&self, zero: &R, f: impl Fn(&S) -> Result<R>) -> Result<SkewPoly<R>> {
        Ok(SkewPoly::new(self.c.iter().map(f).collect::<Result<Vec<R>>>()?, zero))
    }
}

impl<S: Scalar> Scalar for SkewPoly<S> {
    fn zero_like(&self) -> Self {
        SkewPoly::zero(&self.zero)
    }
    fn one_like(&self) -> Self {
        SkewPoly::constant(self.zero.one_like())
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn recip(&self) -> Result<Self> {
        if self.degree() == Some(0) {
            return Ok(SkewPoly::constant(self.c[0].recip()?));
        }
        Err(Error::Singular)
    }
    fn twist(&self, k: u32) -> Self {
        SkewPoly::new(self.c.iter().map(|x| x.twist(k)).collect(), &self.zero)
    }
    fn theta_like(&self) -> Self {
        SkewPoly::constant(self.zero.theta_like())
    }
    fn int_like(&self, n: i64) -> Self {
        SkewPoly::constant(self.zero.int_like(n))
    }
    fn fq_like(&self, a: u32) -> Self {
        SkewPoly::constant(self.zero.fq_like(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_arith::rat::ThetaRat;
    use crate::base_arith::spec::FieldSpec;

    #[test]
    fn tau_commutation() {
        let t = ThetaRat::theta(FieldSpec::prime(2).fq());
        let tau = SkewPoly::tau(&t);
        let th = SkewPoly::constant(t.clone());
        // tau * theta = theta^2 * tau
        assert_eq!(tau.mul(&th), SkewPoly::monomial(t.times(&t), 1));
        let p = th.add(&tau);
        assert_eq!(p.apply(&t), t.times(&t).plus(&t.twist(1)));
        assert_eq!(p.mul(&p).apply(&t), p.apply(&p.apply(&t)));
    }
}
