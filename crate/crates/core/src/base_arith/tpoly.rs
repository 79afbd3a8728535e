//! Polynomials in T over a coefficient domain, and matrices of them.

use std::fmt;

use super::matrix::Mat;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct TPoly<S> {
    c: Vec<S>,
    zero: S,
}

pub type TMat<S> = Mat<TPoly<S>>;

impl<S: Scalar> PartialEq for TPoly<S> {
    fn eq(&self, o: &Self) -> bool {
        let n = self.c.len().max(o.c.len());
        (0..n).all(|i| self.coeff(i) == o.coeff(i))
    }
}

impl<S: Scalar> fmt::Debug for TPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TPoly{:?}", self.c)
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for TPoly<S> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (d, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let mono = match d {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{d}"),
            };
            let compound = cs[1..].contains(['+', '-']) || cs.contains('/');
            let cs = if compound && d > 0 { format!("({cs})") } else { cs };
            terms.push(super::poly::fmt_term(&cs, &mono));
        }
        write!(out, "{}", super::poly::join_terms(&terms))
    }
}

impl<S: Scalar> TPoly<S> {
    pub fn new(mut c: Vec<S>, zero: &S) -> TPoly<S> {
        while c.last().map(|x| x.is_zero()).unwrap_or(false) {
            c.pop();
        }
        TPoly { c, zero: zero.zero_like() }
    }
    pub fn zero(zero: &S) -> TPoly<S> {
        TPoly { c: vec![], zero: zero.zero_like() }
    }
    pub fn constant(a: S) -> TPoly<S> {
        let z = a.zero_like();
        TPoly::new(vec![a], &z)
    }
    /// The polynomial T.
    pub fn t(zero: &S) -> TPoly<S> {
        TPoly::new(vec![zero.zero_like(), zero.one_like()], zero)
    }
    /// T - a.
    pub fn linear(a: &S) -> TPoly<S> {
        TPoly::new(vec![a.negate(), a.one_like()], a)
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

    pub fn add(&self, o: &TPoly<S>) -> TPoly<S> {
        let n = self.c.len().max(o.c.len());
        TPoly::new((0..n).map(|i| self.coeff(i).plus(&o.coeff(i))).collect(), &self.zero)
    }
    pub fn sub(&self, o: &TPoly<S>) -> TPoly<S> {
        let n = self.c.len().max(o.c.len());
        TPoly::new((0..n).map(|i| self.coeff(i).minus(&o.coeff(i))).collect(), &self.zero)
    }
    pub fn neg(&self) -> TPoly<S> {
        TPoly::new(self.c.iter().map(|x| x.negate()).collect(), &self.zero)
    }
    pub fn scale(&self, a: &S) -> TPoly<S> {
        TPoly::new(self.c.iter().map(|x| a.times(x)).collect(), &self.zero)
    }
    pub fn mul(&self, o: &TPoly<S>) -> TPoly<S> {
        if self.c.is_empty() || o.c.is_empty() {
            return TPoly::zero(&self.zero);
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
                c[i + j] = c[i + j].plus(&a.times(b));
            }
        }
        TPoly::new(c, &self.zero)
    }
    pub fn shift(&self, k: usize) -> TPoly<S> {
        if self.c.is_empty() {
            return self.clone();
        }
        let mut c = vec![self.zero.zero_like(); k];
        c.extend(self.c.iter().cloned());
        TPoly::new(c, &self.zero)
    }
    pub fn pow_u(&self, e: u32) -> TPoly<S> {
        let mut acc = TPoly::constant(self.zero.one_like());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
    /// Coefficientwise Frobenius twist; T is untouched.
    pub fn twist_coeffs(&self, k: u32) -> TPoly<S> {
        TPoly::new(self.c.iter().map(|x| x.twist(k)).collect(), &self.zero)
    }
    pub fn eval(&self, x: &S) -> S {
        let mut acc = self.zero.zero_like();
        for c in self.c.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }
    pub fn map<R: Scalar>(&self, zero: &R, f: impl Fn(&S) -> R) -> TPoly<R> {
        TPoly::new(self.c.iter().map(f).collect(), zero)
    }
    pub fn try_map<R: Scalar>(&self, zero: &R, f: impl Fn(&S) -> Result<R>) -> Result<TPoly<R>> {
        Ok(TPoly::new(self.c.iter().map(f).collect::<Result<Vec<R>>>()?, zero))
    }

    /// Division with remainder by a polynomial with invertible leading coefficient.
    pub fn divrem(&self, d: &TPoly<S>) -> Result<(TPoly<S>, TPoly<S>)> {
        let dd = d.degree().ok_or_else(|| Error::InvalidArgument("division by zero".into()))?;
        let inv = d.lc().recip()?;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Ok((TPoly::zero(&self.zero), self.clone()));
        }
        let mut q = vec![self.zero.zero_like(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].times(&inv);
            if c.is_zero() {
                continue;
            }
            for (i, b) in d.c.iter().enumerate() {
                r[k + i] = r[k + i].minus(&c.times(b));
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((TPoly::new(q, &self.zero), TPoly::new(r, &self.zero)))
    }

    /// Divide out (T - a) as often as possible: returns (multiplicity, cofactor).
    pub fn strip_linear(&self, a: &S) -> (u32, TPoly<S>) {
        let lin = TPoly::linear(a);
        let mut cur = self.clone();
        let mut m = 0;
        while cur.degree().unwrap_or(0) >= 1 {
            let (q, r) = cur.divrem(&lin).expect("monic divisor");
            if !r.c.iter().all(|x| x.is_zero()) {
                break;
            }
            cur = q;
            m += 1;
        }
        (m, cur)
    }
}

impl<S: Scalar> Scalar for TPoly<S> {
    fn zero_like(&self) -> Self {
        TPoly::zero(&self.zero)
    }
    fn one_like(&self) -> Self {
        TPoly::constant(self.zero.one_like())
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
            return Ok(TPoly::constant(self.c[0].recip()?));
        }
        Err(Error::Singular)
    }
    fn twist(&self, k: u32) -> Self {
        self.twist_coeffs(k)
    }
    fn theta_like(&self) -> Self {
        TPoly::constant(self.zero.theta_like())
    }
    fn int_like(&self, n: i64) -> Self {
        TPoly::constant(self.zero.int_like(n))
    }
    fn fq_like(&self, a: u32) -> Self {
        TPoly::constant(self.zero.fq_like(a))
    }
}

/// Lift a constant matrix to a matrix of constant T-polynomials.
pub fn const_tmat<S: Scalar>(m: &Mat<S>) -> TMat<S> {
    let z = TPoly::zero(m.zero_elem());
    m.map(&z, |x| TPoly::constant(x.clone()))
}

/// Coefficient matrix of T^i.
pub fn tmat_coeff<S: Scalar>(m: &TMat<S>, i: usize) -> Mat<S> {
    let z = m.zero_elem().zero_coeff().clone();
    m.map(&z, |p| p.coeff(i))
}

pub fn tmat_degree<S: Scalar>(m: &TMat<S>) -> usize {
    m.entries().filter_map(|p| p.degree()).max().unwrap_or(0)
}

/// The ordered Frobenius product A^{(k-1)} ... A^{(1)} A.
pub fn frobenius_product<S: Scalar>(a: &TMat<S>, k: u32) -> Result<TMat<S>> {
    if !a.is_square() {
        return Err(Error::SizeMismatch("Frobenius product of a non-square matrix".into()));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("Frobenius product needs k >= 1".into()));
    }
    let mut acc = a.clone();
    for i in 1..k {
        acc = a.twist(i).mul(&acc);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_arith::rat::ThetaRat;
    use crate::base_arith::spec::FieldSpec;

    #[test]
    fn strip_linear_counts_multiplicity() {
        let t = ThetaRat::theta(FieldSpec::prime(3).fq());
        let lin = TPoly::linear(&t);
        let p = lin.mul(&lin).mul(&TPoly::constant(t.clone()));
        let (m, rest) = p.strip_linear(&t);
        assert_eq!(m, 2);
        assert_eq!(rest.degree(), Some(0));
    }

    #[test]
    fn display_t_poly() {
        let t = ThetaRat::theta(FieldSpec::prime(2).fq());
        let p = TPoly::linear(&t);
        assert_eq!(p.to_string(), "T+t");
        let p3 = TPoly::linear(&ThetaRat::theta(FieldSpec::prime(3).fq()));
        assert_eq!(p3.to_string(), "T-t");
        let q = TPoly::new(vec![t.clone(), t.plus(&t.one_like())], &t);
        assert_eq!(q.to_string(), "(t+1)*T+t");
    }
}
