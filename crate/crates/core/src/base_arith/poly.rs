//! Univariate polynomials over F_q, in theta or in T.

use std::fmt;
use std::sync::Arc;

use super::gf::Field;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Which indeterminate a polynomial is written in. Only affects printing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Theta,
    T,
    U,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::Theta => "t",
            Var::T => "T",
            Var::U => "U",
        }
    }
}

/// A polynomial with F_q coefficients, lowest degree first, no trailing zeros.
#[derive(Clone)]
pub struct FqPoly {
    f: Arc<Field>,
    c: Vec<u32>,
    var: Var,
}

impl PartialEq for FqPoly {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}
impl Eq for FqPoly {}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Print one F_q coefficient in the shared grammar: integers for the prime field
/// (symmetric representatives), `g^k` powers of the generator otherwise.
pub fn fmt_coeff(f: &Field, c: u32) -> String {
    if c < f.p() {
        let p = f.p();
        if p > 2 && c > p / 2 {
            return format!("-{}", p - c);
        }
        return c.to_string();
    }
    let k = f.log(c).expect("nonzero");
    if k == 1 {
        "g".to_string()
    } else {
        format!("g^{k}")
    }
}

/// Join already-formatted signed terms with `+`/`-`.
pub fn join_terms(terms: &[String]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i > 0 && !t.starts_with('-') {
            s.push('+');
        }
        s.push_str(t);
    }
    s
}

/// Format `coeff * var^exp` where exp is already rendered (empty for the constant term).
pub fn fmt_term(coeff: &str, mono: &str) -> String {
    if mono.is_empty() {
        return coeff.to_string();
    }
    match coeff {
        "1" => mono.to_string(),
        "-1" => format!("-{mono}"),
        c => format!("{c}*{mono}"),
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.var.symbol();
        let mut terms = Vec::new();
        for (d, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match d {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{d}"),
            };
            terms.push(fmt_term(&fmt_coeff(&self.f, c), &mono));
        }
        write!(out, "{}", join_terms(&terms))
    }
}

impl FqPoly {
    pub fn new(f: Arc<Field>, mut c: Vec<u32>, var: Var) -> FqPoly {
        while c.last() == Some(&0) {
            c.pop();
        }
        FqPoly { f, c, var }
    }
    pub fn zero(f: Arc<Field>, var: Var) -> FqPoly {
        FqPoly { f, c: vec![], var }
    }
    pub fn constant(f: Arc<Field>, a: u32, var: Var) -> FqPoly {
        FqPoly::new(f, vec![a], var)
    }
    pub fn one(f: Arc<Field>, var: Var) -> FqPoly {
        FqPoly::constant(f, 1, var)
    }
    /// The indeterminate itself.
    pub fn x(f: Arc<Field>, var: Var) -> FqPoly {
        FqPoly::new(f, vec![0, 1], var)
    }
    pub fn monomial(f: Arc<Field>, a: u32, d: usize, var: Var) -> FqPoly {
        let mut c = vec![0; d + 1];
        c[d] = a;
        FqPoly::new(f, c, var)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.f
    }
    pub fn var(&self) -> Var {
        self.var
    }
    pub fn with_var(mut self, var: Var) -> FqPoly {
        self.var = var;
        self
    }
    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }
    pub fn coeff(&self, i: usize) -> u32 {
        self.c.get(i).copied().unwrap_or(0)
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    pub fn lc(&self) -> u32 {
        self.c.last().copied().unwrap_or(0)
    }
    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    fn like(&self, c: Vec<u32>) -> FqPoly {
        FqPoly::new(self.f.clone(), c, self.var)
    }

    pub fn add(&self, o: &FqPoly) -> FqPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.f.add(self.coeff(i), o.coeff(i))).collect();
        self.like(c)
    }
    pub fn sub(&self, o: &FqPoly) -> FqPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.f.sub(self.coeff(i), o.coeff(i))).collect();
        self.like(c)
    }
    pub fn neg(&self) -> FqPoly {
        self.like(self.c.iter().map(|&a| self.f.neg(a)).collect())
    }
    pub fn scale(&self, a: u32) -> FqPoly {
        self.like(self.c.iter().map(|&b| self.f.mul(a, b)).collect())
    }
    pub fn mul(&self, o: &FqPoly) -> FqPoly {
        if self.is_zero() || o.is_zero() {
            return self.like(vec![]);
        }
        let mut c = vec![0u32; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = self.f.add(c[i + j], self.f.mul(a, b));
            }
        }
        self.like(c)
    }
    pub fn shift(&self, k: usize) -> FqPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        self.like(c)
    }
    pub fn pow(&self, mut e: u64) -> FqPoly {
        let mut base = self.clone();
        let mut acc = self.like(vec![1]);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Division with remainder; the divisor must be nonzero.
    pub fn divrem(&self, d: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        let dd = d.degree().ok_or_else(|| Error::InvalidArgument("division by zero".into()))?;
        let inv = self.f.inv(d.lc()).unwrap();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Ok((self.like(vec![]), self.clone()));
        }
        let mut q = vec![0u32; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = self.f.mul(r[k + dd], inv);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (i, &b) in d.c.iter().enumerate() {
                r[k + i] = self.f.sub(r[k + i], self.f.mul(c, b));
            }
        }
        r.truncate(dd);
        Ok((self.like(q), self.like(r)))
    }
    pub fn rem(&self, d: &FqPoly) -> FqPoly {
        self.divrem(d).expect("nonzero divisor").1
    }
    /// Exact quotient, failing if the division leaves a remainder.
    pub fn div_exact(&self, d: &FqPoly) -> Result<FqPoly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Defect("inexact polynomial division".into()));
        }
        Ok(q)
    }
    pub fn monic(&self) -> FqPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.f.inv(self.lc()).unwrap())
    }
    /// Monic gcd.
    pub fn gcd(&self, o: &FqPoly) -> FqPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
    pub fn mulmod(&self, o: &FqPoly, m: &FqPoly) -> FqPoly {
        self.mul(o).rem(m)
    }
    pub fn powmod(&self, mut e: u64, m: &FqPoly) -> FqPoly {
        let mut base = self.rem(m);
        let mut acc = self.like(vec![1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            base = base.mulmod(&base, m);
            e >>= 1;
        }
        acc
    }
    pub fn eval(&self, x: u32) -> u32 {
        self.c.iter().rev().fold(0, |acc, &c| self.f.add(self.f.mul(acc, x), c))
    }
    /// Substitute another polynomial for the variable.
    pub fn compose(&self, g: &FqPoly) -> FqPoly {
        let mut acc = g.like(vec![]);
        for &c in self.c.iter().rev() {
            acc = acc.mul(g).add(&g.like(vec![c]));
        }
        acc
    }
    /// f(x)^(q^k) = f^{sigma^k}(x^(q^k)): twist the coefficients and spread the exponents.
    pub fn frobenius_power(&self, k: u32) -> FqPoly {
        if self.is_zero() {
            return self.clone();
        }
        let q = self.f.size() as usize;
        let step = q.pow(k);
        let mut c = vec![0u32; (self.c.len() - 1) * step + 1];
        for (i, &a) in self.c.iter().enumerate() {
            // coefficients live in F_q, so a^(q^k) = a
            c[i * step] = a;
        }
        self.like(c)
    }

    /// Rabin-style test: no common factor with x^(q^i) - x for i <= deg/2.
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(d) => d,
        };
        if d == 1 {
            return true;
        }
        let q = self.f.size() as u64;
        let x = self.like(vec![0, 1]);
        let mut xp = x.clone();
        for _ in 1..=d / 2 {
            xp = xp.powmod(q, self);
            let g = xp.sub(&x).gcd(self);
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// Lexicographic key used for ordering primes: compare from the top coefficient down.
    pub fn order_key(&self) -> (usize, Vec<u32>) {
        (self.c.len(), self.c.iter().rev().copied().collect())
    }
}

/// An element of F_q (or of any tabulated field) as a scalar.
#[derive(Clone)]
pub struct Fe {
    pub f: Arc<Field>,
    pub v: u32,
    /// Twisting raises to the power p^frob_step (the constant-field size is p^frob_step).
    pub frob_step: u32,
}

impl PartialEq for Fe {
    fn eq(&self, o: &Self) -> bool {
        self.v == o.v
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_coeff(&self.f, self.v))
    }
}

impl Fe {
    pub fn new(f: Arc<Field>, v: u32, frob_step: u32) -> Fe {
        Fe { f, v, frob_step }
    }
    fn like(&self, v: u32) -> Fe {
        Fe { f: self.f.clone(), v, frob_step: self.frob_step }
    }
}

impl Scalar for Fe {
    fn zero_like(&self) -> Self {
        self.like(0)
    }
    fn one_like(&self) -> Self {
        self.like(1)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn plus(&self, o: &Self) -> Self {
        self.like(self.f.add(self.v, o.v))
    }
    fn minus(&self, o: &Self) -> Self {
        self.like(self.f.sub(self.v, o.v))
    }
    fn times(&self, o: &Self) -> Self {
        self.like(self.f.mul(self.v, o.v))
    }
    fn negate(&self) -> Self {
        self.like(self.f.neg(self.v))
    }
    fn recip(&self) -> Result<Self> {
        self.f.inv(self.v).map(|v| self.like(v)).ok_or(Error::Singular)
    }
    fn twist(&self, k: u32) -> Self {
        self.like(self.f.frob_p(self.v, k * self.frob_step))
    }
    fn theta_like(&self) -> Self {
        panic!("theta is not an element of a finite field")
    }
    fn int_like(&self, n: i64) -> Self {
        self.like(self.f.from_int(n))
    }
    fn fq_like(&self, a: u32) -> Self {
        self.like(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_arith::spec::FieldSpec;

    fn f2() -> Arc<Field> {
        FieldSpec::prime(2).fq()
    }

    #[test]
    fn display_grammar() {
        let p = FqPoly::new(f2(), vec![1, 1, 0, 1], Var::Theta);
        assert_eq!(p.to_string(), "t^3+t+1");
        let f3 = FieldSpec::prime(3).fq();
        let p = FqPoly::new(f3, vec![2, 1], Var::T);
        assert_eq!(p.to_string(), "T-1");
    }

    #[test]
    fn divrem_roundtrip() {
        let a = FqPoly::new(f2(), vec![1, 0, 1, 1, 1], Var::Theta);
        let b = FqPoly::new(f2(), vec![1, 1, 1], Var::Theta);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn irreducibility_small() {
        let f = f2();
        assert!(FqPoly::new(f.clone(), vec![1, 1, 1], Var::Theta).is_irreducible());
        assert!(!FqPoly::new(f.clone(), vec![1, 0, 1], Var::Theta).is_irreducible());
        assert!(FqPoly::new(f.clone(), vec![1, 1, 0, 1], Var::Theta).is_irreducible());
        assert!(!FqPoly::new(f, vec![1, 1, 1, 1], Var::Theta).is_irreducible());
    }

    #[test]
    fn frobenius_power_is_qth_power() {
        let f3 = FieldSpec::prime(3).fq();
        let a = FqPoly::new(f3, vec![2, 1, 1], Var::Theta);
        assert_eq!(a.frobenius_power(1), a.pow(3));
        assert_eq!(a.frobenius_power(2), a.pow(9));
    }
}
