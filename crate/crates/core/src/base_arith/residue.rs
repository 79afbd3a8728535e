//! Residue fields F_q[theta]/P, stored as reduced polynomials.

use std::fmt;
use std::sync::Arc;

use super::poly::{FqPoly, Var};
use super::rat::ThetaRat;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Debug)]
pub struct ResidueRing {
    prime: FqPoly,
    /// theta^q mod P, used for twisting.
    theta_q: FqPoly,
}

impl ResidueRing {
    pub fn new(prime: &FqPoly) -> Result<Arc<ResidueRing>> {
        if !prime.is_monic() || !prime.is_irreducible() {
            return Err(Error::InvalidArgument(format!("{prime} is not a monic prime")));
        }
        let prime = prime.clone().with_var(Var::Theta);
        let q = prime.field().size() as u64;
        let theta_q = FqPoly::x(prime.field().clone(), Var::Theta).powmod(q, &prime);
        Ok(Arc::new(ResidueRing { prime, theta_q }))
    }
    pub fn prime(&self) -> &FqPoly {
        &self.prime
    }
    pub fn degree(&self) -> usize {
        self.prime.degree().unwrap()
    }
    /// Number of elements, q^deg P.
    pub fn order(&self) -> u64 {
        (self.prime.field().size() as u64).pow(self.degree() as u32)
    }
    pub fn element(self: &Arc<Self>, p: &FqPoly) -> Residue {
        Residue { ring: self.clone(), c: p.rem(&self.prime).with_var(Var::Theta) }
    }
    pub fn theta(self: &Arc<Self>) -> Residue {
        self.element(&FqPoly::x(self.prime.field().clone(), Var::Theta))
    }
    pub fn constant(self: &Arc<Self>, a: u32) -> Residue {
        self.element(&FqPoly::constant(self.prime.field().clone(), a, Var::Theta))
    }
}

#[derive(Clone)]
pub struct Residue {
    ring: Arc<ResidueRing>,
    c: FqPoly,
}

impl PartialEq for Residue {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.c)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.c)
    }
}

impl Residue {
    pub fn ring(&self) -> &Arc<ResidueRing> {
        &self.ring
    }
    pub fn poly(&self) -> &FqPoly {
        &self.c
    }
    /// The F_q value when this residue is a constant.
    pub fn as_constant(&self) -> Option<u32> {
        if self.c.is_constant() {
            Some(self.c.coeff(0))
        } else {
            None
        }
    }
    fn like(&self, p: FqPoly) -> Residue {
        Residue { ring: self.ring.clone(), c: p }
    }
}

impl Scalar for Residue {
    fn zero_like(&self) -> Self {
        self.like(FqPoly::zero(self.c.field().clone(), Var::Theta))
    }
    fn one_like(&self) -> Self {
        self.like(FqPoly::one(self.c.field().clone(), Var::Theta))
    }
    fn is_zero(&self) -> bool {
        self.c.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self.like(self.c.add(&o.c))
    }
    fn minus(&self, o: &Self) -> Self {
        self.like(self.c.sub(&o.c))
    }
    fn times(&self, o: &Self) -> Self {
        self.like(self.c.mulmod(&o.c, &self.ring.prime))
    }
    fn negate(&self) -> Self {
        self.like(self.c.neg())
    }
    fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Singular);
        }
        let e = self.ring.order() - 2;
        Ok(self.like(self.c.powmod(e, &self.ring.prime)))
    }
    fn twist(&self, k: u32) -> Self {
        let mut c = self.c.clone();
        for _ in 0..k {
            c = c.compose(&self.ring.theta_q).rem(&self.ring.prime);
        }
        self.like(c)
    }
    fn theta_like(&self) -> Self {
        self.ring.theta()
    }
    fn int_like(&self, n: i64) -> Self {
        let a = self.c.field().from_int(n);
        self.ring.constant(a)
    }
    fn fq_like(&self, a: u32) -> Self {
        self.ring.constant(a)
    }
}

/// Image of a rational function in F_q[theta]/P; fails when P divides the denominator.
pub fn reduce_mod_prime(x: &ThetaRat, ring: &Arc<ResidueRing>) -> Result<Residue> {
    let d = ring.element(x.den());
    if d.is_zero() {
        return Err(Error::BadPrime(ring.prime().to_string()));
    }
    Ok(ring.element(x.num()).times(&d.recip()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_arith::spec::FieldSpec;

    #[test]
    fn reduce_examples() {
        let f = FieldSpec::prime(2).fq();
        let th = FqPoly::x(f.clone(), Var::Theta);
        let ring = ResidueRing::new(&th).unwrap();
        let x = ThetaRat::from_poly(th.mul(&th).add(&th));
        assert!(reduce_mod_prime(&x, &ring).unwrap().is_zero());
        let inv = ThetaRat::theta(f.clone()).recip().unwrap();
        assert!(matches!(reduce_mod_prime(&inv, &ring), Err(Error::BadPrime(_))));
    }

    #[test]
    fn f4_as_residue_field() {
        let f = FieldSpec::prime(2).fq();
        let p = FqPoly::new(f, vec![1, 1, 1], Var::Theta);
        let ring = ResidueRing::new(&p).unwrap();
        let w = ring.theta();
        // w^2 = w + 1
        assert_eq!(w.times(&w), w.plus(&w.one_like()));
        assert_eq!(w.twist(1), w.times(&w));
        assert_eq!(w.twist(2), w);
        assert!(w.times(&w.recip().unwrap()).is_one());
    }
}
