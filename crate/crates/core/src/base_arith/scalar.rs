use std::fmt;

use crate::error::Result;

/// A coefficient domain: F_q, F_q(theta), F_q[theta]/P, the truncated model of C_inf,
/// or polynomials in T over one of those.
///
/// Every value knows how to build the constants of its own domain, so generic code never
/// needs a separate context argument.
pub trait Scalar: Clone + fmt::Debug + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Multiplicative inverse; fails on zero or on non-units of a ring.
    fn recip(&self) -> Result<Self>;
    /// The Frobenius twist x -> x^(q^k).
    fn twist(&self, k: u32) -> Self;
    /// The element theta of this domain.
    fn theta_like(&self) -> Self;
    /// The image of an integer.
    fn int_like(&self, n: i64) -> Self;
    /// The image of an element of F_q (given by its encoding).
    fn fq_like(&self, a: u32) -> Self;
    /// Larger means a better pivot. Exact domains return 0 for every nonzero value.
    fn pivot_key(&self) -> i128 {
        0
    }

    fn is_one(&self) -> bool {
        self.minus(&self.one_like()).is_zero()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        acc
    }
}
