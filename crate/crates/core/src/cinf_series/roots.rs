//! N-th roots of series for N prime to p.

use super::element::{Cinf, INF};
use crate::error::{Error, Result};

/// Every x with x^n = c in the coefficient field; asks for a larger field when there is
/// none (or, with `all`, when not all n-th roots of unity are present).
fn coeff_roots(x: &Cinf, c: u32, n: u64, all: bool) -> Result<Vec<u32>> {
    let ctx = x.ctx();
    let found = ctx.ext().nth_roots(c, n);
    let enough = |roots: &[u32], size: u32| -> bool {
        if all {
            let g = num_integer::gcd(n, size as u64 - 1);
            !roots.is_empty() && g == n
        } else {
            !roots.is_empty()
        }
    };
    if enough(&found, ctx.ext().size()) {
        return Ok(found);
    }
    let mut k = 2;
    loop {
        let m = ctx.m() * k;
        let big = ctx.with_m(m).map_err(|_| Error::FieldCap { needed: m, cap: ctx.m_cap() })?;
        let t = big.lift_table(ctx)?;
        let r = big.ext().nth_roots(t[c as usize], n);
        if enough(&r, big.ext().size()) {
            return Err(Error::NeedExtension(m));
        }
        k += 1;
    }
}

/// 1 + eps with (1 + eps)^n = b, for b = 1 + (higher terms).
fn unit_root(b: &Cinf, n: u64) -> Result<Cinf> {
    let ctx = b.ctx();
    let f = ctx.ext();
    let ninv = f.inv(ctx.embed(ctx.fq().from_int(n as i64))).ok_or_else(|| {
        Error::InvalidArgument(format!("root degree {n} is divisible by the characteristic"))
    })?;
    let target = b.prec().min(ctx.work());
    let mut u = Cinf::one(ctx);
    for _ in 0..100_000 {
        let raw = b.sub(&u.pow_u(n));
        if raw.is_exact() && raw.terms().is_empty() {
            return Ok(Cinf::from_terms(ctx, u.terms().to_vec(), INF));
        }
        let r = raw.with_prec(target);
        if r.terms().is_empty() {
            return Ok(Cinf::from_terms(ctx, u.terms().to_vec(), target));
        }
        let corr = r.scale_by(ninv);
        u = u.add(&Cinf::from_terms(ctx, corr.terms().to_vec(), INF));
    }
    Err(Error::PrecisionExhausted("root iteration did not settle".into()))
}

impl Cinf {
    /// The n-th root whose leading coefficient lies in the smallest available field
    /// (F_q when possible, else the smallest encoding).
    pub fn nth_root(&self, n: u64) -> Result<Cinf> {
        Ok(self.nth_roots_impl(n, false)?.remove(0))
    }

    /// All n-th roots; grows the coefficient field until every one is present.
    pub fn nth_roots(&self, n: u64) -> Result<Vec<Cinf>> {
        self.nth_roots_impl(n, true)
    }

    fn nth_roots_impl(&self, n: u64, all: bool) -> Result<Vec<Cinf>> {
        let ctx = self.ctx().clone();
        let (v, c) = self
            .lead()
            .ok_or_else(|| Error::PrecisionExhausted("root of an element indistinguishable from zero".into()))?;
        if v % n as i128 != 0 {
            return Err(Error::SCapExceeded);
        }
        let mut roots = coeff_roots(self, c, n, all)?;
        roots.sort_by_key(|&r| (ctx.restrict(r).is_none(), r));
        let mono = Cinf::monomial(&ctx, c, v);
        let b = self.mul(&mono.inv()?);
        let u = unit_root(&b, n)?;
        Ok(roots.into_iter().map(|r| u.mul_monomial(r, v / n as i128)).collect())
    }
}

#[cfg(test)]
mod tests {
    use crate::base_arith::spec::FieldSpec;
    use crate::cinf_series::{with_growth, CinfConfig, Cinf, Ctx};
    use crate::error::Error;

    #[test]
    fn cube_root_of_theta_cubed() {
        let ctx = Ctx::new(&FieldSpec::prime(2), 1, &CinfConfig::default()).unwrap();
        let a = Cinf::theta_pow(&ctx, 1, -3);
        assert_eq!(a.nth_root(3).unwrap(), Cinf::theta_pow(&ctx, 1, -1));
        assert_eq!(a.nth_roots(3).unwrap_err(), Error::NeedExtension(2));
        let all = with_growth(&ctx, |c| Cinf::theta_pow(c, 1, -3).nth_roots(3)).unwrap();
        assert_eq!(all.len(), 3);
        for r in &all {
            assert!(r.pow_u(3).eq_at_prec(&all[0].pow_u(3)));
        }
    }

    #[test]
    fn root_of_one_plus() {
        let ctx = Ctx::new(&FieldSpec::prime(2), 1, &CinfConfig::default()).unwrap();
        let b = Cinf::one(&ctx).add(&Cinf::theta_pow(&ctx, 1, -1));
        let r = b.nth_root(3).unwrap();
        assert!(r.pow_u(3).eq_at_prec(&b));
    }
}
