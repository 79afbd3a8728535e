//! Truncated series in theta^{-1} with fractional exponents.

use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;

use super::ctx::Ctx;
use crate::base_arith::poly::fmt_coeff;
use crate::base_arith::rat::ThetaRat;
use crate::base_arith::scalar::Scalar;
use crate::error::{Error, Result};

/// Precision of an exact element.
pub const INF: i128 = i128::MAX / 8;

pub(crate) fn sadd(a: i128, b: i128) -> i128 {
    if a >= INF || b >= INF {
        INF
    } else {
        (a + b).min(INF)
    }
}

fn smul(a: i128, k: i128) -> i128 {
    if a >= INF {
        INF
    } else {
        a.saturating_mul(k).min(INF)
    }
}

/// sum c * theta^(-e / scale) over the stored (e, c), known modulo valuation `prec`.
#[derive(Clone)]
pub struct Cinf {
    ctx: Arc<Ctx>,
    terms: Vec<(i128, u32)>,
    prec: i128,
}

impl Cinf {
    pub fn from_terms(ctx: &Arc<Ctx>, mut terms: Vec<(i128, u32)>, prec: i128) -> Cinf {
        terms.sort_unstable_by_key(|t| t.0);
        let f = ctx.ext();
        let mut out: Vec<(i128, u32)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if e >= prec {
                break;
            }
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 = f.add(last.1, c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Cinf { ctx: ctx.clone(), terms: out, prec: prec.min(INF) }
    }
    pub fn zero(ctx: &Arc<Ctx>) -> Cinf {
        Cinf { ctx: ctx.clone(), terms: vec![], prec: INF }
    }
    /// Zero known only up to valuation `prec` (scaled).
    pub fn zero_to(ctx: &Arc<Ctx>, prec: i128) -> Cinf {
        Cinf { ctx: ctx.clone(), terms: vec![], prec }
    }
    pub fn one(ctx: &Arc<Ctx>) -> Cinf {
        Cinf::monomial(ctx, 1, 0)
    }
    pub fn theta(ctx: &Arc<Ctx>) -> Cinf {
        Cinf::monomial(ctx, 1, -ctx.scale())
    }
    /// c * theta^(-e/scale) with c in the coefficient field.
    pub fn monomial(ctx: &Arc<Ctx>, c: u32, e: i128) -> Cinf {
        Cinf::from_terms(ctx, vec![(e, c)], INF)
    }
    /// a * theta^k with a in F_q.
    pub fn theta_pow(ctx: &Arc<Ctx>, a: u32, k: i64) -> Cinf {
        Cinf::monomial(ctx, ctx.embed(a), -(k as i128) * ctx.scale())
    }
    pub fn from_fq(ctx: &Arc<Ctx>, a: u32) -> Cinf {
        Cinf::monomial(ctx, ctx.embed(a), 0)
    }
    pub fn from_int(ctx: &Arc<Ctx>, n: i64) -> Cinf {
        Cinf::from_fq(ctx, ctx.fq().from_int(n))
    }
    /// Scaled exponent for the valuation num/den; fails off the grid.
    pub fn scaled(ctx: &Ctx, v: Ratio<i128>) -> Result<i128> {
        let x = v * Ratio::from_integer(ctx.scale());
        if x.is_integer() {
            Ok(x.to_integer())
        } else {
            Err(Error::SCapExceeded)
        }
    }

    /// Expansion of a rational function at infinity: exact when the denominator
    /// is a power of theta, otherwise to relative working precision.
    pub fn from_rat(ctx: &Arc<Ctx>, x: &ThetaRat) -> Cinf {
        let sc = ctx.scale();
        if let Some(terms) = x.laurent_terms() {
            let t = terms.iter().map(|&(k, c)| (-(k as i128) * sc, ctx.embed(c))).collect();
            return Cinf::from_terms(ctx, t, INF);
        }
        let f = x.field();
        let num = x.num().coeffs();
        let den = x.den().coeffs();
        let dn = num.len() - 1;
        let dd = den.len() - 1;
        // In u = 1/theta: x = theta^(dn-dd) * N(u)/D(u), D(0) = 1.
        let nu: Vec<u32> = num.iter().rev().copied().collect();
        let du: Vec<u32> = den.iter().rev().copied().collect();
        let n_terms = ctx.config().precision.max(1) as usize;
        let mut quo = Vec::with_capacity(n_terms);
        let mut rem: Vec<u32> = (0..n_terms).map(|i| nu.get(i).copied().unwrap_or(0)).collect();
        for i in 0..n_terms {
            let c = rem[i];
            quo.push(c);
            if c != 0 {
                for (j, &d) in du.iter().enumerate().skip(1) {
                    if i + j < n_terms {
                        rem[i + j] = f.sub(rem[i + j], f.mul(c, d));
                    }
                }
            }
        }
        let shift = dd as i128 - dn as i128;
        let terms =
            quo.iter().enumerate().map(|(i, &c)| ((shift + i as i128) * sc, ctx.embed(c))).collect();
        Cinf::from_terms(ctx, terms, (shift + n_terms as i128) * sc)
    }

    pub fn ctx(&self) -> &Arc<Ctx> {
        &self.ctx
    }
    pub fn terms(&self) -> &[(i128, u32)] {
        &self.terms
    }
    pub fn prec(&self) -> i128 {
        self.prec
    }
    pub fn is_exact(&self) -> bool {
        self.prec >= INF
    }
    /// Minimal stored exponent (scaled); None when no term is known.
    pub fn valuation(&self) -> Option<i128> {
        self.terms.first().map(|t| t.0)
    }
    /// Valuation, or the precision as a lower bound when no term is stored.
    pub fn val_or_prec(&self) -> i128 {
        self.valuation().unwrap_or(self.prec)
    }
    pub fn lead(&self) -> Option<(i128, u32)> {
        self.terms.first().copied()
    }
    /// A scaled exponent as a rational valuation.
    pub fn ratio(&self, e: i128) -> Ratio<i128> {
        Ratio::new(e, self.ctx.scale())
    }
    pub fn valuation_ratio(&self) -> Option<Ratio<i128>> {
        self.valuation().map(|e| self.ratio(e))
    }
    pub fn prec_ratio(&self) -> Option<Ratio<i128>> {
        (!self.is_exact()).then(|| self.ratio(self.prec))
    }
    /// True when every coefficient lies in F_q.
    pub fn over_fq(&self) -> bool {
        self.terms.iter().all(|t| self.ctx.restrict(t.1).is_some())
    }

    pub fn with_prec(&self, p: i128) -> Cinf {
        if p >= self.prec {
            return self.clone();
        }
        let terms = self.terms.iter().copied().take_while(|t| t.0 < p).collect();
        Cinf { ctx: self.ctx.clone(), terms, prec: p }
    }

    fn same_ctx(&self, o: &Cinf) {
        debug_assert!(Arc::ptr_eq(&self.ctx, &o.ctx) || *self.ctx == *o.ctx, "mixed contexts");
    }

    pub fn add(&self, o: &Cinf) -> Cinf {
        self.same_ctx(o);
        let prec = self.prec.min(o.prec);
        let f = self.ctx.ext();
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let t = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                a[i - 1]
            } else if i >= a.len() || b[j].0 < a[i].0 {
                j += 1;
                b[j - 1]
            } else {
                i += 1;
                j += 1;
                (a[i - 1].0, f.add(a[i - 1].1, b[j - 1].1))
            };
            if t.0 >= prec {
                break;
            }
            if t.1 != 0 {
                out.push(t);
            }
        }
        Cinf { ctx: self.ctx.clone(), terms: out, prec }
    }
    pub fn neg(&self) -> Cinf {
        let f = self.ctx.ext();
        let terms = self.terms.iter().map(|&(e, c)| (e, f.neg(c))).collect();
        Cinf { ctx: self.ctx.clone(), terms, prec: self.prec }
    }
    pub fn sub(&self, o: &Cinf) -> Cinf {
        self.add(&o.neg())
    }
    /// Multiply by a coefficient-field constant.
    pub fn scale_by(&self, c: u32) -> Cinf {
        if c == 0 {
            return Cinf::zero(&self.ctx);
        }
        let f = self.ctx.ext();
        let terms = self.terms.iter().map(|&(e, x)| (e, f.mul(x, c))).collect();
        Cinf { ctx: self.ctx.clone(), terms, prec: self.prec }
    }
    /// Multiply by c * theta^(-e).
    pub fn mul_monomial(&self, c: u32, e: i128) -> Cinf {
        if c == 0 {
            return Cinf::zero(&self.ctx);
        }
        let f = self.ctx.ext();
        let terms = self.terms.iter().map(|&(x, d)| (x + e, f.mul(d, c))).collect();
        Cinf { ctx: self.ctx.clone(), terms, prec: sadd(self.prec, e) }
    }

    pub fn mul(&self, o: &Cinf) -> Cinf {
        self.same_ctx(o);
        let prec = sadd(self.prec, o.val_or_prec()).min(sadd(o.prec, self.val_or_prec()));
        self.mul_to(o, prec)
    }

    /// Product truncated at `prec` (which must not exceed the propagated precision).
    fn mul_to(&self, o: &Cinf, prec: i128) -> Cinf {
        let f = self.ctx.ext();
        let mut acc: Vec<(i128, u32)> = Vec::new();
        for &(ea, ca) in &self.terms {
            for &(eb, cb) in &o.terms {
                let e = ea + eb;
                if e >= prec {
                    break;
                }
                acc.push((e, f.mul(ca, cb)));
            }
        }
        Cinf::from_terms(&self.ctx, acc, prec)
    }

    /// 1/x. Exact monomials invert exactly; otherwise the result carries the
    /// propagated precision, capped at relative working precision.
    pub fn inv(&self) -> Result<Cinf> {
        let (v, lc) = self.lead().ok_or_else(|| {
            Error::PrecisionExhausted("inverse of an element indistinguishable from zero".into())
        })?;
        let f = self.ctx.ext();
        let lci = f.inv(lc).unwrap();
        if self.terms.len() == 1 && self.is_exact() {
            return Ok(Cinf::monomial(&self.ctx, lci, -v));
        }
        let target = sadd(self.prec, -2 * v).min(-v + self.ctx.work());
        // Long division: x * y = 1 + R with R pushed past target + v.
        let x = self.with_prec(INF).clone_exact();
        let mut y: Vec<(i128, u32)> = Vec::new();
        let mut r = Cinf::one(&self.ctx).neg();
        let bound = sadd(target, v);
        loop {
            r = r.with_prec(bound);
            let Some((er, cr)) = r.lead() else { break };
            let t = (er - v, f.neg(f.mul(cr, lci)));
            y.push(t);
            r = r.add(&x.mul_monomial(t.1, t.0));
        }
        Ok(Cinf::from_terms(&self.ctx, y, target))
    }

    fn clone_exact(&self) -> Cinf {
        Cinf { ctx: self.ctx.clone(), terms: self.terms.clone(), prec: INF }
    }

    pub fn div(&self, o: &Cinf) -> Result<Cinf> {
        Ok(self.mul(&o.inv()?))
    }

    /// x^(q^k).
    pub fn frob(&self, k: u32) -> Cinf {
        if k == 0 {
            return self.clone();
        }
        let qk = (self.ctx.q() as i128).pow(k);
        let terms = self.terms.iter().map(|&(e, c)| (e * qk, self.ctx.frob(c, k))).collect();
        Cinf { ctx: self.ctx.clone(), terms, prec: smul(self.prec, qk) }
    }

    /// The unique y with y^q = x.
    pub fn qth_root(&self) -> Result<Cinf> {
        let q = self.ctx.q() as i128;
        let mut terms = Vec::with_capacity(self.terms.len());
        let prec = if self.prec >= INF { INF } else { self.prec.div_euclid(q) };
        for &(e, c) in &self.terms {
            if e % q != 0 {
                return Err(Error::SCapExceeded);
            }
            if e / q >= prec {
                break;
            }
            terms.push((e / q, self.ctx.frob_inv(c)));
        }
        Ok(Cinf { ctx: self.ctx.clone(), terms, prec })
    }

    pub fn pow_u(&self, e: u64) -> Cinf {
        let mut acc = Cinf::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Coefficient of theta^(-e), zero when absent.
    pub fn coeff_at(&self, e: i128) -> u32 {
        self.terms.binary_search_by_key(&e, |t| t.0).map(|i| self.terms[i].1).unwrap_or(0)
    }

    /// Move into a context with a larger coefficient field.
    pub fn lift(&self, to: &Arc<Ctx>) -> Result<Cinf> {
        if Arc::ptr_eq(&self.ctx, to) || *self.ctx == **to {
            return Ok(Cinf { ctx: to.clone(), ..self.clone() });
        }
        let table = to.lift_table(&self.ctx)?;
        let terms = self.terms.iter().map(|&(e, c)| (e, table[c as usize])).collect();
        Ok(Cinf { ctx: to.clone(), terms, prec: self.prec })
    }

    /// Equality modulo the coarser of the two precisions.
    pub fn eq_at_prec(&self, o: &Cinf) -> bool {
        self.sub(o).terms.is_empty()
    }

    pub fn fmt_coeff(&self, c: u32) -> String {
        match self.ctx.restrict(c) {
            Some(a) => fmt_coeff(self.ctx.fq(), a),
            None => {
                let l = self.ctx.ext().log(c).unwrap();
                if l == 1 {
                    "w".to_string()
                } else {
                    format!("w^{l}")
                }
            }
        }
    }
}

/// "3", "-1/2" style text of a rational; parenthesized when fractional.
pub fn fmt_ratio(r: Ratio<i128>) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

impl fmt::Display for Cinf {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::base_arith::poly::{fmt_term, join_terms};
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|&(e, c)| {
                let power = -self.ratio(e);
                let mono = if power == Ratio::from_integer(0) {
                    String::new()
                } else if power == Ratio::from_integer(1) {
                    "t".to_string()
                } else {
                    format!("t^{}", fmt_ratio(power))
                };
                fmt_term(&self.fmt_coeff(c), &mono)
            })
            .collect();
        write!(out, "{}", join_terms(&terms))?;
        if !self.is_exact() {
            write!(out, "@{}", fmt_ratio(self.ratio(self.prec)))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cinf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PartialEq for Cinf {
    fn eq(&self, o: &Self) -> bool {
        self.eq_at_prec(o)
    }
}

impl Scalar for Cinf {
    fn zero_like(&self) -> Self {
        Cinf::zero(&self.ctx)
    }
    fn one_like(&self) -> Self {
        Cinf::one(&self.ctx)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
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
        self.inv()
    }
    fn twist(&self, k: u32) -> Self {
        self.frob(k)
    }
    fn theta_like(&self) -> Self {
        Cinf::theta(&self.ctx)
    }
    fn int_like(&self, n: i64) -> Self {
        Cinf::from_int(&self.ctx, n)
    }
    fn fq_like(&self, a: u32) -> Self {
        Cinf::from_fq(&self.ctx, a)
    }
    fn pivot_key(&self) -> i128 {
        self.valuation().map(|v| -v).unwrap_or(i128::MIN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_arith::spec::FieldSpec;
    use crate::cinf_series::ctx::CinfConfig;

    fn ctx(p: u32) -> Arc<Ctx> {
        Ctx::new(&FieldSpec::prime(p), 1, &CinfConfig::default()).unwrap()
    }

    #[test]
    fn valuations() {
        let c = ctx(2);
        let s = c.scale();
        assert_eq!(Cinf::theta(&c).valuation(), Some(-s));
        assert_eq!(Cinf::one(&c).valuation(), Some(0));
        let x = Cinf::theta_pow(&c, 1, -3).add(&Cinf::theta_pow(&c, 1, -5));
        assert_eq!(x.valuation(), Some(3 * s));
    }

    #[test]
    fn inverse_of_geometric() {
        let c = ctx(2);
        let s = c.scale();
        let x = Cinf::one(&c).add(&Cinf::theta_pow(&c, 1, -1)).with_prec(4 * s);
        let y = x.inv().unwrap();
        assert_eq!(y.to_string(), "1+t^-1+t^-2+t^-3@4");
        assert!(x.mul(&y).eq_at_prec(&Cinf::one(&c)));
        let t = Cinf::theta(&c);
        assert_eq!(t.mul(&t.inv().unwrap()), Cinf::one(&c));
    }

    #[test]
    fn precision_propagation() {
        let c = ctx(2);
        let s = c.scale();
        let x = Cinf::one(&c).with_prec(5 * s);
        let y = Cinf::theta_pow(&c, 1, 2);
        assert_eq!(x.mul(&y).prec(), 3 * s);
    }

    #[test]
    fn qth_roots() {
        let c = ctx(2);
        let s = c.scale();
        let x = Cinf::theta_pow(&c, 1, -2).qth_root().unwrap();
        assert_eq!(x, Cinf::theta_pow(&c, 1, -1));
        let r = Cinf::theta(&c).qth_root().unwrap();
        assert_eq!(r.valuation(), Some(-s / 2));
        assert_eq!(r.to_string(), "t^(1/2)");
        assert_eq!(r.frob(1), Cinf::theta(&c));
    }

    #[test]
    fn rational_expansion() {
        let c = ctx(2);
        let f = c.fq().clone();
        let t = ThetaRat::theta(f.clone());
        let x = t.plus(&t.one_like()).recip().unwrap();
        let e = Cinf::from_rat(&c, &x);
        assert_eq!(e.valuation(), Some(c.scale()));
        let back = e.mul(&Cinf::from_rat(&c, &t.plus(&t.one_like())));
        assert!(back.eq_at_prec(&Cinf::one(&c)));
    }
}
