//! Power series in T with coefficients in the series model, truncated at a fixed order.

use std::fmt;
use std::sync::Arc;

use crate::base_arith::scalar::Scalar;
use crate::base_arith::tpoly::TPoly;
use crate::cinf_series::{Cinf, Ctx};
use crate::error::{Error, Result};

/// sum_{i < order} c_i T^i.
#[derive(Clone)]
pub struct TauSeries {
    ctx: Arc<Ctx>,
    c: Vec<Cinf>,
}

impl TauSeries {
    pub fn new(ctx: &Arc<Ctx>, c: Vec<Cinf>) -> TauSeries {
        TauSeries { ctx: ctx.clone(), c }
    }
    pub fn zero(ctx: &Arc<Ctx>, order: usize) -> TauSeries {
        TauSeries { ctx: ctx.clone(), c: vec![Cinf::zero(ctx); order] }
    }
    pub fn constant(x: &Cinf, order: usize) -> TauSeries {
        let mut s = TauSeries::zero(x.ctx(), order);
        if order > 0 {
            s.c[0] = x.clone();
        }
        s
    }
    pub fn from_tpoly(p: &TPoly<Cinf>, ctx: &Arc<Ctx>, order: usize) -> TauSeries {
        TauSeries { ctx: ctx.clone(), c: (0..order).map(|i| p.coeff(i)).collect() }
    }
    pub fn ctx(&self) -> &Arc<Ctx> {
        &self.ctx
    }
    pub fn order(&self) -> usize {
        self.c.len()
    }
    pub fn coeffs(&self) -> &[Cinf] {
        &self.c
    }
    pub fn coeff(&self, i: usize) -> Cinf {
        self.c.get(i).cloned().unwrap_or_else(|| Cinf::zero(&self.ctx))
    }
    pub fn set(&mut self, i: usize, x: Cinf) {
        self.c[i] = x;
    }
    pub fn truncate(&self, order: usize) -> TauSeries {
        TauSeries { ctx: self.ctx.clone(), c: (0..order).map(|i| self.coeff(i)).collect() }
    }
    pub fn add(&self, o: &TauSeries) -> TauSeries {
        let n = self.order().min(o.order());
        TauSeries { ctx: self.ctx.clone(), c: (0..n).map(|i| self.c[i].add(&o.c[i])).collect() }
    }
    pub fn sub(&self, o: &TauSeries) -> TauSeries {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> TauSeries {
        TauSeries { ctx: self.ctx.clone(), c: self.c.iter().map(|x| x.neg()).collect() }
    }
    pub fn scale(&self, a: &Cinf) -> TauSeries {
        TauSeries { ctx: self.ctx.clone(), c: self.c.iter().map(|x| a.mul(x)).collect() }
    }
    pub fn mul(&self, o: &TauSeries) -> TauSeries {
        let n = self.order().min(o.order());
        let mut c = vec![Cinf::zero(&self.ctx); n];
        for i in 0..n {
            if self.c[i].terms().is_empty() && self.c[i].is_exact() {
                continue;
            }
            for j in 0..n - i {
                c[i + j] = c[i + j].add(&self.c[i].mul(&o.c[j]));
            }
        }
        TauSeries { ctx: self.ctx.clone(), c }
    }
    /// Multiply by a polynomial in T.
    pub fn mul_tpoly(&self, p: &TPoly<Cinf>) -> TauSeries {
        self.mul(&TauSeries::from_tpoly(p, &self.ctx, self.order()))
    }
    /// Coefficientwise Frobenius twist.
    pub fn frob(&self, k: u32) -> TauSeries {
        TauSeries { ctx: self.ctx.clone(), c: self.c.iter().map(|x| x.frob(k)).collect() }
    }
    /// Inverse as a power series; needs an invertible constant term.
    pub fn inv(&self) -> Result<TauSeries> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let a0i = self.c[0].inv().map_err(|_| Error::Singular)?;
        let mut out = vec![Cinf::zero(&self.ctx); n];
        out[0] = a0i.clone();
        for i in 1..n {
            let mut acc = Cinf::zero(&self.ctx);
            for j in 1..=i {
                acc = acc.add(&self.c[j].mul(&out[i - j]));
            }
            out[i] = acc.mul(&a0i).neg();
        }
        Ok(TauSeries { ctx: self.ctx.clone(), c: out })
    }
    /// Valuations of the coefficients (precision used as a bound for vanishing ones).
    pub fn valuation_profile(&self) -> Vec<i128> {
        self.c.iter().map(|x| x.val_or_prec()).collect()
    }
    /// Whether the coefficient valuations strictly increase over the last `window` entries.
    pub fn decays(&self, window: usize) -> bool {
        let v = self.valuation_profile();
        if v.len() < window || window < 2 {
            return false;
        }
        v[v.len() - window..].windows(2).all(|w| w[1] > w[0])
    }
    /// First index where the two series differ at precision.
    pub fn first_difference(&self, o: &TauSeries) -> Option<usize> {
        let n = self.order().min(o.order());
        (0..n).find(|&i| !self.c[i].eq_at_prec(&o.c[i]))
    }
}

impl fmt::Display for TauSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.c.iter().enumerate() {
            if c.terms().is_empty() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "*T".to_string(),
                _ => format!("*T^{i}"),
            };
            parts.push(format!("({c}){mono}"));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}+O(T^{})", parts.join("+"), self.order())
    }
}

impl fmt::Debug for TauSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PartialEq for TauSeries {
    fn eq(&self, o: &Self) -> bool {
        self.first_difference(o).is_none()
    }
}

impl Scalar for TauSeries {
    fn zero_like(&self) -> Self {
        TauSeries::zero(&self.ctx, self.order())
    }
    fn one_like(&self) -> Self {
        TauSeries::constant(&Cinf::one(&self.ctx), self.order())
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.terms().is_empty())
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
        TauSeries::constant(&Cinf::theta(&self.ctx), self.order())
    }
    fn int_like(&self, n: i64) -> Self {
        TauSeries::constant(&Cinf::from_int(&self.ctx, n), self.order())
    }
    fn fq_like(&self, a: u32) -> Self {
        TauSeries::constant(&Cinf::from_fq(&self.ctx, a), self.order())
    }
    fn pivot_key(&self) -> i128 {
        match self.c.first().and_then(|x| x.valuation()) {
            Some(v) => -v,
            None => i128::MIN,
        }
    }
}
