//! Tensor products, Carlitz powers, exterior powers and duals at the level of
//! T-presentations, plus the series Xi.

use std::sync::Arc;

use crate::analytic::TauSeries;
use crate::base_arith::matrix::{binomial, Mat};
use crate::base_arith::rat::ThetaRat;
use crate::base_arith::scalar::Scalar;
use crate::base_arith::spec::FieldSpec;
use crate::base_arith::tpoly::{TMat, TPoly};
use crate::cinf_series::{Cinf, Ctx, INF};
use crate::error::{Error, Result};
use crate::tmotive_core::{det_dimension, ArithMotive, SkewPoly, TBasis, TMotive};

/// A t-motive known through the matrix Q of tau on a T-basis.
#[derive(Clone, Debug)]
pub struct TPresentation<S: Scalar> {
    pub q: TMat<S>,
    pub rank: usize,
    pub dim: usize,
    /// c in det Q = c (T - theta)^dim.
    pub det_const: S,
}

impl<S: Scalar> TPresentation<S> {
    /// Read rank and dimension off a square Q via its determinant.
    pub fn from_q(q: TMat<S>) -> Result<TPresentation<S>> {
        let (dim, det_const) = det_dimension(&q)?;
        Ok(TPresentation { rank: q.rows(), dim, det_const, q })
    }
    pub fn of(m: &TMotive<S>) -> Result<TPresentation<S>> {
        let q = m.q_matrix()?;
        let p = TPresentation::from_q(q)?;
        if p.dim != m.n() {
            return Err(Error::Defect(format!("det Q gives dimension {}, presentation has n = {}", p.dim, m.n())));
        }
        Ok(p)
    }
}

/// Q_1 (x) Q_2 on the basis b_i (x) b'_j, index i * r_2 + j.
pub fn tensor<S: Scalar>(p1: &TPresentation<S>, p2: &TPresentation<S>) -> Result<TPresentation<S>> {
    let out = TPresentation::from_q(p1.q.kron(&p2.q))?;
    let expected = p1.dim * p2.rank + p2.dim * p1.rank;
    if out.dim != expected {
        return Err(Error::Defect(format!("tensor dimension {} differs from n1 r2 + n2 r1 = {expected}", out.dim)));
    }
    Ok(out)
}

/// k-th exterior power of a Drinfeld module: Q is the k-th compound matrix.
pub fn exterior_power<S: Scalar>(m: &TMotive<S>, k: usize) -> Result<TPresentation<S>> {
    if !m.is_drinfeld() {
        return Err(Error::Precondition("exterior powers are implemented for Drinfeld modules".into()));
    }
    let p = TPresentation::of(m)?;
    let r = p.rank;
    if k == 0 || k > r {
        return Err(Error::InvalidArgument(format!("k = {k} outside 1..={r}")));
    }
    let out = TPresentation::from_q(p.q.compound(k))?;
    if out.dim != binomial(r - 1, k - 1) || out.rank != binomial(r, k) {
        return Err(Error::Defect(format!("exterior power has (rank, dim) = ({}, {})", out.rank, out.dim)));
    }
    Ok(out)
}

/// The n-th tensor power of the Carlitz module with A_0 = theta + (shift), A_1 = e_{n1},
/// carrying the T-basis {e_1} with tau e_1 = (T - theta)^n e_1.
pub fn carlitz_power(spec: &FieldSpec, n: usize) -> Result<ArithMotive> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let z = ThetaRat::zero(spec.fq());
    let th = z.theta_like();
    let a0 = Mat::from_fn(n, n, &z, |i, j| {
        if i == j {
            th.clone()
        } else if j == i + 1 {
            z.one_like()
        } else {
            z.zero_like()
        }
    });
    let a1 = Mat::unit(n, n - 1, 0, &z);
    let m = TMotive::new(spec, vec![a0, a1])?;
    let sz = SkewPoly::zero(&z);
    let e1 = (0..n).map(|i| if i == 0 { SkewPoly::constant(z.one_like()) } else { sz.clone() }).collect();
    let q = Mat::from_rows(vec![vec![TPoly::linear(&th).pow_u(n as u32)]], &TPoly::zero(&z))?;
    m.with_basis(TBasis { vectors: vec![e1], q })
}

/// tau on coordinates over a T-basis: v -> v^(1) Q.
fn tau_vec<S: Scalar>(v: &[TPoly<S>], q: &TMat<S>) -> Vec<TPoly<S>> {
    (0..q.cols())
        .map(|l| {
            let mut acc = q.zero_elem().clone();
            for (k, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    acc = acc.add(&x.twist_coeffs(1).mul(q.get(k, l)));
                }
            }
            acc
        })
        .collect()
}

/// The tensor product of two Drinfeld modules with its explicit tau-presentation on
/// e1(x)e2, e1(x)tau^b e2 (b < r2), tau^a e1(x)e2 (a < r1), (T - theta)(e1(x)e2).
/// The T-basis tau^a e1 (x) tau^b e2 with Q = Q_1 (x) Q_2 is attached and verified.
pub fn drinfeld_tensor_tau_basis<S: Scalar>(m1: &TMotive<S>, m2: &TMotive<S>) -> Result<TMotive<S>> {
    if !m1.is_drinfeld() || !m2.is_drinfeld() {
        return Err(Error::Precondition("both factors must be Drinfeld modules".into()));
    }
    let z = m1.zero();
    let tz = TPoly::zero(&z);
    let (r1, r2) = (m1.k(), m2.k());
    let q = m1.companion_q()?.kron(&m2.companion_q()?);
    let big = r1 * r2;
    let n = r1 + r2;
    let unit = |k: usize| -> Vec<TPoly<S>> {
        (0..big).map(|i| if i == k { TPoly::constant(z.one_like()) } else { tz.clone() }).collect()
    };
    let mut basis: Vec<Vec<TPoly<S>>> = (0..r2).map(unit).collect();
    basis.extend((1..r1).map(|a| unit(a * r2)));
    let lin = TPoly::linear(&z.theta_like());
    basis.push(unit(0).iter().map(|p| p.mul(&lin)).collect());

    let max_l = r1.max(r2) + 1;
    let mut powers: Vec<Vec<Vec<TPoly<S>>>> = basis.iter().map(|b| vec![b.clone()]).collect();
    for l in 1..=max_l {
        for p in powers.iter_mut() {
            let next = tau_vec(&p[l - 1], &q);
            p.push(next);
        }
        // columns (j, l') for l' <= l; positions (coordinate, T-degree)
        let cols: Vec<(usize, usize)> = (0..=l).flat_map(|lp| (0..n).map(move |j| (j, lp))).collect();
        let deg = powers
            .iter()
            .flat_map(|p| p.iter().flatten())
            .filter_map(|x| x.degree())
            .max()
            .unwrap_or(0)
            + 2;
        let flat = |v: &[TPoly<S>]| -> Vec<S> { v.iter().flat_map(|p| (0..=deg).map(move |d| p.coeff(d))).collect() };
        let col_data: Vec<Vec<S>> = cols.iter().map(|&(j, lp)| flat(&powers[j][lp])).collect();
        let rows = col_data[0].len();
        let v = Mat::from_fn(rows, cols.len(), &z, |i, c| col_data[c][i].clone());
        let mut a = vec![Mat::zeros(n, n, &z); l + 1];
        let mut ok = true;
        for (i, b) in basis.iter().enumerate() {
            let tb: Vec<TPoly<S>> = b.iter().map(|p| p.shift(1)).collect();
            match v.solve(&flat(&tb))? {
                Some(x) => {
                    for (c, &(j, lp)) in cols.iter().enumerate() {
                        a[lp].set(i, j, x[c].clone());
                    }
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        while a.len() > 2 && a.last().unwrap().is_zero() {
            a.pop();
        }
        let m = TMotive::new(m1.spec(), a)?;
        let sz = SkewPoly::zero(&z);
        let mut vectors = Vec::with_capacity(big);
        for ia in 0..r1 {
            for ib in 0..r2 {
                let t = ia.min(ib);
                let j = if ia == ib {
                    0
                } else if ia < ib {
                    ib - ia
                } else {
                    r2 - 1 + ia - ib
                };
                let mut row = vec![sz.clone(); n];
                row[j] = SkewPoly::monomial(z.one_like(), t);
                vectors.push(row);
            }
        }
        return m.with_basis(TBasis { vectors, q });
    }
    Err(Error::Defect("no tau-presentation found on the listed basis".into()))
}

/// r x r matrix num / (T - theta)^exp over the fraction field in T.
#[derive(Clone, Debug)]
pub struct RationalQ<S: Scalar> {
    pub num: TMat<S>,
    pub exp: u32,
    /// Dimension of the t-motive this presentation describes (r - n for a dual).
    pub target_dim: usize,
}

impl<S: Scalar> RationalQ<S> {
    pub fn from_poly(p: &TPresentation<S>) -> RationalQ<S> {
        RationalQ { num: p.q.clone(), exp: 0, target_dim: p.dim }
    }
    fn normalized(mut self) -> RationalQ<S> {
        let th = self.num.zero_elem().zero_coeff().theta_like();
        let lin = TPoly::linear(&th);
        while self.exp > 0 {
            let divided: Option<Vec<TPoly<S>>> = self
                .num
                .entries()
                .map(|p| match p.divrem(&lin) {
                    Ok((qt, r)) if r.is_zero() => Some(qt),
                    _ => None,
                })
                .collect();
            let Some(divided) = divided else { return self };
            let cols = self.num.cols();
            self.num = Mat::from_fn(self.num.rows(), cols, self.num.zero_elem(), |i, j| divided[i * cols + j].clone());
            self.exp -= 1;
        }
        self
    }
    pub fn is_polynomial(&self) -> bool {
        self.exp == 0
    }
    /// (Q^t)^{-1}, normalized so the denominator exponent is minimal.
    pub fn dual(&self) -> Result<RationalQ<S>> {
        let (m, c) = det_dimension(&self.num)?;
        let ci = TPoly::constant(c.recip()?);
        let r = self.num.rows();
        let adj = self.num.transpose().adjugate().scale(&ci);
        let th = c.theta_like();
        let lin = TPoly::linear(&th);
        let target_dim = r
            .checked_sub(self.target_dim)
            .ok_or_else(|| Error::Defect("dimension exceeds rank".into()))?;
        let e = self.exp as i64 - m as i64;
        let out = if e >= 0 {
            let f = lin.pow_u(e as u32);
            RationalQ { num: adj.map(adj.zero_elem(), |p| p.mul(&f)), exp: 0, target_dim }
        } else {
            RationalQ { num: adj, exp: (-e) as u32, target_dim }
        };
        Ok(out.normalized())
    }
}

impl<S: Scalar> PartialEq for RationalQ<S> {
    fn eq(&self, o: &Self) -> bool {
        let th = self.num.zero_elem().zero_coeff().theta_like();
        let lin = TPoly::linear(&th);
        let (a, b) = (self, o);
        let fa = lin.pow_u(b.exp.saturating_sub(a.exp));
        let fb = lin.pow_u(a.exp.saturating_sub(b.exp));
        a.num.rows() == b.num.rows()
            && a.num.cols() == b.num.cols()
            && a.num.entries().zip(b.num.entries()).all(|(x, y)| x.mul(&fa) == y.mul(&fb))
    }
}

/// The dual presentation Q' = (Q^t)^{-1} with target dimension r - n.
pub fn dual_presentation<S: Scalar>(p: &TPresentation<S>) -> Result<RationalQ<S>> {
    RationalQ::from_poly(p).dual()
}

impl RationalQ<Cinf> {
    /// Expand as power series in T (the denominator is a unit at T = 0).
    pub fn to_series(&self, ctx: &Arc<Ctx>, order: usize) -> Result<Mat<TauSeries>> {
        let lin = TauSeries::from_tpoly(&TPoly::linear(&Cinf::theta(ctx)), ctx, order);
        let den = lin.inv()?;
        let mut f = TauSeries::constant(&Cinf::one(ctx), order);
        for _ in 0..self.exp {
            f = f.mul(&den);
        }
        let zs = TauSeries::zero(ctx, order);
        Ok(self.num.map(&zs, |p| TauSeries::from_tpoly(p, ctx, order).mul(&f)))
    }
}

/// Exponents sum_{j in S} q^j over i-subsets S of the naturals below `bound`, ascending.
fn subset_exponents(q: i128, i: usize, bound: i128) -> Vec<i128> {
    fn rec(q: i128, start: u32, k: usize, sum: i128, bound: i128, out: &mut Vec<i128>) {
        if k == 0 {
            if sum < bound {
                out.push(sum);
            }
            return;
        }
        let mut j = start;
        loop {
            // smallest completion: q^j + ... + q^(j+k-1)
            let Some(pj) = q.checked_pow(j) else { return };
            let geo = (q.pow(k as u32) - 1) / (q - 1);
            match pj.checked_mul(geo).and_then(|x| x.checked_add(sum)) {
                Some(m) if m < bound => rec(q, j + 1, k - 1, sum + pj, bound, out),
                _ => return,
            }
            j += 1;
        }
    }
    let mut out = Vec::new();
    rec(q, 0, i, 0, bound, &mut out);
    out.sort_unstable();
    out
}

/// Xi = c (1 - T/theta)(1 - T/theta^q)(1 - T/theta^(q^2))... with c^(q-1) = (-theta)^{-1},
/// truncated to `order` coefficients in T. Needs the coefficient field to hold c.
pub fn xi_series(ctx: &Arc<Ctx>, order: usize) -> Result<TauSeries> {
    let q = ctx.q() as i128;
    let c = Cinf::theta(ctx).neg().inv()?.nth_root(q as u64 - 1)?;
    let sc = ctx.scale();
    let w = ctx.config().precision as i128;
    let f = ctx.ext();
    let mut coeffs = Vec::with_capacity(order);
    for i in 0..order {
        let base = (q.pow(i as u32) - 1) / (q - 1);
        let sign = if i % 2 == 0 { 1 } else { f.neg(1) };
        let terms = subset_exponents(q, i, base + w).into_iter().map(|s| (s * sc, sign)).collect();
        let prec = if i == 0 { INF } else { (base + w) * sc };
        let sum = Cinf::from_terms(ctx, terms, prec);
        coeffs.push(c.mul(&sum));
    }
    Ok(TauSeries::new(ctx, coeffs))
}

/// First T-order where Xi and (T - theta) Xi^(1) differ, if any.
pub fn xi_relation_failure(xi: &TauSeries) -> Option<usize> {
    let lin = TPoly::linear(&Cinf::theta(xi.ctx()));
    xi.first_difference(&xi.frob(1).mul_tpoly(&lin))
}

/// Psi' = Xi^{-1} (Psi^t)^{-1}.
pub fn psi_dual(psi: &Mat<TauSeries>, xi: &TauSeries) -> Result<Mat<TauSeries>> {
    if !psi.is_square() {
        return Err(Error::SizeMismatch("Psi must be square".into()));
    }
    let inv = psi.transpose().inverse().map_err(|_| Error::Singular)?;
    let xinv = xi.inv()?;
    Ok(inv.scale(&xinv))
}

/// Whether Psi'^t Psi Xi = I through the truncation order.
pub fn psi_dual_holds(psi: &Mat<TauSeries>, dual: &Mat<TauSeries>, xi: &TauSeries) -> bool {
    dual.transpose().mul(psi).scale(xi).is_identity()
}
