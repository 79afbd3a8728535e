//! Anderson t-motives given by T e = (A_0 + A_1 tau + ... + A_k tau^k) e.

pub mod skew;

use std::sync::Arc;

use crate::base_arith::matrix::Mat;
use crate::base_arith::rat::ThetaRat;
use crate::base_arith::scalar::Scalar;
use crate::base_arith::spec::FieldSpec;
use crate::base_arith::tpoly::{TMat, TPoly};
use crate::cinf_series::{Cinf, Ctx};
use crate::error::{Error, Result};
pub use skew::SkewPoly;

/// A caller-supplied T-basis: row vectors over C{tau} (coordinates on e_1..e_n)
/// and the matrix Q with tau b_i = sum_j Q_ij(T) b_j.
#[derive(Clone)]
pub struct TBasis<S> {
    pub vectors: Vec<Vec<SkewPoly<S>>>,
    pub q: TMat<S>,
}

#[derive(Clone)]
pub struct TMotive<S> {
    spec: FieldSpec,
    a: Vec<Mat<S>>,
    n: usize,
    nil: Mat<S>,
    basis: Option<TBasis<S>>,
}

impl<S: Scalar> std::fmt::Debug for TMotive<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TMotive(q={}, n={}, A={:?})", self.spec.q(), self.n, self.a)
    }
}

pub type ArithMotive = TMotive<ThetaRat>;
pub type AnalyticMotive = TMotive<Cinf>;

impl<S: Scalar> TMotive<S> {
    /// Validate A_0..A_k: equal square sizes, A_k nonzero, A_0 - theta nilpotent.
    pub fn new(spec: &FieldSpec, a: Vec<Mat<S>>) -> Result<TMotive<S>> {
        if a.len() < 2 {
            return Err(Error::InvalidArgument("need A_0 and at least A_1".into()));
        }
        let n = a[0].rows();
        if a.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::SizeMismatch("all A_i must be n x n for one n".into()));
        }
        if n == 0 {
            return Err(Error::SizeMismatch("empty matrices".into()));
        }
        if a.last().unwrap().is_zero() {
            return Err(Error::InvalidArgument("the top coefficient A_k is zero".into()));
        }
        let zero = a[0].zero_elem().clone();
        let nil = a[0].sub(&Mat::scalar(n, &zero.theta_like()));
        if !nil.pow(n as u32).is_zero() {
            return Err(Error::NotNilpotent);
        }
        Ok(TMotive { spec: spec.clone(), a, n, nil, basis: None })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }
    pub fn q(&self) -> u32 {
        self.spec.q()
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k(&self) -> usize {
        self.a.len() - 1
    }
    pub fn coeff(&self, i: usize) -> &Mat<S> {
        &self.a[i]
    }
    pub fn coeffs(&self) -> &[Mat<S>] {
        &self.a
    }
    pub fn top(&self) -> &Mat<S> {
        self.a.last().unwrap()
    }
    pub fn nilpotent_part(&self) -> &Mat<S> {
        &self.nil
    }
    pub fn zero(&self) -> S {
        self.a[0].zero_elem().clone()
    }
    pub fn basis(&self) -> Option<&TBasis<S>> {
        self.basis.as_ref()
    }
    pub fn is_drinfeld(&self) -> bool {
        self.n == 1
    }
    /// a_1..a_k of a Drinfeld module T e = theta e + a_1 tau e + ...
    pub fn drinfeld_coeffs(&self) -> Result<Vec<S>> {
        if self.n != 1 {
            return Err(Error::Precondition("not a Drinfeld module (n != 1)".into()));
        }
        Ok(self.a[1..].iter().map(|m| m.get(0, 0).clone()).collect())
    }
    fn top_invertible(&self) -> bool {
        matches!(self.top().det(), Ok(d) if !d.is_zero())
    }

    /// The T-action as an n x n matrix over C{tau}: E = sum A_i tau^i.
    pub fn action_matrix(&self) -> Mat<SkewPoly<S>> {
        let z = self.zero();
        let sz = SkewPoly::zero(&z);
        Mat::from_fn(self.n, self.n, &sz, |r, c| {
            SkewPoly::new(self.a.iter().map(|m| m.get(r, c).clone()).collect(), &z)
        })
    }

    /// Attach a T-basis after checking closure and the determinant criterion.
    pub fn with_basis(mut self, basis: TBasis<S>) -> Result<TMotive<S>> {
        self.verify_basis(&basis)?;
        self.basis = Some(basis);
        Ok(self)
    }

    pub fn verify_basis(&self, basis: &TBasis<S>) -> Result<()> {
        let r = basis.vectors.len();
        if basis.q.rows() != r || basis.q.cols() != r {
            return Err(Error::SizeMismatch(format!("basis of length {r} needs an {r}x{r} Q")));
        }
        if basis.vectors.iter().any(|v| v.len() != self.n) {
            return Err(Error::SizeMismatch("basis vectors must have n coordinates".into()));
        }
        let e = self.action_matrix();
        let deg = basis.q.entries().filter_map(|p| p.degree()).max().unwrap_or(0);
        // T^l b_j for every j and l <= deg.
        let mut powers: Vec<Vec<Vec<SkewPoly<S>>>> = Vec::with_capacity(r);
        for b in &basis.vectors {
            let mut list = vec![b.clone()];
            for _ in 0..deg {
                let last = list.last().unwrap();
                list.push(row_times(last, &e));
            }
            powers.push(list);
        }
        for (i, b) in basis.vectors.iter().enumerate() {
            let lhs: Vec<SkewPoly<S>> = b.iter().map(|p| p.tau_left(1)).collect();
            let mut rhs: Vec<SkewPoly<S>> = vec![SkewPoly::zero(&self.zero()); self.n];
            for (j, pw) in powers.iter().enumerate() {
                for (l, c) in basis.q.get(i, j).coeffs().iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (x, p) in rhs.iter_mut().zip(&pw[l]) {
                        *x = x.add(&p.scale_left(c));
                    }
                }
            }
            if lhs != rhs {
                return Err(Error::InvalidArgument(format!("tau b_{} is not sum_j Q_{}j b_j", i + 1, i + 1)));
            }
        }
        self.check_det(&basis.q)?;
        Ok(())
    }

    /// (r, n): r = k n when A_k is invertible, else the length of the attached basis.
    pub fn rank_dim(&self) -> Result<(usize, usize)> {
        if let Some(b) = &self.basis {
            return Ok((b.vectors.len(), self.n));
        }
        if self.top_invertible() {
            return Ok((self.k() * self.n, self.n));
        }
        Err(Error::Unsupported("det A_k = 0 and no T-basis was supplied".into()))
    }

    /// Matrix of tau on the T-basis {tau^i e_j}; needs A_k invertible.
    /// Last block row: A_k^{-1} (T - A_0, -A_1, ..., -A_{k-1}).
    pub fn companion_q(&self) -> Result<TMat<S>> {
        let top_inv = self.top().inverse().map_err(|_| {
            Error::Unsupported("companion matrix needs an invertible top coefficient".into())
        })?;
        let z = self.zero();
        let tz = TPoly::zero(&z);
        let (n, k) = (self.n, self.k());
        let r = n * k;
        let mut q = Mat::zeros(r, r, &tz);
        for blk in 0..k - 1 {
            for i in 0..n {
                q.set(blk * n + i, (blk + 1) * n + i, TPoly::constant(z.one_like()));
            }
        }
        let t = TPoly::t(&z);
        for blk in 0..k {
            let m = top_inv.mul(&self.a[blk]);
            for i in 0..n {
                for j in 0..n {
                    let mut e = TPoly::constant(m.get(i, j).negate());
                    if blk == 0 {
                        e = e.add(&t.scale(top_inv.get(i, j)));
                    }
                    q.set((k - 1) * n + i, blk * n + j, e);
                }
            }
        }
        Ok(q)
    }

    /// Q from the attached basis, else the companion matrix.
    pub fn q_matrix(&self) -> Result<TMat<S>> {
        match &self.basis {
            Some(b) => Ok(b.q.clone()),
            None => self.companion_q(),
        }
    }

    /// Check det Q = c (T - theta)^n with c a nonzero constant; returns c.
    pub fn check_det(&self, q: &TMat<S>) -> Result<S> {
        let (m, c) = det_dimension(q)?;
        if m != self.n {
            return Err(Error::InvalidArgument(format!(
                "det Q has (T - theta)-multiplicity {m}, expected n = {}",
                self.n
            )));
        }
        Ok(c)
    }

    /// C^{-1} A_i C^(i) for a constant invertible C; needs A_0 = theta I.
    pub fn change_basis_const(&self, c: &Mat<S>) -> Result<TMotive<S>> {
        if !self.nil.is_zero() {
            return Err(Error::Precondition("change of basis needs A_0 = theta I".into()));
        }
        if c.rows() != self.n || c.cols() != self.n {
            return Err(Error::SizeMismatch("C must be n x n".into()));
        }
        let ci = c.inverse()?;
        let mut a = vec![self.a[0].clone()];
        for (i, m) in self.a.iter().enumerate().skip(1) {
            a.push(ci.mul(m).mul(&c.twist(i as u32)));
        }
        TMotive::new(&self.spec, a)
    }

    /// a_i -> c^(q^i - 1) a_i, an isomorphic Drinfeld module.
    pub fn drinfeld_rescale(&self, c: &S) -> Result<TMotive<S>> {
        if self.n != 1 {
            return Err(Error::Precondition("rescaling is for Drinfeld modules".into()));
        }
        if c.is_zero() {
            return Err(Error::InvalidArgument("rescaling by zero".into()));
        }
        let m = Mat::scalar(1, c);
        self.change_basis_const(&m)
    }

    /// Same presentation with every entry mapped.
    pub fn try_map<R: Scalar>(&self, zero: &R, f: impl Fn(&S) -> Result<R>) -> Result<TMotive<R>> {
        let a = self.a.iter().map(|m| m.try_map(zero, &f)).collect::<Result<Vec<_>>>()?;
        let mut out = TMotive::new(&self.spec, a)?;
        if let Some(b) = &self.basis {
            let vectors = b
                .vectors
                .iter()
                .map(|v| v.iter().map(|p| p.try_map(zero, &f)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let tz = TPoly::zero(zero);
            let q = b.q.try_map(&tz, |p| p.try_map(zero, &f))?;
            out.basis = Some(TBasis { vectors, q });
        }
        Ok(out)
    }
}

/// Row vector over C{tau} times a matrix over C{tau}.
pub fn row_times<S: Scalar>(v: &[SkewPoly<S>], m: &Mat<SkewPoly<S>>) -> Vec<SkewPoly<S>> {
    (0..m.cols())
        .map(|c| {
            let mut acc = m.zero_elem().clone();
            for (r, x) in v.iter().enumerate() {
                acc = acc.add(&x.mul(m.get(r, c)));
            }
            acc
        })
        .collect()
}

/// For det Q = c (T - theta)^m: returns (m, c); fails when the cofactor is not constant.
pub fn det_dimension<S: Scalar>(q: &TMat<S>) -> Result<(usize, S)> {
    if !q.is_square() {
        return Err(Error::SizeMismatch("Q must be square".into()));
    }
    let d = q.det_ring();
    if d.is_zero() {
        return Err(Error::Singular);
    }
    let th = d.zero_coeff().theta_like();
    let (m, rest) = d.strip_linear(&th);
    if rest.degree() != Some(0) {
        return Err(Error::InvalidArgument(format!(
            "det Q is not a constant times a power of (T - theta) (cofactor of degree {})",
            rest.degree().unwrap_or(0)
        )));
    }
    Ok((m as usize, rest.coeff(0)))
}

impl ArithMotive {
    /// Expand every entry into the series model.
    pub fn to_analytic(&self, ctx: &Arc<Ctx>) -> Result<AnalyticMotive> {
        let z = Cinf::zero(ctx);
        self.try_map(&z, |x| Ok(Cinf::from_rat(ctx, x)))
    }
}

impl AnalyticMotive {
    /// Move every entry into a context with a larger coefficient field.
    pub fn lift(&self, ctx: &Arc<Ctx>) -> Result<AnalyticMotive> {
        let z = Cinf::zero(ctx);
        self.try_map(&z, |x| x.lift(ctx))
    }

    /// An isomorphic Drinfeld module with a_r = 1, via c^(q^r - 1) = a_r^{-1}.
    /// Uses the root whose leading coefficient lies in the smallest field.
    pub fn normalize_top(&self) -> Result<(AnalyticMotive, Cinf)> {
        let c = self.top_normalizer(false)?.remove(0);
        Ok((self.drinfeld_rescale(&c)?, c))
    }

    /// Every admissible rescaling factor c, growing the coefficient field as needed.
    pub fn top_normalizers(&self) -> Result<Vec<Cinf>> {
        self.top_normalizer(true)
    }

    fn top_normalizer(&self, all: bool) -> Result<Vec<Cinf>> {
        if self.n != 1 {
            return Err(Error::Precondition("top normalization is implemented for n = 1 only".into()));
        }
        let ar = self.top().get(0, 0);
        let target = ar.inv()?;
        let n = (self.q() as u64).pow(self.k() as u32) - 1;
        if all {
            target.nth_roots(n)
        } else {
            Ok(vec![target.nth_root(n)?])
        }
    }
}

fn rat_mat(spec: &FieldSpec, rows: Vec<Vec<ThetaRat>>) -> Result<Mat<ThetaRat>> {
    Mat::from_rows(rows, &ThetaRat::zero(spec.fq()))
}

/// The Carlitz module T e = theta e + tau e.
pub fn carlitz(spec: &FieldSpec) -> ArithMotive {
    carlitz_twist(spec, &ThetaRat::constant(spec.fq(), 1)).unwrap()
}

/// T e = theta e + P tau e.
pub fn carlitz_twist(spec: &FieldSpec, p: &ThetaRat) -> Result<ArithMotive> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("the twisting factor must be nonzero".into()));
    }
    drinfeld(spec, std::slice::from_ref(p))
}

/// T e = theta e + a_1 tau e + ... + a_r tau^r e.
pub fn drinfeld<S: Scalar>(spec: &FieldSpec, coeffs: &[S]) -> Result<TMotive<S>> {
    let first = coeffs.first().ok_or_else(|| Error::InvalidArgument("no coefficients".into()))?;
    let z = first.zero_like();
    let mut a = vec![Mat::scalar(1, &z.theta_like())];
    a.extend(coeffs.iter().map(|c| Mat::scalar(1, c)));
    TMotive::new(spec, a)
}

/// M(A): T e = theta e + A tau e + tau^2 e.
pub fn m_of_a<S: Scalar>(spec: &FieldSpec, a: &Mat<S>) -> Result<TMotive<S>> {
    let z = a.zero_elem().clone();
    let n = a.rows();
    TMotive::new(spec, vec![Mat::scalar(n, &z.theta_like()), a.clone(), Mat::identity(n, &z)])
}

/// Parse-free helper for small examples: theta-polynomial matrices from integer coefficient lists.
pub fn rat_matrix(spec: &FieldSpec, rows: &[Vec<ThetaRat>]) -> Result<Mat<ThetaRat>> {
    rat_mat(spec, rows.to_vec())
}

/// theta + a tau + tau^2 and theta + a' tau + tau^2 are isomorphic
/// iff a' = beta a with beta^(q+1) = 1.
pub fn drinfeld_iso_rank2<S: Scalar>(a: &S, a2: &S, q: u32) -> Result<bool> {
    match (a.is_zero(), a2.is_zero()) {
        (true, true) => Ok(true),
        (true, false) | (false, true) => Ok(false),
        _ => {
            let beta = a2.times(&a.recip()?);
            Ok(beta.pow(q as u64 + 1).minus(&beta.one_like()).is_zero())
        }
    }
}

/// General isomorphism testing is not available.
pub fn isomorphic<S: Scalar>(_m1: &TMotive<S>, _m2: &TMotive<S>) -> Result<bool> {
    Err(Error::NoAlgorithm("no algorithm is known for deciding isomorphism of t-motives".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carlitz_and_rank() {
        let spec = FieldSpec::prime(2);
        let c = carlitz(&spec);
        assert_eq!(c.rank_dim().unwrap(), (1, 1));
        let q = c.companion_q().unwrap();
        assert_eq!(q.get(0, 0).to_string(), "T+t");
        assert!(c.nilpotent_part().is_zero());
    }

    #[test]
    fn not_nilpotent() {
        let spec = FieldSpec::prime(3);
        let f = spec.fq();
        let t = ThetaRat::theta(f.clone());
        let a0 = Mat::scalar(1, &t.plus(&t.one_like()));
        let a1 = Mat::scalar(1, &t.one_like());
        assert_eq!(TMotive::new(&spec, vec![a0, a1]).unwrap_err(), Error::NotNilpotent);
    }

    #[test]
    fn twist_q_matrix() {
        let spec = FieldSpec::prime(2);
        let t = ThetaRat::theta(spec.fq());
        let m = carlitz_twist(&spec, &t).unwrap();
        let q = m.companion_q().unwrap();
        assert_eq!(q.get(0, 0).to_string(), "(t^-1)*T+1");
    }
}
