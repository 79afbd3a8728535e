//! Exponential coefficients, the F_q[T]-action on C^n, torsion operators and
//! products over finite subspaces.

use crate::base_arith::matrix::Mat;
use crate::base_arith::poly::FqPoly;
use crate::base_arith::rat::ThetaRat;
use crate::base_arith::scalar::Scalar;
use crate::base_arith::spec::FieldSpec;
use crate::error::{Error, Result};
use crate::tmotive_core::{SkewPoly, TMotive};

/// exp(z) = sum C_i z^(i), C_0 = I.
#[derive(Clone, Debug)]
pub struct ExpCoeffs<S: Scalar> {
    pub c: Vec<Mat<S>>,
}

/// C_1..C_count from C_i A_0^(i) - A_0 C_i = sum_{j=1..min(i,k)} A_j C_{i-j}^(j).
///
/// With A_0 = theta + N this reads C_i (theta^(q^i) - theta) = R + N C_i - C_i N^(i);
/// the right side is nilpotent in C_i, so finitely many substitutions settle it.
pub fn exp_coeffs<S: Scalar>(m: &TMotive<S>, count: usize) -> Result<ExpCoeffs<S>> {
    let n = m.n();
    let z = m.zero();
    let th = z.theta_like();
    let nil = m.nilpotent_part().clone();
    let mut c = vec![Mat::identity(n, &z)];
    for i in 1..=count {
        let mut r = Mat::zeros(n, n, &z);
        for j in 1..=i.min(m.k()) {
            r = r.add(&m.coeff(j).mul(&c[i - j].twist(j as u32)));
        }
        let d = th.twist(i as u32).minus(&th).recip()?;
        let nil_i = nil.twist(i as u32);
        let mut x = r.scale(&d);
        if !nil.is_zero() {
            for _ in 0..2 * n {
                let next = r.add(&nil.mul(&x)).sub(&x.mul(&nil_i)).scale(&d);
                if next == x {
                    break;
                }
                x = next;
            }
        }
        c.push(x);
    }
    Ok(ExpCoeffs { c })
}

/// A_0 C_i + sum_{j>=1} A_j C_{i-j}^(j) - C_i A_0^(i) for every i >= 1.
pub fn exp_residuals<S: Scalar>(m: &TMotive<S>, e: &ExpCoeffs<S>) -> Vec<Mat<S>> {
    (1..e.c.len())
        .map(|i| {
            let mut acc = m.coeff(0).mul(&e.c[i]);
            for j in 1..=i.min(m.k()) {
                acc = acc.add(&m.coeff(j).mul(&e.c[i - j].twist(j as u32)));
            }
            acc.sub(&e.c[i].mul(&m.coeff(0).twist(i as u32)))
        })
        .collect()
}

/// prod_{j<i} (theta^(q^i) - theta^(q^j))^{-1}.
pub fn carlitz_exp_closed_form(spec: &FieldSpec, i: usize) -> ThetaRat {
    let th = ThetaRat::theta(spec.fq());
    let top = th.twist(i as u32);
    let mut acc = th.one_like();
    for j in 0..i {
        acc = acc.times(&top.minus(&th.twist(j as u32)));
    }
    acc.recip().expect("nonzero product")
}

fn t_action<S: Scalar>(m: &TMotive<S>, x: &[S]) -> Vec<S> {
    let mut out = m.coeff(0).mul_vec(x);
    for j in 1..=m.k() {
        let xt: Vec<S> = x.iter().map(|v| v.twist(j as u32)).collect();
        for (o, y) in out.iter_mut().zip(m.coeff(j).mul_vec(&xt)) {
            *o = o.plus(&y);
        }
    }
    out
}

/// P(x) for P in F_q[T], x in C^n, with T(x) = A_0 x + A_1 x^(1) + ... + A_k x^(k).
pub fn em_action<S: Scalar>(m: &TMotive<S>, p: &FqPoly, x: &[S]) -> Result<Vec<S>> {
    if x.len() != m.n() {
        return Err(Error::SizeMismatch(format!("x has {} coordinates, n = {}", x.len(), m.n())));
    }
    let z = m.zero();
    let mut acc: Vec<S> = vec![z.zero_like(); x.len()];
    for &c in p.coeffs().iter().rev() {
        acc = t_action(m, &acc);
        let cc = z.fq_like(c);
        for (a, v) in acc.iter_mut().zip(x) {
            *a = a.plus(&cc.times(v));
        }
    }
    Ok(acc)
}

/// The additive operator x -> P(x) as an n x n matrix over C{tau}.
#[derive(Clone, Debug)]
pub struct TorsionOperator<S: Scalar> {
    pub op: Mat<SkewPoly<S>>,
    /// Highest tau-power present.
    pub q_degree: usize,
    /// dim over F_q of the kernel: r * deg P.
    pub kernel_fq_dim: usize,
}

pub fn torsion_operator<S: Scalar>(m: &TMotive<S>, p: &FqPoly) -> Result<TorsionOperator<S>> {
    if !p.is_monic() {
        return Err(Error::InvalidArgument(format!("{p} is not monic")));
    }
    let (r, _) = m.rank_dim()?;
    let e = m.action_matrix();
    let z = e.zero_elem().clone();
    let mut op = Mat::zeros(m.n(), m.n(), &z);
    for &c in p.coeffs().iter().rev() {
        op = op.mul(&e).add(&Mat::scalar(m.n(), &z.fq_like(c)));
    }
    let q_degree = op.entries().filter_map(|s| s.degree()).max().unwrap_or(0);
    Ok(TorsionOperator { op, q_degree, kernel_fq_dim: r * p.degree().unwrap_or(0) })
}

/// z prod (1 - z/w) over the nonzero w = sum a_i w_i with deg a_i <= bound, as the
/// coefficients of z^(q^j).
pub fn subspace_product<S: Scalar>(q: u32, generators: &[S], bound: usize) -> Result<SkewPoly<S>> {
    let first = generators.first().ok_or_else(|| Error::InvalidArgument("no generators".into()))?;
    let z = first.zero_like();
    let th = z.theta_like();
    let q_minus_one = q as u64 - 1;
    let mut cur = SkewPoly::monomial(z.one_like(), 0);
    let tau = SkewPoly::tau(&z);
    for w in generators {
        let mut pw = th.one_like();
        for _ in 0..=bound {
            let lam = w.times(&pw);
            let v = cur.apply(&lam);
            if v.is_zero() {
                return Err(Error::InvalidArgument("generators are dependent (a subspace point is zero)".into()));
            }
            let c = v.pow(q_minus_one).recip()?;
            cur = cur.sub(&tau.mul(&cur).scale_left(&c));
            pw = pw.times(&th);
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_arith::poly::Var;
    use crate::tmotive_core::carlitz;

    #[test]
    fn carlitz_coefficients() {
        for p in [2, 3] {
            let s = FieldSpec::prime(p);
            let m = carlitz(&s);
            let e = exp_coeffs(&m, 4).unwrap();
            for i in 0..=4 {
                let want = carlitz_exp_closed_form(&s, i);
                assert_eq!(e.c[i].get(0, 0), &want);
                assert_eq!(want.valuation(), Some((i as i64) * (p as i64).pow(i as u32)));
            }
            assert!(exp_residuals(&m, &e).iter().all(|r| r.is_zero()));
        }
    }

    #[test]
    fn carlitz_t_squared() {
        let s = FieldSpec::prime(3);
        let m = carlitz(&s);
        let f = s.fq();
        let t2 = FqPoly::new(f.clone(), vec![0, 0, 1], Var::T);
        let op = torsion_operator(&m, &t2).unwrap();
        let th = ThetaRat::theta(f.clone());
        let e = op.op.get(0, 0);
        assert_eq!(e.coeff(0), th.times(&th));
        assert_eq!(e.coeff(1), th.plus(&th.twist(1)));
        assert!(e.coeff(2).is_one());
        assert_eq!(op.q_degree, 2);
        let x = th.plus(&th.one_like());
        let direct = em_action(&m, &t2, std::slice::from_ref(&x)).unwrap();
        assert_eq!(direct[0], e.apply(&x));
    }

    #[test]
    fn subspace_single_generator() {
        let s = FieldSpec::prime(2);
        let w = ThetaRat::theta(s.fq()).plus(&ThetaRat::constant(s.fq(), 1));
        let p = subspace_product(2, std::slice::from_ref(&w), 0).unwrap();
        assert!(p.coeff(0).is_one());
        assert_eq!(p.coeff(1), w.recip().unwrap().negate());
        let p2 = subspace_product(2, std::slice::from_ref(&w), 2).unwrap();
        assert_eq!(p2.degree(), Some(3));
        let pt = w.times(&ThetaRat::theta(s.fq()).pow(2)).plus(&w);
        assert!(p2.apply(&pt).is_zero());
    }
}
