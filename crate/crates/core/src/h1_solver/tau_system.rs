//! Systems sum_j L_ij(x_j) = c_i with L an r x r matrix over C{tau}, solved by
//! triangularizing with left row operations.

use crate::base_arith::matrix::Mat;
use crate::base_arith::scalar::Scalar;
use crate::cinf_series::{solve_all, solve_one, Cinf, SolveOptions};
use crate::error::{Error, Result};
use crate::tmotive_core::SkewPoly;

type Sk = SkewPoly<Cinf>;

/// a = quot * b + rem with deg rem < deg b (quotient on the left).
fn left_divrem(a: &Sk, b: &Sk) -> Result<(Sk, Sk)> {
    let db = b.degree().ok_or(Error::Singular)?;
    let lb = b.lc();
    let z = a.zero_coeff().clone();
    let mut quot = SkewPoly::zero(&z);
    let mut rem = a.clone();
    while let Some(da) = rem.degree() {
        if da < db {
            break;
        }
        let k = da - db;
        let c = rem.lc().div(&lb.frob(k as u32))?;
        let term = SkewPoly::monomial(c, k);
        let next = rem.sub(&term.mul(b));
        // the leading coefficient cancels by construction
        let trimmed = SkewPoly::new(next.coeffs().iter().take(da).cloned().collect(), &z);
        quot = quot.add(&term);
        rem = trimmed;
    }
    Ok((quot, rem))
}

fn apply_row(row: &[Sk], x: &[Cinf]) -> Cinf {
    let mut acc = Cinf::zero(x[0].ctx());
    for (p, v) in row.iter().zip(x) {
        if !p.is_zero() {
            acc = acc.add(&p.apply(v));
        }
    }
    acc
}

/// An upper-triangular form H = U L together with the kernel of L.
///
/// Kernel elements outside the fractional-exponent model are kept as truncations
/// at the valuation where their expansion stops; `complete` records whether the
/// F_q-span found has the size predicted by the diagonal degrees.
pub struct TauSystem {
    h: Vec<Vec<Sk>>,
    u: Vec<Vec<Sk>>,
    opts: SolveOptions,
    pub complete: bool,
    /// F_q-dimension of ker L over C_inf.
    pub expected_dim: usize,
    /// Every element of ker L that was found.
    pub kernel: Vec<Vec<Cinf>>,
    /// F_q-coordinates of each kernel element on `kernel_basis`.
    pub kernel_coords: Vec<Vec<u32>>,
    pub kernel_basis: Vec<Vec<Cinf>>,
}

fn vec_eq(a: &[Cinf], b: &[Cinf]) -> bool {
    a.iter().zip(b).all(|(x, y)| x.eq_at_prec(y))
}

impl TauSystem {
    pub fn new(l: &Mat<Sk>, opts: &SolveOptions) -> Result<TauSystem> {
        let r = l.rows();
        let z = l.zero_elem().zero_coeff().clone();
        let mut h = l.to_rows();
        let mut u = Mat::identity(r, l.zero_elem()).to_rows();
        for j in 0..r {
            loop {
                let live: Vec<usize> = (j..r).filter(|&i| !h[i][j].is_zero()).collect();
                let p = *live
                    .iter()
                    .min_by_key(|&&i| (h[i][j].degree().unwrap(), i))
                    .ok_or(Error::Singular)?;
                h.swap(p, j);
                u.swap(p, j);
                if live.len() == 1 {
                    break;
                }
                for a in j + 1..r {
                    if h[a][j].is_zero() {
                        continue;
                    }
                    let (quot, rem) = left_divrem(&h[a][j], &h[j][j])?;
                    for c in 0..r {
                        if c != j {
                            let t = quot.mul(&h[j][c]);
                            h[a][c] = h[a][c].sub(&t);
                        }
                        let t = quot.mul(&u[j][c]);
                        u[a][c] = u[a][c].sub(&t);
                    }
                    h[a][j] = rem;
                }
            }
        }
        let mut sys = TauSystem {
            h,
            u,
            opts: SolveOptions { accept_approx: true, ..opts.clone() },
            complete: true,
            expected_dim: 0,
            kernel: vec![],
            kernel_coords: vec![],
            kernel_basis: vec![],
        };
        let zero = vec![Cinf::zero(z.ctx()); r];
        let (all, _) = sys.solve_all(&zero)?;
        sys.set_kernel(all)?;
        Ok(sys)
    }

    fn set_kernel(&mut self, all: Vec<Vec<Cinf>>) -> Result<()> {
        let ctx = self.h[0][0].zero_coeff().ctx().clone();
        let f = ctx.fq().clone();
        let q = f.size();
        let r = self.h.len();
        // span as (coords, vector), grown one basis element at a time
        let mut span: Vec<(Vec<u32>, Vec<Cinf>)> = vec![(vec![], vec![Cinf::zero(&ctx); r])];
        let mut basis: Vec<Vec<Cinf>> = Vec::new();
        for v in &all {
            if span.iter().any(|(_, s)| vec_eq(s, v)) {
                continue;
            }
            let mut next = Vec::with_capacity(span.len() * q as usize);
            for a in 0..q {
                let ae = Cinf::from_fq(&ctx, a);
                for (cs, s) in &span {
                    let mut c = cs.clone();
                    c.push(a);
                    let w: Vec<Cinf> = s.iter().zip(v).map(|(x, y)| x.add(&ae.mul(y))).collect();
                    next.push((c, w));
                }
            }
            span = next;
            basis.push(v.clone());
        }
        let (expected, dim) = self.expected_kernel_size(q as u128);
        self.expected_dim = dim;
        if span.len() as u128 > expected {
            return Err(Error::Defect(format!("kernel span has {} elements, at most {expected} exist", span.len())));
        }
        self.complete = span.len() as u128 == expected;
        let d = basis.len();
        self.kernel_coords = span.iter().map(|(c, _)| (0..d).map(|i| c.get(i).copied().unwrap_or(0)).collect()).collect();
        self.kernel = span.into_iter().map(|(_, v)| v).collect();
        self.kernel_basis = basis;
        Ok(())
    }

    fn transformed(&self, c: &[Cinf]) -> Vec<Cinf> {
        self.u.iter().map(|row| apply_row(row, c)).collect()
    }

    /// q^(sum of deg_tau - ord_tau) over the diagonal: the number of solutions in C_inf.
    fn expected_kernel_size(&self, q: u128) -> (u128, usize) {
        let mut e = 0u32;
        for i in 0..self.h.len() {
            let cs = self.diag_coeffs(i);
            let lo = cs.iter().position(|c| !c.terms().is_empty()).unwrap_or(0);
            let hi = cs.iter().rposition(|c| !c.terms().is_empty()).unwrap_or(0);
            e += (hi - lo) as u32;
        }
        (q.saturating_pow(e), e as usize)
    }

    fn diag_coeffs(&self, i: usize) -> Vec<Cinf> {
        self.h[i][i].coeffs().to_vec()
    }

    /// Every solution found, truncations included; the flag is false when some branch
    /// was only approximated or lost.
    pub fn solve_all(&self, c: &[Cinf]) -> Result<(Vec<Vec<Cinf>>, bool)> {
        let r = self.h.len();
        let d = self.transformed(c);
        let ctx = c[0].ctx().clone();
        let mut partial: Vec<Vec<Cinf>> = vec![vec![Cinf::zero(&ctx); r]];
        let mut complete = true;
        for i in (0..r).rev() {
            let mut next = Vec::new();
            for x in partial {
                let mut w = d[i].clone();
                for l in i + 1..r {
                    if !self.h[i][l].is_zero() {
                        w = w.sub(&self.h[i][l].apply(&x[l]));
                    }
                }
                let rep = solve_all(&self.diag_coeffs(i), &w, &self.opts)?;
                complete &= rep.complete();
                let mut found = rep.solutions;
                for y in rep.failures.into_iter().filter_map(|f| f.approx) {
                    if !found.iter().any(|o| o.eq_at_prec(&y)) {
                        found.push(y);
                    }
                }
                for s in found {
                    let mut y = x.clone();
                    y[i] = s;
                    next.push(y);
                }
            }
            partial = next;
        }
        Ok((partial, complete))
    }

    /// One solution.
    pub fn solve_one(&self, c: &[Cinf]) -> Result<Vec<Cinf>> {
        let r = self.h.len();
        let d = self.transformed(c);
        let mut x = vec![Cinf::zero(c[0].ctx()); r];
        for i in (0..r).rev() {
            let mut w = d[i].clone();
            for l in i + 1..r {
                if !self.h[i][l].is_zero() {
                    w = w.sub(&self.h[i][l].apply(&x[l]));
                }
            }
            x[i] = solve_one(&self.diag_coeffs(i), &w, &self.opts)?;
        }
        Ok(x)
    }

    /// The solutions x_p + k, k in the kernel.
    pub fn coset(&self, c: &[Cinf]) -> Result<Vec<Vec<Cinf>>> {
        let xp = self.solve_one(c)?;
        Ok(self.kernel.iter().map(|k| xp.iter().zip(k).map(|(a, b)| a.add(b)).collect()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_arith::spec::FieldSpec;
    use crate::cinf_series::{with_growth, CinfConfig, Ctx};

    #[test]
    fn carlitz_step_kernel() {
        // x + theta x^q = 0 has q solutions.
        for p in [2, 3] {
            let ctx = Ctx::new(&FieldSpec::prime(p), 1, &CinfConfig::default()).unwrap();
            let n = with_growth(&ctx, |c| {
                let th = Cinf::theta(c);
                let l = SkewPoly::new(vec![Cinf::one(c), th], &Cinf::zero(c));
                let m = Mat::from_rows(vec![vec![l]], &SkewPoly::zero(&Cinf::zero(c)))?;
                let s = TauSystem::new(&m, &SolveOptions::default())?;
                Ok((s.kernel.len(), s.kernel_basis.len()))
            })
            .unwrap();
            assert_eq!(n, (p as usize, 1));
        }
    }

    #[test]
    fn two_by_two_triangularizes() {
        let ctx = Ctx::new(&FieldSpec::prime(2), 1, &CinfConfig::default()).unwrap();
        let z = Cinf::zero(&ctx);
        let one = Cinf::one(&ctx);
        let th = Cinf::theta(&ctx);
        // x0 + theta x1^2 = c0, x1 + x0^2 = c1
        let l = Mat::from_rows(
            vec![
                vec![SkewPoly::constant(one.clone()), SkewPoly::monomial(th.clone(), 1)],
                vec![SkewPoly::monomial(one.clone(), 1), SkewPoly::constant(one.clone())],
            ],
            &SkewPoly::zero(&z),
        )
        .unwrap();
        let res = with_growth(&ctx, |c| {
            let l = l.try_map(&SkewPoly::zero(&Cinf::zero(c)), |p| p.try_map(&Cinf::zero(c), |x| x.lift(c)))?;
            let s = TauSystem::new(&l, &SolveOptions::default())?;
            let rhs = vec![Cinf::theta(c), Cinf::one(c)];
            let sols = s.coset(&rhs)?;
            for x in &sols {
                for (i, row) in l.to_rows().iter().enumerate() {
                    let lhs = apply_row(row, x);
                    assert!(lhs.eq_at_prec(&rhs[i]), "{lhs} vs {}", rhs[i]);
                }
            }
            Ok(s.kernel.len())
        })
        .unwrap();
        assert_eq!(res, 4);
    }
}
