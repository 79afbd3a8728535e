//! Re-expansion around T = theta and the scattering relation Psi Q^t = Psi^(1).

use crate::base_arith::matrix::Mat;
use crate::base_arith::tpoly::TMat;
use crate::cinf_series::Cinf;
use crate::error::{Error, Result};

use super::series::TauSeries;

/// sum_{j >= low} z_j N^j with N = T - theta, known for j < low + coeffs.len().
#[derive(Clone, Debug)]
pub struct NSeries {
    pub low: i64,
    pub coeffs: Vec<Cinf>,
}

impl NSeries {
    pub fn coeff(&self, j: i64) -> Option<&Cinf> {
        if j < self.low {
            return None;
        }
        self.coeffs.get((j - self.low) as usize)
    }
}

/// C(n, k) mod p by Lucas' theorem.
fn binom_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..b {
            c = c * (a - i) % p;
        }
        let mut d = 1u64;
        for i in 1..=b {
            d = d * i % p;
        }
        // d is invertible mod p
        let mut inv = 1u64;
        let mut e = p - 2;
        let mut base = d;
        while e > 0 {
            if e & 1 == 1 {
                inv = inv * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc = acc * c % p * inv % p;
        n /= p;
        k /= p;
    }
    acc
}

/// Coefficients of N^k, k < order, of Y(N + theta). The terms y_i theta^i must tend to 0;
/// a series that does not converge at T = theta is refused.
fn shift_power_series(y: &TauSeries) -> Result<Vec<Cinf>> {
    let ctx = y.ctx().clone();
    let p = ctx.fq().p() as u64;
    let order = y.order();
    let th = Cinf::theta(&ctx);
    let mut th_pows = vec![Cinf::one(&ctx)];
    for i in 1..order {
        th_pows.push(th_pows[i - 1].mul(&th));
    }
    let tail: Vec<i128> = (0..order)
        .filter_map(|i| y.coeff(i).valuation().map(|v| v - i as i128 * ctx.scale()))
        .collect();
    let w = tail.len().min(4);
    let win = &tail[tail.len() - w..];
    if w >= 2 && !(win.windows(2).all(|x| x[1] >= x[0]) && win[w - 1] > win[0]) {
        return Err(Error::Undecided(
            "the series does not visibly converge at T = theta; pass the numerator and pole order".into(),
        ));
    }
    let mut out = Vec::with_capacity(order);
    for k in 0..order {
        let mut acc = Cinf::zero(&ctx);
        for i in k..order {
            let b = binom_mod(i as u64, k as u64, p);
            if b == 0 {
                continue;
            }
            let yi = y.coeff(i);
            if yi.terms().is_empty() && yi.is_exact() {
                continue;
            }
            let term = yi.mul(&th_pows[i - k]).scale_by(ctx.embed(b as u32));
            acc = acc.add(&term);
        }
        out.push(acc);
    }
    Ok(out)
}

/// Y_N for a power series Y; coefficients of N^j for j = -max_neg..order (the negative ones vanish).
pub fn theta_shift(y: &TauSeries, max_neg: usize) -> Result<NSeries> {
    theta_shift_laurent(y, 0, max_neg)
}

/// Y_N for Y = num / (T - theta)^pole, so Y_N = num_N / N^pole.
pub fn theta_shift_laurent(num: &TauSeries, pole: usize, max_neg: usize) -> Result<NSeries> {
    let ctx = num.ctx().clone();
    let shifted = shift_power_series(num)?;
    let low = -(max_neg as i64);
    let top = num.order() as i64 - pole as i64;
    let coeffs = (low..top)
        .map(|j| {
            let idx = j + pole as i64;
            if idx < 0 {
                Cinf::zero(&ctx)
            } else {
                shifted[idx as usize].clone()
            }
        })
        .collect();
    Ok(NSeries { low, coeffs })
}

/// D_u = coefficient matrix of N^u for u = -max_neg.. of Psi / (T - theta)^pole.
pub fn theta_shift_matrix(psi: &Mat<TauSeries>, pole: usize, max_neg: usize) -> Result<Vec<(i64, Mat<Cinf>)>> {
    let ctx = psi.zero_elem().ctx().clone();
    let entries = psi
        .entries()
        .map(|y| theta_shift_laurent(y, pole, max_neg))
        .collect::<Result<Vec<_>>>()?;
    let first = &entries[0];
    let z = Cinf::zero(&ctx);
    let cols = psi.cols();
    Ok((0..first.coeffs.len())
        .map(|t| {
            let u = first.low + t as i64;
            (u, Mat::from_fn(psi.rows(), cols, &z, |i, j| entries[i * cols + j].coeffs[t].clone()))
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScatteringReport {
    /// Orders compared.
    pub order: usize,
    /// First failing T-order with the valuation of the offending coefficient.
    pub failure: Option<(usize, Option<i128>)>,
}

impl ScatteringReport {
    pub fn certified(&self) -> bool {
        self.failure.is_none()
    }
}

/// Compare Psi Q^t with Psi^(1) coefficientwise in T.
pub fn scattering_check(psi: &Mat<TauSeries>, q: &TMat<Cinf>) -> Result<ScatteringReport> {
    if !psi.is_square() || psi.rows() != q.rows() || !q.is_square() {
        return Err(Error::SizeMismatch("Psi and Q must be r x r".into()));
    }
    let z = psi.zero_elem().clone();
    let order = z.order();
    let ctx = z.ctx().clone();
    let qs = q.transpose().map(&z, |p| TauSeries::from_tpoly(p, &ctx, order));
    let diff = psi.mul(&qs).sub(&psi.twist(1));
    for i in 0..order {
        for e in diff.entries() {
            let c = e.coeff(i);
            if !c.terms().is_empty() {
                return Ok(ScatteringReport { order, failure: Some((i, c.valuation())) });
            }
        }
    }
    Ok(ScatteringReport { order, failure: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_arith::spec::FieldSpec;
    use crate::cinf_series::{CinfConfig, Ctx};
    use crate::constructions::xi_series;

    #[test]
    fn shift_of_t_squared() {
        let ctx = Ctx::new(&FieldSpec::prime(2), 1, &CinfConfig::default()).unwrap();
        let one = Cinf::one(&ctx);
        let mut y = TauSeries::zero(&ctx, 4);
        y.set(2, one.clone());
        let s = theta_shift(&y, 1).unwrap();
        assert!(s.coeff(-1).unwrap().terms().is_empty());
        assert_eq!(s.coeff(0).unwrap().to_string(), "t^2");
        assert!(s.coeff(1).unwrap().terms().is_empty());
        assert_eq!(s.coeff(2).unwrap().to_string(), "1");
    }

    #[test]
    fn xi_vanishes_at_theta() {
        let ctx = Ctx::new(&FieldSpec::prime(2), 1, &CinfConfig::default()).unwrap();
        let mut last = i128::MIN;
        for order in [3, 5, 7] {
            let xi = xi_series(&ctx, order).unwrap();
            let s = theta_shift(&xi, 0).unwrap();
            let v = s.coeff(0).unwrap().val_or_prec();
            assert!(v > last);
            last = v;
        }
    }
}
