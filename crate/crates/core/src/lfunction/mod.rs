//! Reduction modulo primes P of F_q[theta], local L-factors det(I - Q~^[d] U^d)^{-1},
//! their truncated products, and torsion counts over residue fields.

use std::fmt;
use std::sync::Arc;

use crate::base_arith::gf::{canonical_field, Field};
use crate::base_arith::matrix::{subsets, Mat};
use crate::base_arith::poly::{fmt_term, join_terms, Fe, FqPoly, Var};
use crate::base_arith::primes::enumerate_monic_irreducibles;
use crate::base_arith::rat::ThetaRat;
use crate::base_arith::residue::{reduce_mod_prime, Residue, ResidueRing};
use crate::base_arith::scalar::Scalar;
use crate::base_arith::tpoly::{frobenius_product, TMat, TPoly};
use crate::cinf_series::{CinfConfig, Ctx};
use crate::error::{Error, Result};
use crate::tmotive_core::{ArithMotive, SkewPoly};

/// A power series in U with F_q[T] coefficients, truncated after U^max_deg.
#[derive(Clone, PartialEq)]
pub struct LSeries {
    f: Arc<Field>,
    c: Vec<FqPoly>,
    max_deg: usize,
}

impl fmt::Debug for LSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} + O(U^{})", self.max_deg + 1)
    }
}

impl fmt::Display for LSeries {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (j, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let mono = match j {
                0 => String::new(),
                1 => "U".to_string(),
                _ => format!("U^{j}"),
            };
            let compound = cs[1..].contains(['+', '-']);
            let cs = if compound && j > 0 { format!("({cs})") } else { cs };
            terms.push(fmt_term(&cs, &mono));
        }
        write!(out, "{}", join_terms(&terms))
    }
}

impl LSeries {
    pub fn one(f: &Arc<Field>, max_deg: usize) -> LSeries {
        let mut c = vec![FqPoly::zero(f.clone(), Var::T); max_deg + 1];
        c[0] = FqPoly::one(f.clone(), Var::T);
        LSeries { f: f.clone(), c, max_deg }
    }
    /// From coefficients of U^0, U^1, ...; missing ones are zero, extra ones dropped.
    pub fn from_coeffs(f: &Arc<Field>, coeffs: &[FqPoly], max_deg: usize) -> LSeries {
        let mut s = LSeries::one(f, max_deg);
        s.c[0] = FqPoly::zero(f.clone(), Var::T);
        for (j, x) in coeffs.iter().take(max_deg + 1).enumerate() {
            s.c[j] = x.clone().with_var(Var::T);
        }
        s
    }
    pub fn max_deg(&self) -> usize {
        self.max_deg
    }
    pub fn coeffs(&self) -> &[FqPoly] {
        &self.c
    }
    pub fn coeff(&self, j: usize) -> &FqPoly {
        &self.c[j]
    }
    pub fn is_one(&self) -> bool {
        self.c[0].is_constant() && self.c[0].coeff(0) == 1 && self.c[1..].iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, o: &LSeries) -> LSeries {
        let d = self.max_deg.min(o.max_deg);
        let mut c = vec![FqPoly::zero(self.f.clone(), Var::T); d + 1];
        for (i, a) in self.c.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(d + 1 - i) {
                if !b.is_zero() {
                    c[i + j] = c[i + j].add(&a.mul(b));
                }
            }
        }
        LSeries { f: self.f.clone(), c, max_deg: d }
    }

    /// 1/s for s with constant term 1.
    pub fn inverse(&self) -> Result<LSeries> {
        if !(self.c[0].is_constant() && self.c[0].coeff(0) == 1) {
            return Err(Error::InvalidArgument("series inversion needs constant term 1".into()));
        }
        let z = FqPoly::zero(self.f.clone(), Var::T);
        let mut inv = vec![z.clone(); self.max_deg + 1];
        inv[0] = self.c[0].clone();
        for j in 1..=self.max_deg {
            let mut acc = z.clone();
            for i in 1..=j {
                if !self.c[i].is_zero() && !inv[j - i].is_zero() {
                    acc = acc.add(&self.c[i].mul(&inv[j - i]));
                }
            }
            inv[j] = acc.neg();
        }
        Ok(LSeries { f: self.f.clone(), c: inv, max_deg: self.max_deg })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BadReason {
    /// Some entry of some A_i has P in its denominator.
    NonIntegral { coeff: usize, entry: String },
    /// The top coefficient loses rank modulo P.
    RankDrop { before: usize, after: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    Good,
    Bad(BadReason),
}

fn ring_of(p: &FqPoly) -> Result<Arc<ResidueRing>> {
    ResidueRing::new(p)
}

fn residue_zero(ring: &Arc<ResidueRing>) -> Residue {
    ring.constant(0)
}

fn reduce_mat(m: &Mat<ThetaRat>, ring: &Arc<ResidueRing>) -> Result<Mat<Residue>> {
    m.try_map(&residue_zero(ring), |x| reduce_mod_prime(x, ring))
}

/// Good reduction: every A_i is P-integral and A_k keeps its rank modulo P.
pub fn good_reduction_check(m: &ArithMotive, p: &FqPoly) -> Result<Reduction> {
    let ring = ring_of(p)?;
    for (i, a) in m.coeffs().iter().enumerate() {
        for x in a.entries() {
            if reduce_mod_prime(x, &ring).is_err() {
                return Ok(Reduction::Bad(BadReason::NonIntegral { coeff: i, entry: x.to_string() }));
            }
        }
    }
    let before = m.top().rank()?;
    let after = reduce_mat(m.top(), &ring)?.rank()?;
    if after < before {
        return Ok(Reduction::Bad(BadReason::RankDrop { before, after }));
    }
    Ok(Reduction::Good)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ordinarity {
    Ordinary,
    NonOrdinary,
    Undefined,
}

/// The action of P(T) on C^n: the matrix P(E) over F_q(theta){tau}, E = sum A_i tau^i.
pub fn prime_action(m: &ArithMotive, p: &FqPoly) -> Mat<SkewPoly<ThetaRat>> {
    let e = m.action_matrix();
    let z = m.zero();
    let sz = SkewPoly::zero(&z);
    let n = m.n();
    let mut acc = Mat::zeros(n, n, &sz);
    for &c in p.coeffs().iter().rev() {
        let cst = Mat::scalar(n, &SkewPoly::constant(z.fq_like(c)));
        acc = acc.mul(&e).add(&cst);
    }
    acc
}

fn tau_coeff(a: &Mat<SkewPoly<ThetaRat>>, j: usize) -> Mat<ThetaRat> {
    let z = a.zero_elem().zero_coeff().clone();
    a.map(&z, |s| s.coeff(j))
}

/// Ordinary reduction at P of degree d, read as: the tau^1..tau^(d-1) coefficients of
/// P(E) become nilpotent modulo P and the tau^d coefficient keeps its rank.
/// For d = 1 this is the rank of A_1. Defined for n = 1 or d = 1.
pub fn ordinary_check(m: &ArithMotive, p: &FqPoly) -> Result<Ordinarity> {
    if good_reduction_check(m, p)? != Reduction::Good {
        return Err(Error::Precondition(format!("no good reduction at {p}")));
    }
    let d = p.degree().unwrap_or(0);
    let n = m.n();
    if n > 1 && d > 1 {
        return Ok(Ordinarity::Undefined);
    }
    let ring = ring_of(p)?;
    let act = prime_action(m, p);
    for j in 1..d {
        let red = reduce_mat(&tau_coeff(&act, j), &ring)?;
        if !red.pow(n as u32).is_zero() {
            return Ok(Ordinarity::Undefined);
        }
    }
    let next = tau_coeff(&act, d);
    let before = next.rank()?;
    let after = reduce_mat(&next, &ring)?.rank()?;
    Ok(if before > 0 && after == before { Ordinarity::Ordinary } else { Ordinarity::NonOrdinary })
}

#[derive(Clone, Debug)]
pub struct LocalFactor {
    pub prime: FqPoly,
    pub degree: usize,
    /// c_0, c_1, ...: det(I - Q~^[d] X) = sum c_j X^j, X = U^d.
    pub det_coeffs: Vec<FqPoly>,
    pub series: LSeries,
}

fn reduce_q(q: &TMat<ThetaRat>, ring: &Arc<ResidueRing>) -> Result<TMat<Residue>> {
    let z = residue_zero(ring);
    q.try_map(&TPoly::zero(&z), |poly| poly.try_map(&z, |x| reduce_mod_prime(x, ring)))
}

/// (-1)^j times the sum of the j x j principal minors, for j = 0..r.
fn reversed_charpoly<S: Scalar>(x: &Mat<S>) -> Vec<S> {
    let r = x.rows();
    let z = x.zero_elem().clone();
    (0..=r)
        .map(|j| {
            let mut acc = z.zero_like();
            for s in subsets(r, j) {
                acc = acc.plus(&x.submatrix(&s, &s).det_ring());
            }
            if j % 2 == 1 {
                acc.negate()
            } else {
                acc
            }
        })
        .collect()
}

/// L_P(M, U) through U^max_deg.
pub fn local_factor(m: &ArithMotive, p: &FqPoly, max_deg: usize) -> Result<LocalFactor> {
    if let Reduction::Bad(why) = good_reduction_check(m, p)? {
        return Err(Error::BadPrime(format!("{p} ({why:?})")));
    }
    let d = p.degree().ok_or_else(|| Error::InvalidArgument("the prime is zero".into()))?;
    let ring = ring_of(p)?;
    let qt = reduce_q(&m.q_matrix()?, &ring)?;
    let qd = frobenius_product(&qt, d as u32)?;
    let f = m.spec().fq();
    let mut det_coeffs = Vec::new();
    for c in reversed_charpoly(&qd) {
        let mut out = Vec::new();
        for x in c.coeffs() {
            out.push(x.as_constant().ok_or_else(|| {
                Error::Defect(format!("local factor at {p} has a coefficient {x} outside F_q"))
            })?);
        }
        det_coeffs.push(FqPoly::new(f.clone(), out, Var::T));
    }
    let z = FqPoly::zero(f.clone(), Var::T);
    let mut spread = vec![z; max_deg + 1];
    for (j, c) in det_coeffs.iter().enumerate() {
        if j * d <= max_deg {
            spread[j * d] = c.clone();
        }
    }
    let series = LSeries::from_coeffs(&f, &spread, max_deg).inverse()?;
    Ok(LocalFactor { prime: p.clone(), degree: d, det_coeffs, series })
}

#[derive(Clone, Debug)]
pub struct GlobalL {
    pub series: LSeries,
    /// Primes of degree <= max_deg with bad reduction.
    pub bad: Vec<FqPoly>,
    pub factors: Vec<LocalFactor>,
}

/// The product of L_P over good monic primes of degree <= max_deg, through U^max_deg.
pub fn global_l(m: &ArithMotive, max_deg: usize) -> Result<GlobalL> {
    if max_deg == 0 {
        return Err(Error::InvalidArgument("max-deg must be at least 1".into()));
    }
    let f = m.spec().fq();
    let mut series = LSeries::one(&f, max_deg);
    let mut bad = Vec::new();
    let mut factors = Vec::new();
    for p in enumerate_monic_irreducibles(m.spec(), max_deg) {
        match local_factor(m, &p, max_deg) {
            Ok(lf) => {
                series = series.mul(&lf.series);
                factors.push(lf);
            }
            Err(Error::BadPrime(_)) => bad.push(p),
            Err(e) => return Err(e),
        }
    }
    Ok(GlobalL { series, bad, factors })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionCount {
    /// Solutions in F_{q^(d ext_degree)}^n.
    pub count: u64,
    /// |F_q[theta]/P|^(r - n).
    pub expected: u64,
    pub field_size: u64,
}

/// Largest F_p-dimension of the linear system built by `torsion_count_reduction`.
pub const TORSION_MAX_DIM: usize = 256;

/// Zeros of the reduced P(T)-action on F_{q^(d e)}^n, by linear algebra over F_p.
pub fn torsion_count_reduction(m: &ArithMotive, p: &FqPoly, ext_degree: u32) -> Result<TorsionCount> {
    if ordinary_check(m, p)? != Ordinarity::Ordinary {
        return Err(Error::Precondition(format!("reduction at {p} is not known to be ordinary")));
    }
    if ext_degree == 0 {
        return Err(Error::InvalidArgument("extension degree must be positive".into()));
    }
    let d = p.degree().unwrap();
    let n = m.n();
    let (r, _) = m.rank_dim()?;
    let spec = m.spec();
    let big = (d as u32) * ext_degree;
    let ctx = Ctx::new(spec, big, &CinfConfig::default())
        .map_err(|_| Error::TooLarge(format!("F_(q^{big}) exceeds the tabulated field sizes")))?;
    let ext = ctx.ext().clone();
    let dim_p = ext.degree() as usize * n;
    if dim_p > TORSION_MAX_DIM {
        return Err(Error::TooLarge(format!("linear system of dimension {dim_p}")));
    }
    let pc: Vec<u32> = p.coeffs().iter().map(|&c| ctx.embed(c)).collect();
    let alpha = *ext.poly_roots(&pc).first().ok_or_else(|| Error::Defect(format!("{p} has no root in F_(q^{big})")))?;
    let eval = |x: &Residue| -> u32 {
        let mut acc = 0;
        for &c in x.poly().coeffs().iter().rev() {
            acc = ext.add(ext.mul(acc, alpha), ctx.embed(c));
        }
        acc
    };
    let ring = ring_of(p)?;
    let act = prime_action(m, p);
    let top = act.entries().filter_map(|s| s.degree()).max().unwrap_or(0);
    let blocks: Vec<Vec<Vec<u32>>> = (0..=top)
        .map(|j| {
            let red = reduce_mat(&tau_coeff(&act, j), &ring)?;
            Ok((0..n).map(|a| (0..n).map(|b| eval(red.get(a, b))).collect()).collect())
        })
        .collect::<Result<_>>()?;
    let fp = canonical_field(spec.p, 1)?;
    let fz = Fe::new(fp.clone(), 0, 1);
    let deg = ext.degree() as usize;
    let mut cols = Vec::with_capacity(dim_p);
    for a in 0..n {
        for k in 0..deg {
            let mut unit = vec![0u32; deg];
            unit[k] = 1;
            let x = ext.from_coords(&unit);
            let mut y = vec![0u32; n];
            for (j, bj) in blocks.iter().enumerate() {
                let xj = ctx.frob(x, j as u32);
                for (i, yi) in y.iter_mut().enumerate() {
                    *yi = ext.add(*yi, ext.mul(bj[i][a], xj));
                }
            }
            cols.push(y.iter().flat_map(|&v| ext.coords(v)).collect::<Vec<u32>>());
        }
    }
    let mat = Mat::from_fn(dim_p, dim_p, &fz, |i, j| Fe::new(fp.clone(), cols[j][i], 1));
    let kernel = dim_p - mat.rank()?;
    let pp = spec.p as u64;
    let qd = (spec.q() as u64).pow(d as u32);
    Ok(TorsionCount {
        count: pp.pow(kernel as u32),
        expected: qd.pow((r - n) as u32),
        field_size: ext.size() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_arith::spec::FieldSpec;
    use crate::tmotive_core::{carlitz, carlitz_twist, drinfeld};

    fn prime(spec: &FieldSpec, c: &[u32]) -> FqPoly {
        FqPoly::new(spec.fq(), c.to_vec(), Var::Theta)
    }

    #[test]
    fn carlitz_table_rows() {
        let s = FieldSpec::prime(2);
        let c = carlitz(&s);
        let rows = [
            (vec![0, 1], "1+T*U+T^2*U^2+T^3*U^3"),
            (vec![1, 1], "1+(T+1)*U+(T^2+1)*U^2+(T^3+T^2+T+1)*U^3"),
            (vec![1, 1, 1], "1+(T^2+T+1)*U^2+(T^4+T^2+1)*U^4"),
        ];
        for (p, want) in rows {
            let deg = if p.len() == 3 { 4 } else { 3 };
            let lf = local_factor(&c, &prime(&s, &p), deg).unwrap();
            assert_eq!(lf.series.to_string(), want);
        }
    }

    #[test]
    fn carlitz_global() {
        let s2 = FieldSpec::prime(2);
        let g = global_l(&carlitz(&s2), 4).unwrap();
        assert_eq!(g.series.to_string(), "1+U");
        assert!(g.bad.is_empty());
        let s3 = FieldSpec::prime(3);
        assert!(global_l(&carlitz(&s3), 3).unwrap().series.is_one());
    }

    #[test]
    fn twist_is_bad_at_its_prime() {
        let s = FieldSpec::prime(2);
        let th = ThetaRat::theta(s.fq());
        let m = carlitz_twist(&s, &th).unwrap();
        let p = prime(&s, &[0, 1]);
        assert_eq!(good_reduction_check(&m, &p).unwrap(), Reduction::Bad(BadReason::RankDrop { before: 1, after: 0 }));
        let g = global_l(&m, 2).unwrap();
        assert_eq!(g.bad, vec![p]);
        let inv = drinfeld(&s, &[th.pow(2).recip().unwrap()]).unwrap();
        assert!(matches!(
            good_reduction_check(&inv, &prime(&s, &[0, 1])).unwrap(),
            Reduction::Bad(BadReason::NonIntegral { .. })
        ));
    }

    #[test]
    fn ordinary_and_torsion() {
        let s = FieldSpec::prime(2);
        let th = ThetaRat::theta(s.fq());
        let one = th.one_like();
        let p = prime(&s, &[0, 1]);
        assert_eq!(ordinary_check(&carlitz(&s), &p).unwrap(), Ordinarity::Ordinary);
        let ss = drinfeld(&s, &[th.clone(), one.clone()]).unwrap();
        assert_eq!(ordinary_check(&ss, &p).unwrap(), Ordinarity::NonOrdinary);
        assert!(matches!(torsion_count_reduction(&ss, &p, 1), Err(Error::Precondition(_))));
        let m = drinfeld(&s, &[one.clone(), th.clone().plus(&one)]).unwrap();
        assert_eq!(ordinary_check(&m, &p).unwrap(), Ordinarity::Ordinary);
        for e in 1..=4 {
            let t = torsion_count_reduction(&m, &p, e).unwrap();
            assert_eq!((t.count, t.expected), (2, 2));
        }
        assert_eq!(torsion_count_reduction(&carlitz(&s), &p, 3).unwrap().count, 1);
        // degree 2 prime: tau^1 vanishes mod P and tau^2 survives
        let p2 = prime(&s, &[1, 1, 1]);
        assert_eq!(ordinary_check(&m, &p2).unwrap(), Ordinarity::Ordinary);
        // the torsion points live in F_64 = F_4^3
        let counts: Vec<u64> = (1..=6).map(|e| torsion_count_reduction(&m, &p2, e).unwrap().count).collect();
        assert_eq!(counts, [1, 1, 4, 1, 1, 4]);
    }
}
