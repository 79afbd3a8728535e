//! h^1 and h_1 at finite precision: the equations g = Q^t g^(1) (fixed points of tau)
//! and l^(1) = Q l (tau-equivariant functionals) solved coefficient by coefficient in T.
//!
//! Every solution is determined by its constant term modulo T times a solution, so the
//! rank is the F_q-dimension of the constant terms that extend to a convergent series.
//! Each kernel element of the constant-term operator is extended greedily: at every
//! step the coset of admissible coefficients is enumerated and the elements of largest
//! valuation are kept (ties branch).

pub mod tau_system;

use std::sync::Arc;

use num_rational::Ratio;

use crate::analytic::TauSeries;
use crate::base_arith::matrix::Mat;
use crate::base_arith::poly::Fe;
use crate::base_arith::scalar::Scalar;
use crate::base_arith::tpoly::{tmat_coeff, tmat_degree, TMat, TPoly};
use crate::cinf_series::{with_growth, Cinf, Ctx, SolveOptions, INF};
use crate::error::{Error, Result};
use crate::tmotive_core::{AnalyticMotive, SkewPoly};
pub use tau_system::TauSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// g = Q^t g^(1)
    Upper,
    /// l^(1) = Q l
    Lower,
}

#[derive(Clone, Debug)]
pub struct H1Options {
    pub horizon: usize,
    pub window: usize,
    pub branch_cap: usize,
    pub solve: SolveOptions,
}

impl Default for H1Options {
    fn default() -> Self {
        H1Options { horizon: 24, window: 6, branch_cap: 64, solve: SolveOptions::default() }
    }
}

/// Q = num / (T - theta)^den_pow together with the direction and the search limits.
#[derive(Clone, Debug)]
pub struct TwistedSystem {
    pub num: TMat<Cinf>,
    pub den_pow: u32,
    pub direction: Direction,
    pub opts: H1Options,
}

impl TwistedSystem {
    pub fn new(q: &TMat<Cinf>, direction: Direction, opts: &H1Options) -> Result<TwistedSystem> {
        TwistedSystem::with_denominator(q, 0, direction, opts)
    }
    pub fn with_denominator(num: &TMat<Cinf>, den_pow: u32, direction: Direction, opts: &H1Options) -> Result<TwistedSystem> {
        if !num.is_square() {
            return Err(Error::SizeMismatch("Q must be square".into()));
        }
        if num.det_ring().is_zero() {
            return Err(Error::Singular);
        }
        if opts.window < 2 || opts.horizon <= opts.window {
            return Err(Error::InvalidArgument("need horizon > window >= 2".into()));
        }
        Ok(TwistedSystem { num: num.clone(), den_pow, direction, opts: opts.clone() })
    }
    fn ctx(&self) -> Arc<Ctx> {
        self.num.zero_elem().zero_coeff().ctx().clone()
    }
    pub fn lift(&self, ctx: &Arc<Ctx>) -> Result<TwistedSystem> {
        let z = Cinf::zero(ctx);
        let num = self.num.try_map(&TPoly::zero(&z), |p| p.try_map(&z, |x| x.lift(ctx)))?;
        Ok(TwistedSystem { num, ..self.clone() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Convergent,
    Divergent,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankStatus {
    Exact,
    LowerBound,
}

#[derive(Clone, Debug)]
pub struct Candidate {
    /// Coordinates of the constant term on the kernel basis.
    pub coords: Vec<u32>,
    /// One series per coordinate of the solution vector.
    pub series: Vec<TauSeries>,
    /// v_inf of each T-coefficient vector (None for an exact zero vector).
    pub profile: Vec<Option<Ratio<i128>>>,
    /// Entries of the profile that are only lower bounds (the vector vanished at its precision).
    pub bounded: Vec<bool>,
    pub verdict: Verdict,
    /// Coset elements discarded at each step (of the kept branch's history).
    pub pruned: Vec<usize>,
    pub residual_ok: bool,
}

#[derive(Clone, Debug)]
pub struct SolutionCertificate {
    pub direction: Direction,
    pub horizon: usize,
    pub window: usize,
    pub precision: i64,
    pub kernel_dim: usize,
    /// False when part of the constant-term kernel could not be found.
    pub kernel_complete: bool,
    pub candidates: Vec<Candidate>,
    /// Indices of candidates forming an F_q-basis of the convergent constant terms.
    pub basis: Vec<usize>,
    pub rank: usize,
    /// Rank if every undecided candidate converged.
    pub upper: usize,
    pub status: RankStatus,
}

impl SolutionCertificate {
    pub fn basis_candidates(&self) -> Vec<&Candidate> {
        self.basis.iter().map(|&i| &self.candidates[i]).collect()
    }
}

/// Valuation of a vector, and whether it is only a lower bound.
fn vec_val(v: &[Cinf]) -> (i128, bool) {
    let known = v.iter().filter_map(|x| x.valuation()).min();
    let floor = v.iter().filter(|x| x.terms().is_empty() && !x.is_exact()).map(|x| x.prec()).min();
    match (known, floor) {
        (Some(a), Some(b)) if b <= a => (b, true),
        (Some(a), _) => (a, false),
        (None, Some(b)) => (b, true),
        (None, None) => (INF, false),
    }
}

fn verdict_of(profile: &[i128], bounded: &[bool], window: usize) -> Verdict {
    if profile.len() < window {
        return Verdict::Undecided;
    }
    let tail = &profile[profile.len() - window..];
    if bounded[profile.len() - window..].iter().any(|&b| b) {
        return Verdict::Undecided;
    }
    let rising = tail.windows(2).all(|w| w[1] > w[0] || (w[0] >= INF && w[1] >= INF));
    // a rise that slows down (like -5/2, -7/4, -11/8, ...) may level off
    let half = window / 2;
    let steady = tail[window - 1] >= INF
        || tail[window - 1] - tail[window - 1 - half] >= tail[half] - tail[0];
    if rising && steady {
        Verdict::Convergent
    } else if tail[window - 1] <= tail[0] {
        Verdict::Divergent
    } else {
        Verdict::Undecided
    }
}

/// Rank over F_q of coordinate vectors.
fn fq_rank(ctx: &Ctx, vs: &[Vec<u32>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let f = ctx.fq().clone();
    let z = Fe::new(f.clone(), 0, 1);
    let m = Mat::from_fn(vs.len(), vs[0].len(), &z, |i, j| Fe::new(f.clone(), vs[i][j], 1));
    m.rank().unwrap_or(0)
}

struct Branch {
    coeffs: Vec<Vec<Cinf>>,
    vals: Vec<i128>,
    bounded: Vec<bool>,
    pruned: Vec<usize>,
    failed: bool,
}

struct Engine<'a> {
    sys: &'a TwistedSystem,
    ctx: Arc<Ctx>,
    step: TauSystem,
    /// N_k: T^k-coefficients of Q^t (upper) or Q (lower) numerators.
    n: Vec<Mat<Cinf>>,
    /// coefficients of (T - theta)^den_pow
    p: Vec<Cinf>,
}

impl<'a> Engine<'a> {
    fn new(sys: &'a TwistedSystem) -> Result<Engine<'a>> {
        let ctx = sys.ctx();
        let z = Cinf::zero(&ctx);
        let r = sys.num.rows();
        let mat = match sys.direction {
            Direction::Upper => sys.num.transpose(),
            Direction::Lower => sys.num.clone(),
        };
        let n: Vec<Mat<Cinf>> = (0..=tmat_degree(&mat)).map(|k| tmat_coeff(&mat, k)).collect();
        let p = TPoly::linear(&Cinf::theta(&ctx)).pow_u(sys.den_pow);
        let p: Vec<Cinf> = (0..=sys.den_pow as usize).map(|j| p.coeff(j)).collect();
        let sz = SkewPoly::zero(&z);
        let l = Mat::from_fn(r, r, &sz, |a, b| {
            let diag = if a == b { p[0].clone() } else { z.clone() };
            let off = n[0].get(a, b).neg();
            match sys.direction {
                Direction::Upper => SkewPoly::new(vec![diag, off], &z),
                Direction::Lower => SkewPoly::new(vec![off, diag], &z),
            }
        });
        let step = TauSystem::new(&l, &sys.opts.solve)?;
        Ok(Engine { sys, ctx, step, n, p })
    }

    fn rhs(&self, coeffs: &[Vec<Cinf>]) -> Vec<Cinf> {
        let i = coeffs.len();
        let r = self.sys.num.rows();
        let mut acc = vec![Cinf::zero(&self.ctx); r];
        let twisted = |v: &Vec<Cinf>| -> Vec<Cinf> { v.iter().map(|x| x.frob(1)).collect() };
        for k in 1..self.n.len().min(i + 1) {
            let prev = &coeffs[i - k];
            let src = match self.sys.direction {
                Direction::Upper => twisted(prev),
                Direction::Lower => prev.clone(),
            };
            for (a, y) in acc.iter_mut().zip(self.n[k].mul_vec(&src)) {
                *a = a.add(&y);
            }
        }
        for j in 1..self.p.len().min(i + 1) {
            let prev = &coeffs[i - j];
            let src = match self.sys.direction {
                Direction::Upper => prev.clone(),
                Direction::Lower => twisted(prev),
            };
            for (a, y) in acc.iter_mut().zip(src) {
                *a = a.sub(&self.p[j].mul(&y));
            }
        }
        acc
    }

    fn extend(&self, start: &[Cinf]) -> Result<(Vec<Branch>, bool)> {
        let horizon = self.sys.opts.horizon;
        let (v0, b0) = vec_val(start);
        let mut live =
            vec![Branch { coeffs: vec![start.to_vec()], vals: vec![v0], bounded: vec![b0], pruned: vec![], failed: false }];
        let mut done = Vec::new();
        let mut truncated = false;
        for _ in 1..horizon {
            let mut next: Vec<Branch> = Vec::new();
            for b in live {
                let c = self.rhs(&b.coeffs);
                let coset = match self.step.coset(&c) {
                    Ok(s) => s,
                    Err(e @ Error::NeedExtension(_)) => return Err(e),
                    Err(_) => {
                        done.push(Branch { failed: true, ..b });
                        continue;
                    }
                };
                let vals: Vec<(i128, bool)> = coset.iter().map(|x| vec_val(x)).collect();
                let best = vals.iter().map(|v| v.0).max().unwrap();
                let kept: Vec<usize> = (0..coset.len()).filter(|&i| vals[i].0 == best).collect();
                let best_bounded = kept.iter().any(|&i| vals[i].1);
                let pruned = coset.len() - kept.len();
                for i in kept {
                    let x = &coset[i];
                    let dup = next.iter().any(|o| {
                        o.coeffs.len() == b.coeffs.len() + 1
                            && o.coeffs[..b.coeffs.len()]
                                .iter()
                                .zip(&b.coeffs)
                                .all(|(u, v)| u.iter().zip(v).all(|(s, t)| s.eq_at_prec(t)))
                            && o.coeffs.last().unwrap().iter().zip(x).all(|(s, t)| s.eq_at_prec(t))
                    });
                    if dup {
                        continue;
                    }
                    let mut coeffs = b.coeffs.clone();
                    coeffs.push(x.clone());
                    let mut vs = b.vals.clone();
                    vs.push(best);
                    let mut bd = b.bounded.clone();
                    bd.push(best_bounded);
                    let mut pr = b.pruned.clone();
                    pr.push(pruned);
                    next.push(Branch { coeffs, vals: vs, bounded: bd, pruned: pr, failed: false });
                }
            }
            if next.len() > self.sys.opts.branch_cap {
                truncated = true;
                next.truncate(self.sys.opts.branch_cap);
            }
            live = next;
            if live.is_empty() {
                break;
            }
        }
        done.extend(live);
        Ok((done, truncated))
    }

    fn residual_ok(&self, series: &[TauSeries]) -> bool {
        let order = self.sys.opts.horizon;
        let z = TauSeries::zero(&self.ctx, order);
        let nm = match self.sys.direction {
            Direction::Upper => self.sys.num.transpose(),
            Direction::Lower => self.sys.num.clone(),
        };
        let nm = nm.map(&z, |p| TauSeries::from_tpoly(p, &self.ctx, order));
        let p = TauSeries::from_tpoly(&TPoly::linear(&Cinf::theta(&self.ctx)).pow_u(self.sys.den_pow), &self.ctx, order);
        let g = Mat::from_fn(series.len(), 1, &z, |i, _| series[i].clone());
        let (lhs, rhs) = match self.sys.direction {
            Direction::Upper => (g.scale(&p), nm.mul(&g.twist(1))),
            Direction::Lower => (g.twist(1).scale(&p), nm.mul(&g)),
        };
        lhs.sub(&rhs).entries().all(|e| e.coeffs().iter().all(|c| c.terms().is_empty()))
    }
}

fn to_ratio(ctx: &Ctx, v: i128) -> Option<Ratio<i128>> {
    if v >= INF {
        None
    } else {
        Some(Ratio::new(v, ctx.scale()))
    }
}

fn twisted_solve_here(sys: &TwistedSystem) -> Result<SolutionCertificate> {
    let eng = Engine::new(sys)?;
    let ctx = eng.ctx.clone();
    let r = sys.num.rows();
    let window = sys.opts.window;
    let mut candidates = Vec::new();
    for (k, coords) in eng.step.kernel.iter().zip(&eng.step.kernel_coords) {
        if coords.iter().all(|&c| c == 0) {
            continue;
        }
        let (branches, truncated) = eng.extend(k)?;
        let mut best: Option<(Verdict, &Branch)> = None;
        let mut any_undecided = truncated;
        for b in &branches {
            let v = if b.failed || b.coeffs.len() < sys.opts.horizon {
                Verdict::Undecided
            } else {
                verdict_of(&b.vals, &b.bounded, window)
            };
            if v == Verdict::Undecided {
                any_undecided = true;
            }
            let better = match best {
                None => true,
                Some((Verdict::Convergent, _)) => false,
                Some(_) => v == Verdict::Convergent,
            };
            if better {
                best = Some((v, b));
            }
        }
        let (mut verdict, b) = best.expect("at least one branch");
        if verdict == Verdict::Divergent && any_undecided {
            verdict = Verdict::Undecided;
        }
        let series: Vec<TauSeries> = (0..r)
            .map(|a| TauSeries::new(&ctx, b.coeffs.iter().map(|v| v[a].clone()).collect()))
            .collect();
        let residual_ok = b.coeffs.len() == sys.opts.horizon && eng.residual_ok(&series);
        if verdict == Verdict::Convergent && !residual_ok {
            verdict = Verdict::Undecided;
        }
        candidates.push(Candidate {
            coords: coords.clone(),
            profile: b.vals.iter().map(|&v| to_ratio(&ctx, v)).collect(),
            bounded: b.bounded.clone(),
            series,
            verdict,
            pruned: b.pruned.clone(),
            residual_ok,
        });
    }
    let mut basis = Vec::new();
    let mut chosen: Vec<Vec<u32>> = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        if c.verdict != Verdict::Convergent {
            continue;
        }
        let mut trial = chosen.clone();
        trial.push(c.coords.clone());
        if fq_rank(&ctx, &trial) > chosen.len() {
            chosen = trial;
            basis.push(i);
        }
    }
    let rank = basis.len();
    let maybe: Vec<Vec<u32>> =
        candidates.iter().filter(|c| c.verdict != Verdict::Divergent).map(|c| c.coords.clone()).collect();
    let missing = eng.step.expected_dim.saturating_sub(eng.step.kernel_basis.len());
    let upper = (fq_rank(&ctx, &maybe) + missing).min(r);
    Ok(SolutionCertificate {
        direction: sys.direction,
        horizon: sys.opts.horizon,
        window,
        precision: ctx.config().precision,
        kernel_dim: eng.step.kernel_basis.len(),
        kernel_complete: eng.step.complete,
        candidates,
        basis,
        rank,
        upper,
        status: if upper == rank { RankStatus::Exact } else { RankStatus::LowerBound },
    })
}

/// Solve the system, growing the coefficient field when the kernel needs it.
pub fn twisted_solve(sys: &TwistedSystem) -> Result<SolutionCertificate> {
    with_growth(&sys.ctx(), |c| {
        let s = if Arc::ptr_eq(c, &sys.ctx()) { sys.clone() } else { sys.lift(c)? };
        twisted_solve_here(&s)
    })
}

#[derive(Clone, Debug)]
pub struct RankResult {
    pub value: usize,
    pub upper: usize,
    pub status: RankStatus,
    pub certificate: SolutionCertificate,
}

fn rank_of(m: &AnalyticMotive, dir: Direction, opts: &H1Options) -> Result<RankResult> {
    let q = m.q_matrix()?;
    let sys = TwistedSystem::new(&q, dir, opts)?;
    let cert = twisted_solve(&sys)?;
    Ok(RankResult { value: cert.rank, upper: cert.upper, status: cert.status, certificate: cert })
}

/// h^1: rank of the tau-fixed points of M{T}.
pub fn h1_of(m: &AnalyticMotive, opts: &H1Options) -> Result<RankResult> {
    rank_of(m, Direction::Upper, opts)
}

/// h_1: rank of the lattice of tau-equivariant functionals.
pub fn h_1_of(m: &AnalyticMotive, opts: &H1Options) -> Result<RankResult> {
    rank_of(m, Direction::Lower, opts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Uniformizability {
    Uniformizable,
    NotUniformizable,
    Undecided,
}

/// Fast path for T e = theta e + A tau e + tau^2 e: every entry of A has v > q/(q^2-1).
pub fn valuation_bound_holds(m: &AnalyticMotive) -> bool {
    let shape = m.k() == 2 && m.nilpotent_part().is_zero() && m.coeff(2).is_identity();
    if !shape {
        return false;
    }
    let ctx = m.zero().ctx().clone();
    let q = m.q() as i128;
    m.coeff(1).entries().all(|x| match x.valuation() {
        None => true,
        Some(v) => v * (q * q - 1) > q * ctx.scale(),
    })
}

pub fn uniformizability(m: &AnalyticMotive, opts: &H1Options) -> Result<Uniformizability> {
    if valuation_bound_holds(m) {
        return Ok(Uniformizability::Uniformizable);
    }
    let (r, _) = m.rank_dim()?;
    let lower = h_1_of(m, opts)?;
    if lower.value == r {
        return Ok(Uniformizability::Uniformizable);
    }
    if lower.upper < r {
        return Ok(Uniformizability::NotUniformizable);
    }
    let upper = h1_of(m, opts)?;
    if upper.value == r {
        return Ok(Uniformizability::Uniformizable);
    }
    if upper.upper < r {
        return Ok(Uniformizability::NotUniformizable);
    }
    Ok(Uniformizability::Undecided)
}

/// Gram matrix of (l, g) -> sum_i l_i g_i on the basis candidates, as polynomials in T
/// over F_q (coefficient encodings, constant term first), and whether it is perfect.
#[derive(Clone, Debug)]
pub struct Pairing {
    pub gram: Vec<Vec<Vec<u32>>>,
    pub perfect: bool,
}

pub fn pairing_matrix(upper: &SolutionCertificate, lower: &SolutionCertificate) -> Result<Pairing> {
    if upper.status != RankStatus::Exact || lower.status != RankStatus::Exact {
        return Err(Error::Precondition("pairing needs exact certificates".into()));
    }
    if upper.direction != Direction::Upper || lower.direction != Direction::Lower {
        return Err(Error::InvalidArgument("expected an upper and a lower certificate".into()));
    }
    let gs = upper.basis_candidates();
    let ls = lower.basis_candidates();
    if gs.is_empty() || gs.len() != ls.len() {
        return Err(Error::Precondition("pairing needs equal nonzero ranks (a uniformizable motive)".into()));
    }
    let ctx_u = gs[0].series[0].ctx().clone();
    let ctx_l = ls[0].series[0].ctx().clone();
    let ctx = if ctx_u.m() >= ctx_l.m() { ctx_u } else { ctx_l };
    let lift = |s: &TauSeries| -> Result<TauSeries> {
        Ok(TauSeries::new(&ctx, s.coeffs().iter().map(|c| c.lift(&ctx)).collect::<Result<Vec<_>>>()?))
    };
    let order = upper.horizon.min(lower.horizon);
    let mut gram = Vec::new();
    for l in &ls {
        let mut row = Vec::new();
        for g in &gs {
            let mut acc = TauSeries::zero(&ctx, order);
            for (a, b) in l.series.iter().zip(&g.series) {
                acc = acc.add(&lift(a)?.truncate(order).mul(&lift(b)?.truncate(order)));
            }
            let mut poly = Vec::new();
            for c in acc.coeffs() {
                match c.terms() {
                    [] => poly.push(0),
                    [(0, a)] => poly.push(ctx.restrict(*a).ok_or_else(|| {
                        Error::Undecided("pairing coefficient outside F_q".into())
                    })?),
                    _ => return Err(Error::Undecided("pairing value is not constant in theta at this precision".into())),
                }
            }
            while poly.last() == Some(&0) {
                poly.pop();
            }
            row.push(poly);
        }
        gram.push(row);
    }
    let f = ctx.fq().clone();
    let fz = Fe::new(f.clone(), 0, 1);
    let tz = TPoly::zero(&fz);
    let m = Mat::from_fn(gram.len(), gram.len(), &tz, |i, j| {
        TPoly::new(gram[i][j].iter().map(|&a| Fe::new(f.clone(), a, 1)).collect(), &fz)
    });
    let d = m.det_ring();
    let perfect = d.degree() == Some(0);
    Ok(Pairing { gram, perfect })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_arith::spec::FieldSpec;
    use crate::cinf_series::CinfConfig;
    use crate::base_arith::rat::ThetaRat;
    use crate::tmotive_core::{carlitz, drinfeld};

    fn analytic_carlitz(p: u32) -> AnalyticMotive {
        let s = FieldSpec::prime(p);
        let ctx = Ctx::new(&s, 1, &CinfConfig::default()).unwrap();
        carlitz(&s).to_analytic(&ctx).unwrap()
    }

    #[test]
    fn carlitz_upper() {
        let m = analytic_carlitz(2);
        let opts = H1Options { horizon: 16, ..H1Options::default() };
        let r = h1_of(&m, &opts).unwrap();
        assert_eq!((r.value, r.status), (1, RankStatus::Exact));
        let c = &r.certificate.candidates[0];
        let prof: Vec<String> = c.profile.iter().take(11).map(|v| v.unwrap().to_string()).collect();
        assert_eq!(prof, ["1", "2", "4", "8", "16", "32", "64", "128", "256", "512", "1024"]);
        assert!(c.pruned.iter().all(|&p| p == 1));
    }

    #[test]
    fn carlitz_lower_and_pairing() {
        for p in [2, 3] {
            let m = analytic_carlitz(p);
            let opts = H1Options { horizon: 12, ..H1Options::default() };
            let up = h1_of(&m, &opts).unwrap();
            let lo = h_1_of(&m, &opts).unwrap();
            assert_eq!((lo.value, lo.status), (1, RankStatus::Exact));
            let pr = pairing_matrix(&up.certificate, &lo.certificate).unwrap();
            assert!(pr.perfect, "{:?}", pr.gram);
        }
    }

    #[test]
    fn verdicts() {
        let s = 10;
        let v = |xs: &[i128]| xs.iter().map(|x| x * s).collect::<Vec<_>>();
        let exact = [false; 6];
        assert_eq!(verdict_of(&v(&[0, 1, 2, 3, 4, 5]), &exact, 6), Verdict::Convergent);
        assert_eq!(verdict_of(&v(&[1, 2, 4, 8, 16, 32]), &exact, 6), Verdict::Convergent);
        assert_eq!(verdict_of(&v(&[-1, -1, -1, -1, -1, -1]), &exact, 6), Verdict::Divergent);
        assert_eq!(verdict_of(&v(&[3, 1, -1, -3, -5, -7]), &exact, 6), Verdict::Divergent);
        // slowing rise toward a limit
        assert_eq!(verdict_of(&[-40, -20, -10, -5, -3, -2], &exact, 6), Verdict::Undecided);
        let mut b = exact;
        b[5] = true;
        assert_eq!(verdict_of(&v(&[0, 1, 2, 3, 4, 5]), &b, 6), Verdict::Undecided);
        assert_eq!(verdict_of(&v(&[0, 1, 2]), &exact[..3], 6), Verdict::Undecided);
    }

    #[test]
    fn drinfeld_rank_two_is_uniformizable() {
        let s = FieldSpec::prime(2);
        let ctx = Ctx::new(&s, 1, &CinfConfig::default()).unwrap();
        let th = ThetaRat::theta(s.fq());
        let one = th.one_like();
        let opts = H1Options { horizon: 10, ..H1Options::default() };
        for a in [[one.clone(), one.clone()], [th.clone(), one.clone()], [one.clone(), th.plus(&one)]] {
            let m = drinfeld(&s, &a).unwrap().to_analytic(&ctx).unwrap();
            let up = h1_of(&m, &opts).unwrap();
            let lo = h_1_of(&m, &opts).unwrap();
            assert_eq!((up.value, up.status), (2, RankStatus::Exact));
            assert_eq!((lo.value, lo.status), (2, RankStatus::Exact));
            assert!(pairing_matrix(&up.certificate, &lo.certificate).unwrap().perfect);
        }
    }

    #[test]
    fn wild_kernel_is_complete() {
        // theta tau + tau^2 over F_3: the step kernel has wildly ramified members
        let s = FieldSpec::prime(3);
        let ctx = Ctx::new(&s, 1, &CinfConfig::default()).unwrap();
        let th = ThetaRat::theta(s.fq());
        let m = drinfeld(&s, &[th.clone(), th.one_like()]).unwrap().to_analytic(&ctx).unwrap();
        let opts = H1Options { horizon: 8, ..H1Options::default() };
        let up = h1_of(&m, &opts).unwrap();
        assert!(up.certificate.kernel_complete);
        assert_eq!((up.value, up.status), (2, RankStatus::Exact));
    }
}
