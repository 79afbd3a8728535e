//! Solving additive equations sum_j b_j y^(q^j) = w by Newton-polygon steps.
//!
//! The Artin-Schreier shape u*y^q + y = w is the case b = [1, u].

use std::cell::RefCell;
use std::sync::Arc;

use num_rational::Ratio;

use super::ctx::Ctx;
use super::element::{sadd, Cinf, INF};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Consecutive non-contracting steps allowed before a branch is declared divergent.
    pub depth: usize,
    /// Residual valuation (scaled) to reach; defaults to relative working precision.
    pub residual_target: Option<i128>,
    pub max_iter: usize,
    /// solve_one returns the partial sum of an abandoned branch, truncated at the
    /// valuation of its next correction, instead of failing.
    pub accept_approx: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { depth: 24, residual_target: None, max_iter: 100_000, accept_approx: false }
    }
}

/// A branch that was abandoned, with the valuations of its correction terms.
#[derive(Clone, Debug)]
pub struct BranchFailure {
    pub reason: Error,
    pub valuations: Vec<Ratio<i128>>,
    /// The partial sum, known modulo terms of valuation at least the next correction.
    pub approx: Option<Cinf>,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub solutions: Vec<Cinf>,
    pub failures: Vec<BranchFailure>,
}

impl SolveReport {
    pub fn complete(&self) -> bool {
        self.failures.is_empty()
    }
}

/// sum_j b_j y^(q^j).
pub fn apply(coeffs: &[Cinf], y: &Cinf) -> Cinf {
    let mut acc = Cinf::zero(y.ctx());
    for (j, b) in coeffs.iter().enumerate() {
        if b.terms().is_empty() && b.is_exact() {
            continue;
        }
        acc = acc.add(&b.mul(&y.frob(j as u32)));
    }
    acc
}

struct Polygon {
    q: i128,
    /// (j, valuation, leading coefficient) of the nonzero coefficients.
    pts: Vec<(u32, i128, u32)>,
    /// Breakpoints (alpha, indices attaining the minimum), increasing.
    breaks: Vec<(Ratio<i128>, Vec<usize>)>,
}

impl Polygon {
    fn new(q: u32, coeffs: &[Cinf]) -> Polygon {
        let q = q as i128;
        let pts: Vec<(u32, i128, u32)> = coeffs
            .iter()
            .enumerate()
            .filter_map(|(j, b)| b.lead().map(|(v, c)| (j as u32, v, c)))
            .collect();
        let mut poly = Polygon { q, pts, breaks: vec![] };
        let mut cands: Vec<Ratio<i128>> = Vec::new();
        for a in 0..poly.pts.len() {
            for b in a + 1..poly.pts.len() {
                let (ja, va, _) = poly.pts[a];
                let (jb, vb, _) = poly.pts[b];
                cands.push(Ratio::new(va - vb, q.pow(jb) - q.pow(ja)));
            }
        }
        cands.sort();
        cands.dedup();
        for al in cands {
            let set = poly.argmin(al);
            if set.len() >= 2 {
                poly.breaks.push((al, set));
            }
        }
        poly
    }
    fn value(&self, i: usize, al: Ratio<i128>) -> Ratio<i128> {
        let (j, v, _) = self.pts[i];
        Ratio::from_integer(v) + al * self.q.pow(j)
    }
    fn argmin(&self, al: Ratio<i128>) -> Vec<usize> {
        let m = (0..self.pts.len()).map(|i| self.value(i, al)).min().unwrap();
        (0..self.pts.len()).filter(|&i| self.value(i, al) == m).collect()
    }
    /// The alpha with phi(alpha) = target, and the indices attaining it.
    fn solve_for(&self, target: i128) -> (Ratio<i128>, Vec<usize>) {
        let al = self
            .pts
            .iter()
            .map(|&(j, v, _)| Ratio::new(target - v, self.q.pow(j)))
            .max()
            .unwrap();
        (al, self.argmin(al))
    }
    /// Largest grid alpha with phi(alpha) <= target.
    fn inverse_floor(&self, target: i128) -> i128 {
        if target >= INF {
            return INF;
        }
        self.solve_for(target).0.floor().to_integer()
    }
    fn max_break(&self) -> Option<Ratio<i128>> {
        self.breaks.last().map(|b| b.0)
    }
    fn phi(&self, al: Ratio<i128>) -> Ratio<i128> {
        (0..self.pts.len()).map(|i| self.value(i, al)).min().unwrap()
    }
}

fn grid(al: Ratio<i128>) -> Result<i128> {
    if al.is_integer() {
        Ok(al.to_integer())
    } else {
        Err(Error::SCapExceeded)
    }
}

// ---- finite-field additive equations ----

/// Solve sum a_j x^(q^j) = b over the coefficient field; returns every solution.
/// Asks for a larger field when the kernel is not fully rational or b is not hit.
pub fn ff_solve(ctx: &Arc<Ctx>, coeffs: &[(u32, u32)], b: u32) -> Result<Vec<u32>> {
    let jmin = coeffs.iter().map(|c| c.0).min().unwrap();
    let jmax = coeffs.iter().map(|c| c.0).max().unwrap();
    let shifted: Vec<(u32, u32)> = coeffs.iter().map(|&(j, a)| (j - jmin, a)).collect();
    let full = (ctx.spec().e * (jmax - jmin)) as usize;
    match ff_solve_in(ctx, &shifted, b, full) {
        Some(xs) => {
            let mut cs: Vec<u32> = xs
                .into_iter()
                .map(|mut x| {
                    for _ in 0..jmin {
                        x = ctx.frob_inv(x);
                    }
                    x
                })
                .collect();
            cs.sort_unstable();
            Ok(cs)
        }
        None => {
            let mut k = 2;
            loop {
                let m = ctx.m() * k;
                let big = ctx.with_m(m).map_err(|_| Error::FieldCap { needed: m, cap: ctx.m_cap() })?;
                let t = big.lift_table(ctx)?;
                let lifted: Vec<(u32, u32)> = shifted.iter().map(|&(j, a)| (j, t[a as usize])).collect();
                if ff_solve_in(&big, &lifted, t[b as usize], full).is_some() {
                    return Err(Error::NeedExtension(m));
                }
                k += 1;
            }
        }
    }
}

fn ff_apply(ctx: &Ctx, coeffs: &[(u32, u32)], x: u32) -> u32 {
    let f = ctx.ext();
    coeffs.iter().fold(0, |acc, &(j, a)| f.add(acc, f.mul(a, ctx.frob(x, j))))
}

/// Solutions in this field, or None when the kernel has F_p-dimension below `full`
/// or b is not in the image.
fn ff_solve_in(ctx: &Ctx, coeffs: &[(u32, u32)], b: u32, full: usize) -> Option<Vec<u32>> {
    let f = ctx.ext();
    let p = f.p();
    let n = f.degree() as usize;
    // Column i is the image of the i-th basis element p^i.
    let cols: Vec<Vec<u32>> =
        (0..n).map(|i| f.coords(ff_apply(ctx, coeffs, p.pow(i as u32)))).collect();
    let (kernel, part) = fp_solve(p, n, &cols, &f.coords(b));
    if kernel.len() < full {
        return None;
    }
    let part = part?;
    let x0 = f.from_coords(&part);
    let kel: Vec<u32> = kernel.iter().map(|v| f.from_coords(v)).collect();
    let mut out = vec![x0];
    for kv in kel {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for &x in &out {
            let mut acc = x;
            for _ in 0..p {
                next.push(acc);
                acc = f.add(acc, kv);
            }
        }
        out = next;
    }
    out.sort_unstable();
    out.dedup();
    Some(out)
}

/// Solve M x = b over F_p with M given by columns; returns (kernel basis, particular).
fn fp_solve(p: u32, n: usize, cols: &[Vec<u32>], b: &[u32]) -> (Vec<Vec<u32>>, Option<Vec<u32>>) {
    let ncols = cols.len();
    // Augmented row-major matrix.
    let mut a: Vec<Vec<u32>> = (0..n)
        .map(|r| {
            let mut row: Vec<u32> = (0..ncols).map(|c| cols[c][r]).collect();
            row.push(b[r]);
            row
        })
        .collect();
    let inv = |x: u32| -> u32 {
        let mut r = 1u64;
        let mut base = x as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        r as u32
    };
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..n).find(|&r| a[r][col] != 0) else { continue };
        a.swap(row, pr);
        let iv = inv(a[row][col]);
        for x in a[row].iter_mut() {
            *x = (*x as u64 * iv as u64 % p as u64) as u32;
        }
        for r in 0..n {
            if r != row && a[r][col] != 0 {
                let fac = a[r][col];
                for c in 0..=ncols {
                    let sub = (fac as u64 * a[row][c] as u64 % p as u64) as u32;
                    a[r][c] = (a[r][c] + p - sub) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let consistent = (row..n).all(|r| a[r][ncols] == 0);
    let part = consistent.then(|| {
        let mut x = vec![0; ncols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = a[i][ncols];
        }
        x
    });
    let mut kernel = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; ncols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - a[i][free]) % p;
        }
        kernel.push(v);
    }
    (kernel, part)
}

// ---- series solver ----

struct Problem<'a> {
    ctx: Arc<Ctx>,
    coeffs: &'a [Cinf],
    w: &'a Cinf,
    poly: Polygon,
    cap: i128,
    opts: &'a SolveOptions,
    inv_b0: Option<Cinf>,
    /// Kernel branches that could not be opened.
    lost: RefCell<Vec<BranchFailure>>,
}

struct State {
    y: Cinf,
    last: Option<Ratio<i128>>,
    steps: usize,
    record: Vec<i128>,
}

enum Step {
    Done(Cinf),
    Branch(Vec<State>),
    Fail(BranchFailure),
    Partial(Vec<State>, BranchFailure),
}

impl<'a> Problem<'a> {
    fn residual(&self, y: &Cinf) -> Cinf {
        let r = self.w.sub(&apply(self.coeffs, y));
        if r.is_exact() && r.terms().is_empty() {
            return r;
        }
        r.with_prec(self.cap)
    }

    fn finish(&self, y: &Cinf, r: &Cinf) -> Cinf {
        let p = self.poly.inverse_floor(r.prec());
        Cinf::from_terms(&self.ctx, y.terms().to_vec(), p)
    }

    fn kernel_children(&self, st: &State, upto: Option<Ratio<i128>>) -> Result<Vec<State>> {
        let mut out = Vec::new();
        for (al, set) in &self.poly.breaks {
            if st.last.is_some_and(|l| *al <= l) || upto.is_some_and(|u| *al >= u) {
                continue;
            }
            let eq: Vec<(u32, u32)> = set.iter().map(|&i| (self.poly.pts[i].0, self.poly.pts[i].2)).collect();
            let roots = match ff_solve(&self.ctx, &eq, 0) {
                Ok(r) => r,
                Err(err @ Error::FieldCap { .. }) => {
                    self.lost.borrow_mut().push(self.fail(err, st, None));
                    continue;
                }
                Err(err) => return Err(err),
            };
            let e = grid(*al);
            for c in roots.into_iter().filter(|&c| c != 0) {
                let e = e.clone()?;
                out.push(State {
                    y: st.y.add(&Cinf::monomial(&self.ctx, c, e)),
                    last: Some(*al),
                    steps: st.steps,
                    record: st.record.clone(),
                });
            }
        }
        Ok(out)
    }

    fn fail(&self, reason: Error, st: &State, next: Option<Ratio<i128>>) -> BranchFailure {
        let valuations = st.record.iter().skip(1).map(|&e| Ratio::new(e, self.ctx.scale())).collect();
        let approx = next
            .map(|al| st.y.with_prec(al.floor().to_integer().min(st.y.prec())));
        BranchFailure { reason, valuations, approx }
    }

    /// One expansion step; `all` also spawns the kernel-type branches.
    fn step(&self, st: State, all: bool) -> Result<Step> {
        let r = self.residual(&st.y);
        let Some((vr, lr)) = r.lead() else {
            let mut kids = if all { self.kernel_children(&st, None)? } else { vec![] };
            let done = self.finish(&st.y, &r);
            if kids.is_empty() {
                return Ok(Step::Done(done));
            }
            kids.insert(0, State { y: done, last: Some(Ratio::from_integer(INF)), steps: 0, record: vec![] });
            return Ok(Step::Branch(kids));
        };
        let (al, set) = self.poly.solve_for(vr);
        if st.last.is_some_and(|l| al <= l) {
            return Err(Error::Defect("additive solver lost monotonicity".into()));
        }
        let mut kids = if all { self.kernel_children(&st, Some(al))? } else { vec![] };
        let contracting = self.inv_b0.is_some()
            && set == [0]
            && self.poly.pts[0].0 == 0
            && self.poly.max_break().is_none_or(|b| al > b);
        if contracting {
            let main = match self.iterate(st.y.clone()) {
                Ok(y) => Step::Done(y),
                Err(e @ (Error::NeedExtension(_) | Error::FieldCap { .. })) => return Err(e),
                Err(e) => Step::Fail(self.fail(e, &st, None)),
            };
            if kids.is_empty() {
                return Ok(main);
            }
            let mut states = Vec::new();
            match main {
                Step::Done(y) => states.push(State { y, last: Some(Ratio::from_integer(INF)), steps: 0, record: vec![] }),
                Step::Fail(f) => return Ok(Step::Fail(f)),
                Step::Branch(_) | Step::Partial(..) => unreachable!(),
            }
            states.extend(kids);
            return Ok(Step::Branch(states));
        }
        let e = match grid(al) {
            Ok(e) => e,
            Err(err) => return Ok(Step::Fail(self.fail(err, &st, Some(al)))),
        };
        let mut record = st.record.clone();
        record.push(e);
        if st.steps + 1 > self.opts.depth {
            return Ok(Step::Fail(self.fail(Error::Divergent, &State { record, ..st }, Some(al))));
        }
        let eq: Vec<(u32, u32)> = set.iter().map(|&i| (self.poly.pts[i].0, self.poly.pts[i].2)).collect();
        let roots = match ff_solve(&self.ctx, &eq, lr) {
            Ok(r) => r,
            Err(err @ Error::FieldCap { .. }) => {
                let f = self.fail(err, &st, Some(al));
                return Ok(if kids.is_empty() { Step::Fail(f) } else { Step::Partial(kids, f) });
            }
            Err(err) => return Err(err),
        };
        let take = if all { roots.len() } else { 1 };
        for c in roots.into_iter().take(take) {
            kids.push(State {
                y: st.y.add(&Cinf::monomial(&self.ctx, c, e)),
                last: Some(al),
                steps: st.steps + 1,
                record: record.clone(),
            });
        }
        Ok(Step::Branch(kids))
    }

    /// Fixed-point iteration y <- y + b_0^{-1} (w - L(y)) in the contracting regime.
    fn iterate(&self, mut y: Cinf) -> Result<Cinf> {
        let inv = self.inv_b0.as_ref().unwrap();
        for _ in 0..self.opts.max_iter {
            let r = self.residual(&y);
            if r.terms().is_empty() {
                return Ok(self.finish(&y, &r));
            }
            let corr = r.mul(inv);
            if corr.terms().is_empty() {
                return Err(Error::PrecisionExhausted("correction lost below precision".into()));
            }
            let exact = Cinf::from_terms(&self.ctx, corr.terms().to_vec(), INF);
            y = y.add(&exact);
        }
        Err(Error::PrecisionExhausted("fixed-point iteration did not settle".into()))
    }
}

fn prepare<'a>(coeffs: &'a [Cinf], w: &'a Cinf, opts: &'a SolveOptions) -> Result<(usize, Problem<'a>)> {
    let ctx = w.ctx().clone();
    let j0 = coeffs
        .iter()
        .position(|b| !b.terms().is_empty())
        .ok_or_else(|| Error::InvalidArgument("additive operator is zero at its precision".into()))?;
    let cs = &coeffs[j0..];
    let poly = Polygon::new(ctx.q(), cs);
    let inv_b0 = cs[0].inv().ok();
    let lead_alpha = {
        let mut cands: Vec<Ratio<i128>> = poly.breaks.iter().map(|b| b.0).collect();
        if let Some(v) = w.valuation() {
            cands.push(poly.solve_for(v).0);
        }
        cands.into_iter().min()
    };
    let cap = match (opts.residual_target, lead_alpha) {
        (Some(t), _) => t,
        (None, Some(al)) => {
            let base = poly.phi(al).floor().to_integer().max(w.valuation().unwrap_or(i128::MIN));
            sadd(base, ctx.work())
        }
        (None, None) => INF,
    };
    Ok((j0, Problem { ctx, coeffs: cs, w, poly, cap, opts, inv_b0, lost: RefCell::new(vec![]) }))
}

fn unshift(y: Cinf, j0: usize) -> Result<Cinf> {
    let mut y = y;
    for _ in 0..j0 {
        y = y.qth_root()?;
    }
    Ok(y)
}

/// Every solution reachable in the fractional-exponent model, plus abandoned branches.
pub fn solve_all(coeffs: &[Cinf], w: &Cinf, opts: &SolveOptions) -> Result<SolveReport> {
    let (j0, prob) = prepare(coeffs, w, opts)?;
    let mut queue = vec![State { y: Cinf::zero(&prob.ctx), last: None, steps: 0, record: vec![] }];
    let mut sols: Vec<Cinf> = Vec::new();
    let mut failures = Vec::new();
    while let Some(st) = queue.pop() {
        if st.last == Some(Ratio::from_integer(INF)) {
            sols.push(st.y);
            continue;
        }
        match prob.step(st, true)? {
            Step::Done(y) => sols.push(y),
            Step::Fail(mut f) => {
                f.approx = f.approx.and_then(|y| unshift(y, j0).ok());
                failures.push(f)
            }
            Step::Branch(kids) => queue.extend(kids.into_iter().rev()),
            Step::Partial(kids, mut f) => {
                f.approx = f.approx.and_then(|y| unshift(y, j0).ok());
                failures.push(f);
                queue.extend(kids.into_iter().rev())
            }
        }
    }
    failures.extend(prob.lost.take());
    let mut out: Vec<Cinf> = Vec::new();
    for y in sols {
        let y = match unshift(y, j0) {
            Ok(y) => y,
            Err(e) => {
                failures.push(BranchFailure { reason: e, valuations: vec![], approx: None });
                continue;
            }
        };
        if !out.iter().any(|o| o.eq_at_prec(&y)) {
            out.push(y);
        }
    }
    out.sort_by(|a, b| (a.val_or_prec(), a.terms()).cmp(&(b.val_or_prec(), b.terms())));
    Ok(SolveReport { solutions: out, failures })
}

/// One particular solution: no kernel-type terms, smallest root at every step.
pub fn solve_one(coeffs: &[Cinf], w: &Cinf, opts: &SolveOptions) -> Result<Cinf> {
    let (j0, prob) = prepare(coeffs, w, opts)?;
    let mut st = State { y: Cinf::zero(&prob.ctx), last: None, steps: 0, record: vec![] };
    loop {
        match prob.step(st, false)? {
            Step::Done(y) => return unshift(y, j0),
            Step::Fail(f) => {
                return match f.approx {
                    Some(y) if opts.accept_approx => unshift(y, j0),
                    _ => Err(f.reason),
                }
            }
            Step::Branch(mut kids) | Step::Partial(mut kids, _) => st = kids.remove(0),
        }
    }
}

/// Solutions of u*y^q + y = w.
pub fn artin_schreier_solve(u: &Cinf, w: &Cinf, depth: usize) -> Result<SolveReport> {
    let one = Cinf::one(u.ctx());
    let opts = SolveOptions { depth, ..SolveOptions::default() };
    solve_all(&[one, u.clone()], w, &opts)
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
    fn homogeneous_carlitz_step() {
        let c = ctx(2);
        let th = Cinf::theta(&c);
        let rep = artin_schreier_solve(&th, &Cinf::zero(&c), 8).unwrap();
        assert!(rep.complete());
        let strs: Vec<String> = rep.solutions.iter().map(|s| s.to_string()).collect();
        assert_eq!(strs, vec!["t^-1", "0"]);
    }

    #[test]
    fn divergent_boundary() {
        let c = ctx(2);
        let rep = artin_schreier_solve(&Cinf::one(&c), &Cinf::theta_pow(&c, 1, 2), 6).unwrap();
        assert!(rep.solutions.is_empty());
        let f = &rep.failures[0];
        assert_eq!(f.reason, Error::Divergent);
        let want: Vec<Ratio<i128>> = (0..6).map(|n| Ratio::new(-1, 1 << (n + 1))).collect();
        assert_eq!(f.valuations, want);
    }

    #[test]
    fn contracting_solution() {
        let c = ctx(2);
        let th = Cinf::theta(&c);
        let w = Cinf::theta_pow(&c, 1, -2);
        let rep = artin_schreier_solve(&th, &w, 8).unwrap();
        assert_eq!(rep.solutions.len(), 2);
        let y = &rep.solutions[1];
        assert!(y.to_string().starts_with("t^-2+t^-3+t^-5"));
        for y in &rep.solutions {
            let res = th.mul(&y.frob(1)).add(y).sub(&w);
            assert!(res.val_or_prec() >= y.prec());
        }
        assert_eq!(rep.solutions[0].valuation(), Some(c.scale()));
    }

    #[test]
    fn field_growth_requested() {
        // y^4 + y^2 + y = y(y^3 + y + 1) splits over F_8.
        let c = ctx(2);
        let one = Cinf::one(&c);
        let r = solve_all(&[one.clone(), one.clone(), one], &Cinf::zero(&c), &SolveOptions::default());
        assert_eq!(r.unwrap_err(), Error::NeedExtension(3));
    }
}
