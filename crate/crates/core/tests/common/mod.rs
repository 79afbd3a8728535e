//! Generators and property checks shared by the proptest suite and the acceptance runner.
#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use num_rational::Ratio;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use tmotive::analytic::exp::em_action;
use tmotive::analytic::series::TauSeries;
use tmotive::analytic::shift::theta_shift;
use tmotive::base_arith::poly::{FqPoly, Var};
use tmotive::base_arith::rat::ThetaRat;
use tmotive::base_arith::scalar::Scalar;
use tmotive::base_arith::spec::FieldSpec;
use tmotive::cinf_series::{Cinf, CinfConfig, Ctx, INF};
use tmotive::lfunction::{global_l, LSeries};
use tmotive::tmotive_core::{drinfeld, ArithMotive};

pub const CASES: u32 = 256;

pub fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

pub fn ctx(p: u32, m: u32) -> Arc<Ctx> {
    Ctx::new(&FieldSpec::prime(p), m, &CinfConfig::default()).unwrap()
}

/// Terms (numerator, denominator, coefficient) of a series element and an optional precision.
pub type RawCinf = (Vec<(i64, i64, u32)>, Option<i64>);

pub fn raw_cinf() -> impl Strategy<Value = RawCinf> {
    (
        prop::collection::vec((-8i64..24, prop::sample::select(vec![1i64, 2, 3]), 0u32..1024), 0..5),
        prop::option::of(12i64..40),
    )
}

pub fn build_cinf(ctx: &Arc<Ctx>, raw: &RawCinf) -> Cinf {
    let size = ctx.ext().size();
    let terms = raw
        .0
        .iter()
        .map(|&(a, b, c)| (Cinf::scaled(ctx, Ratio::new(a as i128, b as i128)).unwrap(), c % size))
        .collect();
    let prec = raw.1.map(|p| p as i128 * ctx.scale()).unwrap_or(INF);
    Cinf::from_terms(ctx, terms, prec)
}

pub fn frobenius_laws(p: u32, a: &RawCinf, b: &RawCinf, j: u32, k: u32) -> Result<(), TestCaseError> {
    let c = ctx(p, 2);
    let (a, b) = (build_cinf(&c, a), build_cinf(&c, b));
    prop_assert!(a.add(&b).frob(k).eq_at_prec(&a.frob(k).add(&b.frob(k))));
    prop_assert!(a.mul(&b).frob(k).eq_at_prec(&a.frob(k).mul(&b.frob(k))));
    prop_assert_eq!(Cinf::one(&c).frob(k), Cinf::one(&c));
    prop_assert!(a.frob(j).frob(k).eq_at_prec(&a.frob(j + k)));
    prop_assert!(a.neg().frob(k).eq_at_prec(&a.frob(k).neg()));
    Ok(())
}

pub fn valuation_axioms(p: u32, a: &RawCinf, b: &RawCinf) -> Result<(), TestCaseError> {
    let c = ctx(p, 2);
    let exact = |r: &RawCinf| build_cinf(&c, &(r.0.clone(), None));
    let (a, b) = (exact(a), exact(b));
    prop_assert_eq!(Cinf::zero(&c).valuation(), None);
    let (Some(va), Some(vb)) = (a.valuation(), b.valuation()) else { return Ok(()) };
    prop_assert_eq!(a.mul(&b).valuation(), Some(va + vb));
    prop_assert_eq!(a.neg().valuation(), Some(va));
    prop_assert_eq!(a.frob(1).valuation(), Some(va * p as i128));
    prop_assert_eq!(a.inv().unwrap().valuation(), Some(-va));
    let s = a.add(&b);
    match s.valuation() {
        Some(vs) => {
            prop_assert!(vs >= va.min(vb));
            if va != vb {
                prop_assert_eq!(vs, va.min(vb));
            }
        }
        None => prop_assert_eq!(va, vb),
    }
    Ok(())
}

/// Coefficients of a small polynomial over F_q, lowest first.
pub fn raw_poly(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..9, 1..=max_len)
}

pub fn fq_poly(spec: &FieldSpec, c: &[u32], var: Var) -> FqPoly {
    let f = spec.fq();
    FqPoly::new(f.clone(), c.iter().map(|&x| x % f.size()).collect(), var)
}

/// A Drinfeld module with coefficients of degree <= 1 and a nonzero top coefficient.
pub fn raw_drinfeld() -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(raw_poly(2), 1..=2)
}

pub fn build_drinfeld(spec: &FieldSpec, raw: &[Vec<u32>]) -> ArithMotive {
    let f = spec.fq();
    let mut cs: Vec<ThetaRat> = raw.iter().map(|c| ThetaRat::from_poly(fq_poly(spec, c, Var::Theta))).collect();
    if cs.last().unwrap().is_zero() {
        *cs.last_mut().unwrap() = ThetaRat::constant(f.clone(), 1);
    }
    drinfeld(spec, &cs).unwrap()
}

pub fn em_multiplicative(
    p: u32,
    m: &[Vec<u32>],
    a: &[u32],
    b: &[u32],
    x: &[u32],
) -> Result<(), TestCaseError> {
    let spec = FieldSpec::prime(p);
    let m = build_drinfeld(&spec, m);
    let (a, b) = (fq_poly(&spec, a, Var::T), fq_poly(&spec, b, Var::T));
    let x = vec![ThetaRat::from_poly(fq_poly(&spec, x, Var::Theta))];
    let lhs = em_action(&m, &a.mul(&b), &x).unwrap();
    let rhs = em_action(&m, &a, &em_action(&m, &b, &x).unwrap()).unwrap();
    prop_assert_eq!(lhs, rhs);
    let sum = em_action(&m, &a.add(&b), &x).unwrap();
    let parts = em_action(&m, &a, &x).unwrap()[0].plus(&em_action(&m, &b, &x).unwrap()[0]);
    prop_assert_eq!(&sum[0], &parts);
    Ok(())
}

/// T-polynomials of degree < 4 whose i-th coefficient has valuation in [5i + s, 5i + s + 3/2],
/// so sums and products re-expand at T = theta with visibly growing terms.
pub type RawTSeries = Vec<Vec<(i64, u32)>>;

pub fn raw_tseries() -> impl Strategy<Value = RawTSeries> {
    prop::collection::vec(prop::collection::vec((0i64..4, 0u32..16), 0..3), 1..=4)
}

pub const SHIFT_ORDER: usize = 8;

pub fn build_tseries(ctx: &Arc<Ctx>, s: i64, raw: &RawTSeries) -> TauSeries {
    let size = ctx.ext().size();
    let mut c = vec![Cinf::zero(ctx); SHIFT_ORDER];
    for (i, terms) in raw.iter().enumerate() {
        let t = terms
            .iter()
            .map(|&(h, a)| {
                let v = Ratio::new((5 * i as i128 + s as i128) * 2 + h as i128, 2);
                (Cinf::scaled(ctx, v).unwrap(), a % size)
            })
            .collect();
        c[i] = Cinf::from_terms(ctx, t, INF);
    }
    TauSeries::new(ctx, c)
}

pub fn theta_shift_ring_map(p: u32, s: i64, y1: &RawTSeries, y2: &RawTSeries) -> Result<(), TestCaseError> {
    let c = ctx(p, 2);
    let (a, b) = (build_tseries(&c, s, y1), build_tseries(&c, s, y2));
    let sa = theta_shift(&a, 0).unwrap();
    let sb = theta_shift(&b, 0).unwrap();
    let sab = theta_shift(&a.mul(&b), 0).unwrap();
    let ssum = theta_shift(&a.add(&b), 0).unwrap();
    for j in 0..SHIFT_ORDER as i64 {
        let mut acc = Cinf::zero(&c);
        for i in 0..=j {
            acc = acc.add(&sa.coeff(i).unwrap().mul(sb.coeff(j - i).unwrap()));
        }
        prop_assert!(sab.coeff(j).unwrap().eq_at_prec(&acc), "N^{} coefficient", j);
        let add = sa.coeff(j).unwrap().add(sb.coeff(j).unwrap());
        prop_assert!(ssum.coeff(j).unwrap().eq_at_prec(&add));
    }
    Ok(())
}

pub fn global_l_order_independent(p: u32, m: &[Vec<u32>], d: usize, perm: &[usize]) -> Result<(), TestCaseError> {
    let spec = FieldSpec::prime(p);
    let m = build_drinfeld(&spec, m);
    let g = global_l(&m, d).unwrap();
    let f = spec.fq();
    let n = g.factors.len();
    let mut order: Vec<usize> = (0..n).collect();
    for (i, &k) in perm.iter().enumerate().take(n) {
        order.swap(i, i + k % (n - i));
    }
    let mut acc = LSeries::one(&f, d);
    for &i in &order {
        acc = g.factors[i].series.mul(&acc);
    }
    prop_assert_eq!(&acc, &g.series);
    let half = n / 2;
    let fold = |idx: &[usize]| idx.iter().fold(LSeries::one(&f, d), |s, &i| s.mul(&g.factors[i].series));
    prop_assert_eq!(fold(&order[..half]).mul(&fold(&order[half..])), g.series);
    Ok(())
}

/// A command line over the sample definition files.
pub fn cli_case() -> impl Strategy<Value = Vec<String>> {
    let files = vec!["carlitz_q2.toml", "carlitz_q3.toml", "drinfeld_rank2_q2.toml", "carlitz_f4.toml"];
    (0usize..8, prop::sample::select(files), 1usize..4, prop::bool::ANY).prop_map(|(cmd, file, knob, records)| {
        let f = data(file);
        let mut args: Vec<String> = vec!["tmotive".into()];
        if records {
            args.extend(["--format".into(), "records".into()]);
        }
        let rest: Vec<String> = match cmd {
            0 => vec!["validate".into(), f],
            1 => vec!["validate".into(), "--emit-normalized".into(), f],
            2 => vec!["exp-coeffs".into(), "--count".into(), knob.to_string(), f],
            3 => vec!["lfunction".into(), "--max-deg".into(), knob.to_string(), "--motive".into(), f],
            4 => vec!["lfunction".into(), "--max-deg".into(), knob.to_string(), "--emit".into(), "table".into(), f],
            5 => vec!["dual".into(), f],
            6 => vec!["h1".into(), "--horizon".into(), "8".into(), "--window".into(), "3".into(), f],
            _ => vec!["tensor".into(), f.clone(), f],
        };
        args.extend(rest);
        args
    })
}

pub fn cli_deterministic(args: &[String]) -> Result<(), TestCaseError> {
    let a = tmotive::cli::execute(args.to_vec());
    let b = tmotive::cli::execute(args.to_vec());
    prop_assert_eq!(&a, &b);
    prop_assert!(!a.stdout.is_empty() || a.code != 0);
    Ok(())
}
