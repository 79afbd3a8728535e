//! Lattices in C_inf^n given by generators, their Siegel matrices and the partial
//! fractional-linear action of GL_r(F_q[theta]).

use std::collections::BTreeSet;
use std::sync::Arc;

use num_rational::Ratio;

use crate::base_arith::matrix::{subsets, Mat};
use crate::base_arith::rat::ThetaRat;
use crate::base_arith::scalar::Scalar;
use crate::cinf_series::{Cinf, Ctx, INF};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct LatticeCertificate {
    pub r: usize,
    pub n: usize,
    /// v_inf of the pivots of the C_inf-span elimination.
    pub span_pivots: Vec<Ratio<i128>>,
    /// v_inf of the pivots of the elimination over F_q((1/theta)).
    pub independence_pivots: Vec<Ratio<i128>>,
    /// Smallest precision among the entries, None when every entry is exact.
    pub precision: Option<Ratio<i128>>,
}

#[derive(Clone, Debug)]
pub struct Lattice {
    pub generators: Vec<Vec<Cinf>>,
    pub certificate: LatticeCertificate,
}

impl Lattice {
    pub fn new(generators: Vec<Vec<Cinf>>) -> Result<Lattice> {
        let certificate = is_lattice(&generators)?;
        Ok(Lattice { generators, certificate })
    }
    pub fn rank(&self) -> usize {
        self.certificate.r
    }
    pub fn dim(&self) -> usize {
        self.certificate.n
    }
    fn ctx(&self) -> &Arc<Ctx> {
        self.generators[0][0].ctx()
    }
}

enum Outcome {
    Full(Vec<i128>),
    Dependent,
    Undecided(usize),
}

/// Row rank by elimination; pivots are the entries of smallest valuation, lowest row first.
/// `want` pivots are needed; rows left without a pivot decide between a proven relation
/// (all exact zeros) and an undecided one.
fn eliminate(mut rows: Vec<Vec<Cinf>>, want: usize) -> Result<Outcome> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut used = vec![false; rows.len()];
    let mut pivots = Vec::new();
    for col in 0..ncols {
        let best = (0..rows.len())
            .filter(|&i| !used[i])
            .filter_map(|i| rows[i][col].valuation().map(|v| (v, i)))
            .min();
        let Some((v, p)) = best else { continue };
        used[p] = true;
        pivots.push(v);
        let inv = rows[p][col].inv()?;
        for i in 0..rows.len() {
            if used[i] || rows[i][col].terms().is_empty() {
                continue;
            }
            let f = rows[i][col].mul(&inv);
            let pr = rows[p].clone();
            for (x, y) in rows[i].iter_mut().zip(&pr) {
                *x = x.sub(&f.mul(y));
            }
        }
        if pivots.len() == want {
            return Ok(Outcome::Full(pivots));
        }
    }
    let rest: Vec<usize> = (0..rows.len()).filter(|&i| !used[i]).collect();
    if rest.iter().any(|&i| rows[i].iter().all(|x| x.is_exact() && x.terms().is_empty())) {
        return Ok(Outcome::Dependent);
    }
    Ok(Outcome::Undecided(pivots.len()))
}

/// For each c in the coefficient field, its coordinates over F_q on 1, b, ..., b^(m-1),
/// b a generator.
fn fq_coords(ctx: &Ctx) -> Vec<Vec<u32>> {
    let ext = ctx.ext();
    let q = ctx.q();
    let m = ctx.m() as usize;
    let g = ext.generator();
    let powers: Vec<u32> = (0..m).map(|i| ext.pow(g, i as i64)).collect();
    let mut table = vec![vec![]; ext.size() as usize];
    let total = (q as u64).pow(m as u32);
    for idx in 0..total {
        let mut a = vec![0u32; m];
        let mut rest = idx;
        for s in a.iter_mut() {
            *s = (rest % q as u64) as u32;
            rest /= q as u64;
        }
        let mut v = 0;
        for (ai, pw) in a.iter().zip(&powers) {
            v = ext.add(v, ext.mul(ctx.embed(*ai), *pw));
        }
        table[v as usize] = a;
    }
    table
}

/// Coordinates of vectors over F_q((1/theta)): one Laurent series per
/// (component, exponent class modulo 1, F_q-basis element).
fn rinf_rows(vectors: &[Vec<Cinf>]) -> Vec<Vec<Cinf>> {
    let ctx = vectors[0][0].ctx().clone();
    let scale = ctx.scale();
    let coords = fq_coords(&ctx);
    let mut keys = BTreeSet::new();
    for v in vectors {
        for (i, x) in v.iter().enumerate() {
            for &(e, c) in x.terms() {
                let j = e.rem_euclid(scale);
                for (b, &a) in coords[c as usize].iter().enumerate() {
                    if a != 0 {
                        keys.insert((i, j, b));
                    }
                }
            }
        }
    }
    vectors
        .iter()
        .map(|v| {
            keys.iter()
                .map(|&(i, j, b)| {
                    let x = &v[i];
                    let terms: Vec<(i128, u32)> = x
                        .terms()
                        .iter()
                        .filter(|t| t.0.rem_euclid(scale) == j)
                        .map(|&(e, c)| (e - j, ctx.embed(coords[c as usize][b])))
                        .collect();
                    let prec = if x.prec() >= INF {
                        INF
                    } else {
                        // whole powers theta^-k with k scale + j below the precision
                        let k = (x.prec() - j + scale - 1).div_euclid(scale);
                        k * scale
                    };
                    Cinf::from_terms(&ctx, terms, prec)
                })
                .collect()
        })
        .collect()
}

/// Check that r vectors span C_inf^n and are independent over F_q((1/theta)).
pub fn is_lattice(vectors: &[Vec<Cinf>]) -> Result<LatticeCertificate> {
    let r = vectors.len();
    let n = vectors.first().map(|v| v.len()).unwrap_or(0);
    if r == 0 || n == 0 {
        return Err(Error::SizeMismatch("need at least one nonempty vector".into()));
    }
    if vectors.iter().any(|v| v.len() != n) {
        return Err(Error::SizeMismatch("generators of different lengths".into()));
    }
    let ctx = vectors[0][0].ctx().clone();
    let ratio = |v: i128| Ratio::new(v, ctx.scale());
    let span = match eliminate(vectors.to_vec(), n)? {
        Outcome::Full(p) => p,
        Outcome::Dependent => return Err(Error::NotLattice(format!("the generators do not span C_inf^{n}"))),
        Outcome::Undecided(k) => {
            return Err(Error::Undecided(format!("span rank is {k} at this precision, need {n}")))
        }
    };
    let indep = match eliminate(rinf_rows(vectors), r)? {
        Outcome::Full(p) => p,
        Outcome::Dependent => return Err(Error::NotLattice("the generators are dependent over F_q((1/theta))".into())),
        Outcome::Undecided(k) => {
            return Err(Error::Undecided(format!("independence over F_q((1/theta)) certified for rank {k} of {r}")))
        }
    };
    let prec = vectors.iter().flatten().map(|x| x.prec()).min().filter(|&p| p < INF);
    Ok(LatticeCertificate {
        r,
        n,
        span_pivots: span.into_iter().map(ratio).collect(),
        independence_pivots: indep.into_iter().map(ratio).collect(),
        precision: prec.map(ratio),
    })
}

/// An (r - n) x n matrix S with e_{n+j} = sum_i S_ji e_i.
#[derive(Clone, Debug, PartialEq)]
pub struct SiegelMatrix {
    pub s: Mat<Cinf>,
}

impl SiegelMatrix {
    pub fn r(&self) -> usize {
        self.s.rows() + self.s.cols()
    }
    pub fn n(&self) -> usize {
        self.s.cols()
    }
}

/// det(m) when it is certified nonzero; `exact_zero` is raised for a proven zero.
fn certified_inverse(m: &Mat<Cinf>, exact_zero: Error) -> Result<Mat<Cinf>> {
    let d = m.det_ring();
    if d.terms().is_empty() {
        if d.is_exact() {
            return Err(exact_zero);
        }
        return Err(Error::Undecided("determinant vanishes at this precision".into()));
    }
    m.inverse()
}

/// Siegel matrix of the basis taken in the given order.
pub fn siegel_matrix(l: &Lattice, ordering: &[usize]) -> Result<SiegelMatrix> {
    let (r, n) = (l.rank(), l.dim());
    let mut seen = ordering.to_vec();
    seen.sort_unstable();
    if seen != (0..r).collect::<Vec<_>>() {
        return Err(Error::InvalidArgument(format!("ordering must be a permutation of 0..{r}")));
    }
    siegel_of(&ordering.iter().map(|&i| l.generators[i].clone()).collect::<Vec<_>>(), n)
}

fn siegel_of(basis: &[Vec<Cinf>], n: usize) -> Result<SiegelMatrix> {
    let r = basis.len();
    let z = basis[0][0].zero_like();
    let b = Mat::from_fn(n, n, &z, |i, a| basis[a][i].clone());
    let e2 = Mat::from_fn(n, r - n, &z, |i, j| basis[n + j][i].clone());
    let bi = certified_inverse(&b, Error::NoSiegel)?;
    Ok(SiegelMatrix { s: bi.mul(&e2).transpose() })
}

/// The basis e'_a = sum_b g_ab e_b.
pub fn act_on_basis(g: &Mat<ThetaRat>, basis: &[Vec<Cinf>]) -> Result<Vec<Vec<Cinf>>> {
    let r = basis.len();
    if g.rows() != r || g.cols() != r {
        return Err(Error::SizeMismatch("g must be r x r".into()));
    }
    let ctx = basis[0][0].ctx().clone();
    let n = basis[0].len();
    Ok((0..r)
        .map(|a| {
            (0..n)
                .map(|i| {
                    let mut acc = Cinf::zero(&ctx);
                    for (b, e) in basis.iter().enumerate() {
                        acc = acc.add(&Cinf::from_rat(&ctx, g.get(a, b)).mul(&e[i]));
                    }
                    acc
                })
                .collect()
        })
        .collect())
}

fn check_unimodular(g: &Mat<ThetaRat>) -> Result<()> {
    if !g.is_square() || g.entries().any(|x| !x.is_poly()) {
        return Err(Error::InvalidArgument("g must be a square matrix over F_q[theta]".into()));
    }
    let d = g.det()?;
    if d.is_zero() || !(d.is_poly() && d.num().is_constant()) {
        return Err(Error::InvalidArgument("g is not invertible over F_q[theta]".into()));
    }
    Ok(())
}

/// S' = (g21 + g22 S)(g11 + g12 S)^{-1}.
pub fn siegel_action(g: &Mat<ThetaRat>, s: &SiegelMatrix) -> Result<SiegelMatrix> {
    check_unimodular(g)?;
    let (r, n) = (s.r(), s.n());
    if g.rows() != r {
        return Err(Error::SizeMismatch(format!("g is {}x{}, the Siegel matrix needs r = {r}", g.rows(), g.cols())));
    }
    let ctx = s.s.zero_elem().ctx().clone();
    let z = Cinf::zero(&ctx);
    let gc = g.map(&z, |x| Cinf::from_rat(&ctx, x));
    let g11 = gc.block(0, 0, n, n);
    let g12 = gc.block(0, n, n, r - n);
    let g21 = gc.block(n, 0, r - n, n);
    let g22 = gc.block(n, n, r - n, r - n);
    let den = g11.add(&g12.mul(&s.s));
    let inv = certified_inverse(&den, Error::NotDefined)?;
    Ok(SiegelMatrix { s: g21.add(&g22.mul(&s.s)).mul(&inv) })
}

/// The dual lattice's Siegel matrix S^t, an n x (r - n) matrix for C_inf^(r-n).
pub fn dual_siegel(s: &SiegelMatrix) -> SiegelMatrix {
    SiegelMatrix { s: s.s.transpose() }
}

/// Exponent sets {0 = e_1 < ... < e_k} in 0..r, the coordinates of the k-th wedge.
fn wedge_exponents(r: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(r - 1, k - 1).into_iter().map(|s| std::iter::once(0).chain(s.into_iter().map(|x| x + 1)).collect()).collect()
}

/// For a rank r lattice in C_inf: the generators indexed by k-subsets I, with coordinates
/// det(omega_{I_a}^(q^{e_b})) over the exponent sets e containing 0.
pub fn exterior_lattice(l: &Lattice, k: usize) -> Result<Lattice> {
    if l.dim() != 1 {
        return Err(Error::Precondition("exterior powers of lattices are implemented in C_inf^1".into()));
    }
    let r = l.rank();
    if k == 0 || k > r {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= {r}")));
    }
    let z = Cinf::zero(l.ctx());
    let omegas: Vec<&Cinf> = l.generators.iter().map(|v| &v[0]).collect();
    let exps = wedge_exponents(r, k);
    let gens: Vec<Vec<Cinf>> = subsets(r, k)
        .iter()
        .map(|idx| {
            exps.iter()
                .map(|e| Mat::from_fn(k, k, &z, |a, b| omegas[idx[a]].frob(e[b] as u32)).det_ring())
                .collect()
        })
        .collect();
    Lattice::new(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_arith::spec::FieldSpec;
    use crate::cinf_series::CinfConfig;

    fn ctx(p: u32, m: u32) -> Arc<Ctx> {
        Ctx::new(&FieldSpec::prime(p), m, &CinfConfig::default()).unwrap()
    }

    fn omega(c: &Arc<Ctx>) -> Cinf {
        // a generator of F_4 over F_2
        Cinf::monomial(c, c.ext().generator(), 0)
    }

    #[test]
    fn lattice_examples() {
        let c = ctx(2, 2);
        let one = Cinf::one(&c);
        let l = is_lattice(&[vec![one.clone()], vec![omega(&c)]]).unwrap();
        assert_eq!((l.r, l.n), (2, 1));
        let th = Cinf::theta(&c);
        assert!(matches!(is_lattice(&[vec![one.clone()], vec![th.clone()]]), Err(Error::NotLattice(_))));
        let z = Cinf::zero(&c);
        assert!(is_lattice(&[vec![one.clone(), z.clone()], vec![z.clone(), one.clone()]]).is_ok());
        // theta^(1/2) is not in F_q((1/theta))
        let half = Cinf::monomial(&c, 1, -c.scale() / 2);
        assert!(is_lattice(&[vec![one.clone()], vec![half]]).is_ok());
        // a relation hidden below the precision
        let fuzzy = one.add(&Cinf::zero_to(&c, 3 * c.scale()));
        assert!(matches!(is_lattice(&[vec![one.clone()], vec![fuzzy]]), Err(Error::Undecided(_))));
    }

    #[test]
    fn siegel_examples() {
        let c = ctx(2, 2);
        let (one, z, w) = (Cinf::one(&c), Cinf::zero(&c), omega(&c));
        let basis = vec![
            vec![one.clone(), z.clone()],
            vec![z.clone(), one.clone()],
            vec![w.clone(), z.clone()],
            vec![z.clone(), w.clone()],
        ];
        let l = Lattice::new(basis).unwrap();
        let s = siegel_matrix(&l, &[0, 1, 2, 3]).unwrap();
        assert_eq!(s.s, Mat::scalar(2, &w));
        assert_eq!(dual_siegel(&s), s);
        assert!(matches!(siegel_matrix(&l, &[0, 2, 1, 3]), Err(Error::NoSiegel)));
    }

    #[test]
    fn swap_action() {
        let c = ctx(2, 2);
        let f = FieldSpec::prime(2).fq();
        let swap = Mat::from_rows(
            vec![
                vec![ThetaRat::zero(f.clone()), ThetaRat::constant(f.clone(), 1)],
                vec![ThetaRat::constant(f.clone(), 1), ThetaRat::zero(f.clone())],
            ],
            &ThetaRat::zero(f.clone()),
        )
        .unwrap();
        let w = omega(&c);
        let s = SiegelMatrix { s: Mat::scalar(1, &w) };
        assert_eq!(siegel_action(&swap, &s).unwrap().s, Mat::scalar(1, &w.inv().unwrap()));
        let zero = SiegelMatrix { s: Mat::scalar(1, &Cinf::zero(&c)) };
        assert!(matches!(siegel_action(&swap, &zero), Err(Error::NotDefined)));
        let id = Mat::identity(2, &ThetaRat::zero(f));
        assert_eq!(siegel_action(&id, &s).unwrap(), s);
    }

    #[test]
    fn wedges() {
        let c = ctx(2, 2);
        let w = omega(&c);
        let l = Lattice::new(vec![vec![Cinf::one(&c)], vec![w.clone()]]).unwrap();
        let e = exterior_lattice(&l, 2).unwrap();
        // omega_1 omega_2^q - omega_2 omega_1^q = w^2 + w = 1
        assert_eq!(e.generators, vec![vec![w.frob(1).sub(&w)]]);
        assert_eq!((e.rank(), e.dim()), (1, 1));
        let k1 = exterior_lattice(&l, 1).unwrap();
        assert_eq!(k1.generators, l.generators);
    }
}
