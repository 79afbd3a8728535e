//! The coefficient field and exponent grid shared by a family of series.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::base_arith::gf::{canonical_field, Field, MAX_FIELD_SIZE};
use crate::base_arith::spec::FieldSpec;
use crate::error::{Error, Result};

/// Knobs for the series model. Precision is in valuation units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CinfConfig {
    pub s_cap: u32,
    pub precision: i64,
    /// Largest allowed degree m of the coefficient field over F_q.
    pub m_cap: u32,
}

impl Default for CinfConfig {
    fn default() -> Self {
        CinfConfig { s_cap: 8, precision: 64, m_cap: 16 }
    }
}

/// Shared context: F_q, the coefficient field F_{q^m} and the exponent grid.
///
/// Exponents are stored as integers in units of 1/scale with scale = D * q^s_cap,
/// where D = lcm(q^j - 1, j = 1..4) is prime to p.
pub struct Ctx {
    spec: FieldSpec,
    fq: Arc<Field>,
    ext: Arc<Field>,
    m: u32,
    embed: Vec<u32>,
    restrict: Vec<Option<u32>>,
    q: u32,
    tame: i128,
    scale: i128,
    config: CinfConfig,
}

impl fmt::Debug for Ctx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ctx(q={}, m={}, scale={})", self.q, self.m, self.scale)
    }
}

impl PartialEq for Ctx {
    fn eq(&self, o: &Self) -> bool {
        self.spec == o.spec && self.m == o.m && self.config == o.config
    }
}

fn tame_denominator(q: u32) -> i128 {
    let mut d: i128 = 1;
    for j in 1..=4u32 {
        d = d.lcm(&((q as i128).pow(j) - 1));
    }
    d
}

impl Ctx {
    pub fn new(spec: &FieldSpec, m: u32, config: &CinfConfig) -> Result<Arc<Ctx>> {
        let fq = spec.field()?;
        let q = spec.q();
        let cap_by_size = {
            let mut k = 1;
            while (q as u64).pow(k + 1) <= MAX_FIELD_SIZE {
                k += 1;
            }
            k
        };
        let cap = config.m_cap.min(cap_by_size);
        if m == 0 || m > cap {
            return Err(Error::FieldCap { needed: m, cap });
        }
        let ext = canonical_field(spec.p, spec.e * m)?;
        let embed = embedding(&fq, &ext)?;
        let mut restrict = vec![None; ext.size() as usize];
        for (a, &b) in embed.iter().enumerate() {
            restrict[b as usize] = Some(a as u32);
        }
        let tame = tame_denominator(q);
        let scale = tame * (q as i128).pow(config.s_cap);
        Ok(Arc::new(Ctx {
            spec: spec.clone(),
            fq,
            ext,
            m,
            embed,
            restrict,
            q,
            tame,
            scale,
            config: CinfConfig { m_cap: cap, ..config.clone() },
        }))
    }

    /// Same data with the coefficient field grown to degree m.
    pub fn with_m(&self, m: u32) -> Result<Arc<Ctx>> {
        Ctx::new(&self.spec, m, &self.config)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }
    pub fn fq(&self) -> &Arc<Field> {
        &self.fq
    }
    pub fn ext(&self) -> &Arc<Field> {
        &self.ext
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn m_cap(&self) -> u32 {
        self.config.m_cap
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn config(&self) -> &CinfConfig {
        &self.config
    }
    pub fn scale(&self) -> i128 {
        self.scale
    }
    pub fn tame(&self) -> i128 {
        self.tame
    }
    /// Working precision in scaled units.
    pub fn work(&self) -> i128 {
        self.config.precision as i128 * self.scale
    }
    /// Image of an F_q element in the coefficient field.
    pub fn embed(&self, a: u32) -> u32 {
        self.embed[a as usize]
    }
    /// The F_q element mapping to `c`, if any.
    pub fn restrict(&self, c: u32) -> Option<u32> {
        self.restrict[c as usize]
    }
    /// c^q in the coefficient field.
    pub fn frob(&self, c: u32, k: u32) -> u32 {
        self.ext.frob_p(c, self.spec.e * k)
    }
    /// The unique d with d^q = c.
    pub fn frob_inv(&self, c: u32) -> u32 {
        let n = self.ext.degree();
        self.ext.frob_p(c, n - self.spec.e % n)
    }

    /// Table sending the coefficient field of `small` into this one, compatibly with F_q.
    pub fn lift_table(&self, small: &Ctx) -> Result<Vec<u32>> {
        if small.spec != self.spec {
            return Err(Error::InvalidArgument("contexts over different constant fields".into()));
        }
        if !self.m.is_multiple_of(small.m) {
            return Err(Error::InvalidArgument(format!(
                "F_q^{} does not contain F_q^{}",
                self.m, small.m
            )));
        }
        let sf = &small.ext;
        for root in self.ext.poly_roots(sf.modulus()) {
            let table: Vec<u32> = (0..sf.size()).map(|a| eval_coords(&self.ext, &sf.coords(a), root)).collect();
            if (0..self.fq.size()).all(|a| table[small.embed(a) as usize] == self.embed(a)) {
                return Ok(table);
            }
        }
        Err(Error::Defect("no compatible embedding of coefficient fields".into()))
    }
}

fn eval_coords(f: &Field, coords: &[u32], x: u32) -> u32 {
    let mut acc = 0;
    for &c in coords.iter().rev() {
        acc = f.add(f.mul(acc, x), c);
    }
    acc
}

/// F_q into F_{q^m}: the smallest root of the modulus of F_q.
fn embedding(fq: &Field, ext: &Field) -> Result<Vec<u32>> {
    if fq.degree() == 1 {
        return Ok((0..fq.size()).collect());
    }
    let root = *ext
        .poly_roots(fq.modulus())
        .first()
        .ok_or_else(|| Error::Defect("F_q does not embed".into()))?;
    Ok((0..fq.size()).map(|a| eval_coords(ext, &fq.coords(a), root)).collect())
}

/// Run `f` in `ctx`, rebuilding the context with a larger coefficient field when asked.
pub fn with_growth<T>(ctx: &Arc<Ctx>, mut f: impl FnMut(&Arc<Ctx>) -> Result<T>) -> Result<T> {
    let mut cur = ctx.clone();
    loop {
        match f(&cur) {
            Err(Error::NeedExtension(m)) => {
                if m <= cur.m() || m > cur.m_cap() {
                    return Err(Error::FieldCap { needed: m, cap: cur.m_cap() });
                }
                cur = cur.with_m(m)?;
            }
            other => return other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tame_denominators() {
        assert_eq!(tame_denominator(2), 105);
        assert_eq!(tame_denominator(3), 1040);
    }

    #[test]
    fn lift_is_compatible() {
        let spec = FieldSpec::prime(2);
        let c2 = Ctx::new(&spec, 2, &CinfConfig::default()).unwrap();
        let c4 = c2.with_m(4).unwrap();
        let t = c4.lift_table(&c2).unwrap();
        let (f2, f4) = (c2.ext(), c4.ext());
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(t[f2.mul(a, b) as usize], f4.mul(t[a as usize], t[b as usize]));
            }
        }
    }
}
