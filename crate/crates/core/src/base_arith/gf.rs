//! Finite fields F_{p^N} in a fixed polynomial basis with log/antilog tables.
//!
//! An element is a `u32` whose base-p digits are its coordinates on 1, x, x^2, ...

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest field we are willing to tabulate.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

pub struct Field {
    p: u32,
    degree: u32,
    modulus: Vec<u32>,
    size: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    generator: u32,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.degree)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}
impl Eq for Field {}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn digits(mut a: u32, p: u32, n: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    for d in v.iter_mut() {
        *d = a % p;
        a /= p;
    }
    v
}

fn undigits(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Slow multiplication by schoolbook product and reduction, used only while building tables.
fn slow_mul(a: u32, b: u32, p: u32, modulus: &[u32]) -> u32 {
    let n = modulus.len() - 1;
    let da = digits(a, p, n);
    let db = digits(b, p, n);
    let mut prod = vec![0u64; 2 * n];
    for i in 0..n {
        if da[i] == 0 {
            continue;
        }
        for j in 0..n {
            prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p as u64;
        }
    }
    for k in (n..2 * n).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let idx = k - n + i;
            prod[idx] = (prod[idx] + (p as u64 - c) * m as u64 % p as u64) % p as u64;
        }
    }
    let low: Vec<u32> = prod[..n].iter().map(|&x| x as u32).collect();
    undigits(&low, p)
}

fn slow_pow(mut a: u32, mut e: u64, p: u32, modulus: &[u32]) -> u32 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = slow_mul(r, a, p, modulus);
        }
        a = slow_mul(a, a, p, modulus);
        e >>= 1;
    }
    r
}

impl Field {
    /// Build F_p[x]/(modulus). The modulus must be monic and irreducible over F_p.
    pub fn new(p: u32, modulus: Vec<u32>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidArgument("modulus must be monic of degree >= 1".into()));
        }
        let degree = (modulus.len() - 1) as u32;
        let size64 = (p as u64).pow(degree);
        if size64 > MAX_FIELD_SIZE {
            return Err(Error::FieldCap { needed: degree, cap: degree - 1 });
        }
        let size = size64 as u32;
        let order = size64 - 1;
        let factors = prime_factors(order);
        let modulus: Vec<u32> = modulus.iter().map(|c| c % p).collect();
        let mut generator = None;
        for g in 1..size {
            if order == 1 {
                generator = Some(1);
                break;
            }
            if slow_pow(g, order, p, &modulus) != 1 {
                // x^(p^N - 1) != 1 only happens for reducible moduli
                continue;
            }
            if factors.iter().all(|&l| slow_pow(g, order / l, p, &modulus) != 1) {
                generator = Some(g);
                break;
            }
        }
        let generator = generator
            .ok_or_else(|| Error::InvalidArgument("modulus is not irreducible".into()))?;
        let mut exp = vec![0u32; size as usize];
        let mut log = vec![0u32; size as usize];
        let mut cur = 1u32;
        for i in 0..order as usize {
            exp[i] = cur;
            if i > 0 && cur == 1 {
                return Err(Error::InvalidArgument("modulus is not irreducible".into()));
            }
            log[cur as usize] = i as u32;
            cur = slow_mul(cur, generator, p, &modulus);
        }
        if cur != 1 {
            return Err(Error::InvalidArgument("modulus is not irreducible".into()));
        }
        Ok(Field { p, degree, modulus, size, exp, log, generator })
    }

    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, vec![0, 1])
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn size(&self) -> u32 {
        self.size
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// The primitive element used for the log tables.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.degree == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        if self.degree == 1 {
            return (self.p - a) % self.p;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let o = self.size - 1;
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(s % o as u64) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let o = self.size - 1;
        Some(self.exp[((o - self.log[a as usize]) % o) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// a^e for any integer exponent e (negative needs a != 0).
    pub fn pow(&self, a: u32, e: i64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let o = (self.size - 1) as i64;
        let l = self.log[a as usize] as i64;
        self.exp[((l * (e.rem_euclid(o))) % o) as usize]
    }

    /// The discrete log with respect to `generator()`.
    pub fn log(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.log[a as usize])
        }
    }

    pub fn exp_of(&self, l: u64) -> u32 {
        self.exp[(l % (self.size as u64 - 1)) as usize]
    }

    /// a^(p^k).
    pub fn frob_p(&self, a: u32, k: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let o = (self.size - 1) as u64;
        let mut e = 1u64;
        for _ in 0..(k % self.degree) {
            e = e * self.p as u64 % o.max(1);
        }
        if o == 1 {
            return a;
        }
        self.exp[((self.log[a as usize] as u64 * e) % o) as usize]
    }

    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// Coordinates of `a` over F_p in the polynomial basis.
    pub fn coords(&self, a: u32) -> Vec<u32> {
        digits(a, self.p, self.degree as usize)
    }

    pub fn from_coords(&self, v: &[u32]) -> u32 {
        undigits(v, self.p)
    }

    /// Every (q-1)-th, (N)-th ... root: all x with x^n = a, sorted by encoding.
    pub fn nth_roots(&self, a: u32, n: u64) -> Vec<u32> {
        if a == 0 {
            return vec![0];
        }
        let o = (self.size - 1) as u64;
        let la = self.log[a as usize] as u64;
        let g = num_integer::gcd(n % o.max(1), o);
        let g = if o == 1 { 1 } else { g.max(1) };
        if o > 1 && !la.is_multiple_of(g) {
            return vec![];
        }
        let mut out: Vec<u32> = (0..o.max(1))
            .filter(|&l| (l * (n % o.max(1))) % o.max(1) == la % o.max(1))
            .map(|l| self.exp[l as usize])
            .collect();
        if o == 1 {
            out = vec![1];
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Roots in this field of the polynomial with the given F-coefficients (low degree first).
    pub fn poly_roots(&self, coeffs: &[u32]) -> Vec<u32> {
        (0..self.size)
            .filter(|&x| {
                let mut acc = 0;
                for &c in coeffs.iter().rev() {
                    acc = self.add(self.mul(acc, x), c);
                }
                acc == 0
            })
            .collect()
    }
}

/// Monic polynomials over F_p of a given degree, in increasing encoding order.
fn monic_polys(p: u32, n: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(n);
    (0..count).map(move |i| {
        let mut v = digits(i as u32, p, n as usize);
        v.push(1);
        v
    })
}

/// The first monic polynomial of degree n over F_p (in encoding order) for which x is primitive.
pub fn primitive_modulus(p: u32, n: u32) -> Result<Vec<u32>> {
    if (p as u64).pow(n) > MAX_FIELD_SIZE {
        return Err(Error::FieldCap { needed: n, cap: n.saturating_sub(1) });
    }
    if n == 1 {
        return Ok(vec![0, 1]);
    }
    for f in monic_polys(p, n) {
        if f[0] == 0 {
            continue;
        }
        // x of order exactly p^n - 1 forces F_p[x]/f to be a field
        let order = (p as u64).pow(n) - 1;
        let x = p; // encoding of x
        let ok = slow_pow(x, order, p, &f) == 1
            && prime_factors(order).iter().all(|&l| slow_pow(x, order / l, p, &f) != 1);
        if ok {
            return Ok(f);
        }
    }
    Err(Error::Defect(format!("no primitive polynomial of degree {n} over F_{p}")))
}

type Registry = Mutex<HashMap<(u32, u32), Arc<Field>>>;

fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The canonical F_{p^n}: F_p[x] modulo the first primitive polynomial of degree n. Cached.
pub fn canonical_field(p: u32, n: u32) -> Result<Arc<Field>> {
    if let Some(f) = registry().lock().unwrap().get(&(p, n)) {
        return Ok(f.clone());
    }
    let f = Arc::new(Field::new(p, primitive_modulus(p, n)?)?);
    registry().lock().unwrap().insert((p, n), f.clone());
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_arithmetic() {
        let f = Field::new(2, vec![1, 1, 1]).unwrap();
        assert_eq!(f.size(), 4);
        // x * x = x + 1
        assert_eq!(f.mul(2, 2), 3);
        for a in 1..4 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            assert_eq!(f.pow(a, 3), 1);
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(Field::new(2, vec![1, 0, 1]).is_err());
        assert!(Field::new(3, vec![2, 0, 1]).is_err());
    }

    #[test]
    fn frobenius_is_additive() {
        let f = canonical_field(3, 2).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                assert_eq!(f.frob_p(f.add(a, b), 1), f.add(f.frob_p(a, 1), f.frob_p(b, 1)));
            }
        }
    }

    #[test]
    fn nth_roots_in_f9() {
        let f = canonical_field(3, 2).unwrap();
        let m1 = f.neg(1);
        let r = f.nth_roots(m1, 2);
        assert_eq!(r.len(), 2);
        for x in r {
            assert_eq!(f.mul(x, x), m1);
        }
    }
}
