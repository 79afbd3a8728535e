//! Enumeration of monic irreducible polynomials in F_q[theta].

use super::poly::{FqPoly, Var};
use super::spec::FieldSpec;

/// All monic irreducibles of degree 1..=d_max, ordered by degree and then
/// by coefficients read from the top down.
pub fn enumerate_monic_irreducibles(spec: &FieldSpec, d_max: usize) -> Vec<FqPoly> {
    let f = spec.fq();
    let q = f.size() as u64;
    let mut out = Vec::new();
    for d in 1..=d_max {
        let count = q.pow(d as u32);
        let mut found = Vec::new();
        for idx in 0..count {
            let mut c = vec![0u32; d + 1];
            let mut rest = idx;
            for slot in c.iter_mut().take(d) {
                *slot = (rest % q) as u32;
                rest /= q;
            }
            c[d] = 1;
            let p = FqPoly::new(f.clone(), c, Var::Theta);
            if p.is_irreducible() {
                found.push(p);
            }
        }
        found.sort_by_key(|p| p.order_key());
        out.extend(found);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_over_f2() {
        let ps = enumerate_monic_irreducibles(&FieldSpec::prime(2), 6);
        let mut counts = [0usize; 7];
        for p in &ps {
            counts[p.degree().unwrap()] += 1;
        }
        assert_eq!(&counts[1..], &[2, 1, 2, 3, 6, 9]);
        assert_eq!(ps[0].to_string(), "t");
        assert_eq!(ps[1].to_string(), "t+1");
        assert_eq!(ps[3].to_string(), "t^3+t+1");
    }
}
