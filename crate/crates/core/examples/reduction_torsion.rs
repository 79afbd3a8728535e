//! Reduction at primes of F_q[theta]: good reduction, ordinarity, and torsion points of the
//! reduced module over finite extensions of the residue field.
use tmotive::base_arith::{enumerate_monic_irreducibles, FieldSpec, FqPoly, ThetaRat, Var};
use tmotive::lfunction::{good_reduction_check, ordinary_check, torsion_count_reduction, Ordinarity};
use tmotive::tmotive_core::drinfeld;

fn main() -> tmotive::Result<()> {
    let spec = FieldSpec::prime(2);
    let f = spec.fq();
    let a1 = ThetaRat::from_poly(FqPoly::new(f.clone(), vec![1, 1], Var::Theta));
    let m = drinfeld(&spec, &[a1, ThetaRat::constant(f, 1)])?;

    for p in enumerate_monic_irreducibles(&spec, 2) {
        let red = good_reduction_check(&m, &p)?;
        let ord = ordinary_check(&m, &p)?;
        println!("{p}: {red:?}, {ord:?}");
        if ord == Ordinarity::Ordinary {
            for ext in 1..=3 {
                let t = torsion_count_reduction(&m, &p, ext)?;
                println!("  {} points of {p}-torsion over F_{}", t.count, t.field_size);
            }
        }
    }
    Ok(())
}
