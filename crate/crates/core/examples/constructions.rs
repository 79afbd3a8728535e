//! Tensor products, exterior powers and duals through the matrix Q of tau on a T-basis.
use tmotive::base_arith::{FieldSpec, FqPoly, ThetaRat, Var};
use tmotive::constructions::{dual_presentation, exterior_power, tensor, RationalQ, TPresentation};
use tmotive::tmotive_core::{carlitz, drinfeld};

fn main() -> tmotive::Result<()> {
    let spec = FieldSpec::prime(2);
    let f = spec.fq();
    let a1 = ThetaRat::from_poly(FqPoly::new(f.clone(), vec![1, 1], Var::Theta));
    let phi = drinfeld(&spec, &[a1, ThetaRat::constant(f, 1)])?;

    let c = TPresentation::of(&carlitz(&spec))?;
    let p = TPresentation::of(&phi)?;
    println!("Q(phi) = {}", p.q);

    let t = tensor(&c, &p)?;
    println!("C (x) phi: rank {}, dimension {}", t.rank, t.dim);
    println!("  Q = {}", t.q);

    let w = exterior_power(&phi, 2)?;
    println!("wedge^2 phi: rank {}, dimension {}, Q = {}", w.rank, w.dim, w.q);

    let d = dual_presentation(&p)?;
    println!("dual: dimension {}, Q' = {} / (T-theta)^{}", d.target_dim, d.num, d.exp);
    println!("double dual is Q: {}", d.dual()? == RationalQ::from_poly(&p));
    Ok(())
}
