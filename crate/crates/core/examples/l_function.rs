//! Local factors and the truncated global L-series of the Carlitz module and a twist.
//!
//!     cargo run --example l_function -- 6
use tmotive::base_arith::{FieldSpec, FqPoly, Var};
use tmotive::lfunction::{global_l, local_factor};
use tmotive::tmotive_core::{carlitz, carlitz_twist};
use tmotive::base_arith::ThetaRat;

fn main() -> tmotive::Result<()> {
    let max_deg: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    let spec = FieldSpec::prime(2);
    let m = carlitz(&spec);

    for c in [vec![0, 1], vec![1, 1], vec![1, 1, 1]] {
        let p = FqPoly::new(spec.fq(), c, Var::Theta);
        let lf = local_factor(&m, &p, max_deg)?;
        println!("L_{p}(U) = {}", lf.series);
    }

    let g = global_l(&m, max_deg)?;
    println!("{} good primes of degree <= {max_deg}", g.factors.len());
    println!("L(U) = {}", g.series);

    // twisting by theta makes t a bad prime
    let tw = carlitz_twist(&spec, &ThetaRat::theta(spec.fq()))?;
    let g = global_l(&tw, 3)?;
    let bad: Vec<String> = g.bad.iter().map(|p| p.to_string()).collect();
    println!("twist: bad primes {}, L(U) = {}", bad.join(", "), g.series);
    Ok(())
}
