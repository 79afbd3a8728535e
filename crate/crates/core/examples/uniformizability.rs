//! Ranks h1 and h_1 of tau-fixed solutions, with the valuation profiles that certify them.
use tmotive::base_arith::{FieldSpec, FqPoly, ThetaRat, Var};
use tmotive::cinf_series::{CinfConfig, Ctx};
use tmotive::h1_solver::{h1_of, h_1_of, uniformizability, H1Options};
use tmotive::tmotive_core::{carlitz, drinfeld, ArithMotive};

fn report(name: &str, m: &ArithMotive) -> tmotive::Result<()> {
    let ctx = Ctx::new(m.spec(), 1, &CinfConfig::default())?;
    let a = m.to_analytic(&ctx)?;
    let opts = H1Options { horizon: 12, window: 4, ..H1Options::default() };
    let up = h1_of(&a, &opts)?;
    let lo = h_1_of(&a, &opts)?;
    println!("{name}: h1 = {} ({:?}), h_1 = {} ({:?})", up.value, up.status, lo.value, lo.status);
    for c in up.certificate.basis_candidates() {
        let prof: Vec<String> = c.profile.iter().take(6).map(|v| v.map_or("-".into(), |v| v.to_string())).collect();
        println!("  upper candidate {:?}: v = {} ...", c.coords, prof.join(", "));
    }
    println!("  verdict: {:?}", uniformizability(&a, &opts)?);
    Ok(())
}

fn main() -> tmotive::Result<()> {
    let spec = FieldSpec::prime(2);
    report("Carlitz", &carlitz(&spec))?;
    let f = spec.fq();
    let a1 = ThetaRat::from_poly(FqPoly::new(f.clone(), vec![1, 1], Var::Theta));
    report("T = theta + (theta+1) tau + tau^2", &drinfeld(&spec, &[a1, ThetaRat::constant(f, 1)])?)?;
    Ok(())
}
