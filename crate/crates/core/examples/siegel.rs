//! Lattices in C_inf^n, their Siegel matrices and the action of GL_r(F_q[theta]).
use tmotive::base_arith::{FieldSpec, Mat, ThetaRat};
use tmotive::cinf_series::{Cinf, CinfConfig, Ctx};
use tmotive::lattice_siegel::{dual_siegel, siegel_action, siegel_matrix, Lattice};

fn main() -> tmotive::Result<()> {
    let spec = FieldSpec::prime(2);
    let ctx = Ctx::new(&spec, 2, &CinfConfig::default())?;
    let w = Cinf::monomial(&ctx, ctx.ext().generator(), 0);
    let root = Cinf::monomial(&ctx, 1, ctx.scale() / 2);
    let (one, zero) = (Cinf::one(&ctx), Cinf::zero(&ctx));

    // rank 4 in C_inf^2: e1, e2, and two vectors mixing w and theta^(1/2)
    let l = Lattice::new(vec![
        vec![one.clone(), zero.clone()],
        vec![zero.clone(), one.clone()],
        vec![w.clone(), root.clone()],
        vec![root.clone(), w.frob(1)],
    ])?;
    let cert = &l.certificate;
    let pivots: Vec<String> = cert.independence_pivots.iter().map(|v| v.to_string()).collect();
    println!("r = {}, n = {}, independence pivots {}", cert.r, cert.n, pivots.join(" "));

    let s = siegel_matrix(&l, &[0, 1, 2, 3])?;
    println!("S = {}", s.s);
    println!("dual S = {}", dual_siegel(&s).s);

    let f = spec.fq();
    let z = ThetaRat::zero(f.clone());
    let th = ThetaRat::theta(f.clone());
    let mut g = Mat::identity(4, &z);
    g.set(0, 2, th);
    match siegel_action(&g, &s) {
        // show each entry through t^-6
        Ok(moved) => println!("g . S = {}", moved.s.map(&zero, |x| x.with_prec(7 * ctx.scale()))),
        Err(e) => println!("g . S undefined: {e}"),
    }
    Ok(())
}
