//! y + u y^q = w over C_inf: exact roots when the Newton polygon allows them, and a
//! divergence certificate at the boundary v(u) = 0.
use tmotive::base_arith::FieldSpec;
use tmotive::cinf_series::{artin_schreier_solve, Cinf, CinfConfig, Ctx};

fn main() -> tmotive::Result<()> {
    let ctx = Ctx::new(&FieldSpec::prime(2), 1, &CinfConfig::default())?;
    let th = Cinf::theta(&ctx);

    let rep = artin_schreier_solve(&th, &Cinf::zero(&ctx), 8)?;
    let roots: Vec<String> = rep.solutions.iter().map(|y| y.to_string()).collect();
    println!("y + theta y^2 = 0: roots {}", roots.join(", "));

    let rep = artin_schreier_solve(&Cinf::one(&ctx), &Cinf::theta_pow(&ctx, 1, 2), 8)?;
    println!("y + y^2 = theta^2: {} solutions", rep.solutions.len());
    for f in &rep.failures {
        let v: Vec<String> = f.valuations.iter().map(|v| v.to_string()).collect();
        println!("  {:?}, correction valuations {}", f.reason, v.join(" "));
    }
    Ok(())
}
