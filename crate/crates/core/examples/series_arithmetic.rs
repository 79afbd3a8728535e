//! Elements of C_inf: sums of c t^e over rational exponents with an explicit precision.
use tmotive::base_arith::FieldSpec;
use tmotive::cinf_series::{Cinf, CinfConfig, Ctx};

fn main() -> tmotive::Result<()> {
    let ctx = Ctx::new(&FieldSpec::prime(3), 2, &CinfConfig::default())?;
    let th = Cinf::theta(&ctx);
    let w = Cinf::monomial(&ctx, ctx.ext().generator(), 0);

    let x = th.add(&w);
    println!("x = {x}, v(x) = {}", x.valuation_ratio().unwrap());
    let inv = x.inv()?;
    let short = |y: &Cinf| y.with_prec(8 * ctx.scale()).to_string();
    println!("1/x = {}", short(&inv));
    println!("x * (1/x) = {}", x.mul(&inv));
    println!("x^(3) = {}", x.frob(1));

    let r = th.nth_root(2)?;
    println!("theta^(1/2) = {r}, squared: {}", r.mul(&r));
    let roots: Vec<String> = Cinf::one(&ctx).add(&th).nth_roots(2)?.iter().map(short).collect();
    println!("square roots of 1 + theta: {}", roots.join(" ; "));
    Ok(())
}
