//! Coefficients of the exponential of the Carlitz module, checked against
//! 1 / prod_j (theta^(q^i) - theta^(q^j)).
use tmotive::analytic::{carlitz_exp_closed_form, exp_coeffs};
use tmotive::base_arith::FieldSpec;
use tmotive::tmotive_core::carlitz;

fn main() -> tmotive::Result<()> {
    for p in [2, 3] {
        let spec = FieldSpec::prime(p);
        let e = exp_coeffs(&carlitz(&spec), 4)?;
        println!("q = {p}");
        for (i, c) in e.c.iter().enumerate().skip(1) {
            let ci = c.get(0, 0);
            let same = *ci == carlitz_exp_closed_form(&spec, i);
            println!("  C_{i} = {ci}   v = {:?}   closed form: {same}", ci.valuation());
        }
    }
    Ok(())
}
