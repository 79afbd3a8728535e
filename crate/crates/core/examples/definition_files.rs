//! Reading and writing definition files.
use tmotive::cli::deffile::{emit_motive, parse_motive};

const TEXT: &str = r#"
[field]
p = 3

[motive]
A0 = [["t"]]
A1 = [["t^2 - 1"]]
A2 = [["1"]]
"#;

fn main() {
    let m = parse_motive(TEXT).expect("valid file");
    println!("n = {}, k = {}, rank/dim = {:?}", m.n(), m.k(), m.rank_dim().unwrap());
    print!("{}", emit_motive(&m));

    let broken = TEXT.replace("t^2 - 1", "t^2 - x");
    match parse_motive(&broken) {
        Ok(_) => unreachable!(),
        Err(e) => println!("error: {e}"),
    }
}
