//! Leftmost-outermost reduction, normalisation, the strong normalisation
//! search and convertibility.
//!
//! `cargo run --example reduction`

use lammu::reduction::{convertible, is_sn, lo_step, normalize, redexes, Strategy, DEFAULT_FUEL};
use lammu::syntax::{parse_term, Expr};

fn main() {
    let sk = parse_term("(\\x y z. x z (y z)) (\\a b. a)").unwrap();
    let mut cur = sk.clone();
    println!("{cur}");
    while let Some((next, site)) = lo_step(&cur, false) {
        println!("  -> {next}    ({site})");
        cur = next;
    }

    let callcc = parse_term("(mu a.[a] \\y. mu b.[a] y) z").unwrap();
    println!("redexes of {callcc}: {}", redexes(&Expr::Term(callcc.clone())).len());
    let (nf, steps) = normalize(&callcc, Strategy::Full, DEFAULT_FUEL).unwrap();
    println!("normal form: {nf} after {steps} steps");

    for src in ["(\\x. x x) (\\x. x x)", "(\\x y. y) ((\\x. x x) (\\x. x x))", "(\\x. x x) (\\y. y)"] {
        let v = is_sn(&parse_term(src).unwrap(), 1000, false);
        println!("{src}: {:?} ({} terms explored)", v.status, v.steps_explored);
    }

    let id = parse_term("\\u. u").unwrap();
    println!("SK ≅ K I: {:?}", convertible(&sk, &parse_term("(\\a b. a) (\\u. u)").unwrap(), DEFAULT_FUEL));
    println!("SK ≅ I:   {:?}", convertible(&sk, &id, DEFAULT_FUEL));
}
