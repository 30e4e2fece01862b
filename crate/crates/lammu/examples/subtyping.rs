//! Subtyping over the default two-point lattice, the restricted fragment and
//! a user-supplied lattice.
//!
//! `cargo run --example subtyping`

use lammu::types::{canon_d, equiv, leq, leq_restricted, parse_any, Lattice, Sort};

fn main() {
    let lat = Lattice::two_point();
    let ty = |s: &str| parse_any(s).unwrap();
    for (s, t, sort) in [
        ("psi", "w -> psi", Sort::D),
        ("w -> psi", "psi", Sort::D),
        ("psi * w -> psi", "psi * psi * w -> psi", Sort::D),
        ("(w -> psi) * w", "w", Sort::C),
    ] {
        println!("{s} <= {t} ({sort:?}): {}", leq(&lat, sort, &ty(s), &ty(t)).unwrap());
    }
    println!("psi ≡ w -> psi: {}", equiv(&lat, Sort::D, &ty("psi"), &ty("w -> psi")).unwrap());
    println!("canonical form of (w -> psi) & (psi * w -> psi): {:?}", canon_d(&lat, &ty("(w -> psi) & (psi * w -> psi)")).unwrap());

    let r = leq_restricted(Sort::D, &ty("w -> psi"), &ty("((w -> psi) * w -> psi) * w -> psi")).unwrap();
    println!("restricted: {r}");

    let chain = Lattice::parse("elements: lo mid hi\ncover: lo mid\ncover: mid hi\nbottom: lo\ntop: hi\n").unwrap();
    for (s, t) in [("psi_hi", "psi_mid"), ("psi_mid", "psi_hi")] {
        println!("chain: {s} <= {t}: {}", leq(&chain, Sort::R, &ty(s), &ty(t)).unwrap());
    }
}
