//! Cross-checks the subtyping engine against the finite model: soundness
//! and completeness on a slice of types, surjectivity of the interpretation,
//! coherence of application and cons, and conservativity of the restricted
//! fragment.
//!
//! `cargo run --release --example oracle -- [RANK]`

use lammu::oracle::{app_coherence, restricted_conservativity, validate_subtyping, Canon, Oracle};

fn main() {
    let rank = std::env::args().nth(1).map_or(2, |s| s.parse().expect("RANK is a number"));
    let o = Oracle::standard();
    let r = validate_subtyping(&o, rank, 2, 7, &Canon::leq).unwrap();
    println!("{} types in {} classes, {} pairs, {} counterexamples", r.types, r.classes, r.pairs, r.counterexample_count);
    for s in &r.surjectivity {
        println!("  {} rank {}: {}/{} points hit", s.sort, s.rank, s.image, s.total);
    }

    let c = app_coherence(&o, rank, 2, 7).unwrap();
    println!("coherence: {} applications, {} conses, ok: {}", c.app_checked, c.cons_checked, c.ok());

    let k = restricted_conservativity(o.lattice(), rank, 2, 7).unwrap();
    println!("conservativity: {} restricted types, {} pairs, ok: {}", k.types, k.pairs, k.ok());

    // A deliberately broken engine is caught.
    let broken = |_: &lammu::types::Lattice, _: &Canon, _: &Canon| true;
    let bad = validate_subtyping(&o, 1, 2, 5, &broken).unwrap();
    println!("always-true engine: {} counterexamples", bad.counterexample_count);
}
