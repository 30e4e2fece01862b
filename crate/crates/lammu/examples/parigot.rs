//! Peirce's law in the simply typed λμ-calculus, its translation into
//! intersection types under both atom encodings, and a random derivation.
//!
//! `cargo run --example parigot -- [PEIRCE_JSON_OUT]`

use lammu::parigot::{check_simple, peirce, random_derivation, translate_derivation, Encoding};
use lammu::typing::{check_derivation, Mode};
use lammu::types::Lattice;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> std::io::Result<()> {
    let lat = Lattice::two_point();
    let p = peirce();
    check_simple(&p).expect("Peirce's law is derivable");
    println!("source:     {}", p.conclusion);
    println!("nodes:      {} ({} μ)", p.node_count(), p.mu_count());
    for (enc, mode) in [(Encoding::psi(), Mode::Full), (Encoding::restricted(), Mode::Restricted)] {
        let d = translate_derivation(&p, &enc).expect("source checks");
        let ok = check_derivation(&d, mode, &lat).is_ok();
        println!("{mode:?}: {} nodes, checks: {ok}", d.node_count());
        println!("    {}", d.conclusion);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let r = std::iter::repeat_with(|| random_derivation(&mut rng, 12)).find(|d| d.mu_count() > 0).expect("some derivation uses μ");
    println!("random:     {}", r.conclusion);
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(path, p.to_json_string())?;
    }
    Ok(())
}
