//! Checks the hand-built certificates and optionally writes them as JSON.
//!
//! `cargo run --example goldens -- [DIR]`

use lammu::goldens;
use lammu::typing::check_derivation;
use lammu::types::Lattice;
use std::path::PathBuf;

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from);
    let lat = Lattice::two_point();
    for g in goldens::all() {
        let verdict = match check_derivation(&g.derivation, g.mode, &lat) {
            Ok(()) => "ok".to_string(),
            Err(v) => v.to_string(),
        };
        println!("{:<32} {:?} {verdict}", g.name, g.mode);
        println!("    {}", g.derivation.conclusion);
        if let Some(dir) = &dir {
            std::fs::write(dir.join(format!("{}.json", g.name)), g.derivation.to_json_string())?;
        }
    }
    Ok(())
}
