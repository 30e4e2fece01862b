//! Runs a JSON-lines corpus of terms through the strong normalisation
//! search and the certifier.
//!
//! `cargo run --release --example corpus -- [CORPUS]`

use lammu::cli::{load_corpus, run_corpus};
use lammu::types::Lattice;
use std::path::PathBuf;

fn main() {
    let path = std::env::args()
        .nth(1)
        .map_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/corpus.jsonl"), PathBuf::from);
    let entries = load_corpus(&path).unwrap_or_else(|e| panic!("{e}"));
    let base = path.parent().expect("corpus files live in a directory");
    let reports = run_corpus(&entries, &Lattice::two_point(), base, 2000, 2000);
    for r in &reports {
        let ty = r.certified_type.as_deref().unwrap_or("-");
        println!("{:4} {:16} {:?} in {:4} terms  {ty}", if r.ok { "ok" } else { "FAIL" }, r.id, r.verdict, r.explored);
    }
    let failed = reports.iter().filter(|r| !r.ok).count();
    println!("{} entries, {failed} failed", reports.len());
}
