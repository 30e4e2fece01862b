//! Certifies strongly normalising terms with restricted typings, checks the
//! certificates and round-trips them through JSON.
//!
//! `cargo run --example certify -- [TERM]`

use lammu::reduction::DEFAULT_FUEL;
use lammu::syntax::parse_term;
use lammu::types::Lattice;
use lammu::typing::{check_derivation, type_sn, Derivation, Mode, NotTypeable};

fn main() {
    let lat = Lattice::two_point();
    let mut sources = vec![
        "(\\x y z. x z (y z)) (\\a b. a)".to_string(),
        "(mu a.[a] \\y. mu b.[a] y) z".to_string(),
        "(\\x. x x) (\\y. y)".to_string(),
        "(\\x y. y) ((\\x. x x) (\\x. x x))".to_string(),
    ];
    sources.extend(std::env::args().skip(1));
    for src in &sources {
        let m = parse_term(src).expect("term parses");
        match type_sn(&m, DEFAULT_FUEL) {
            Ok(d) => {
                check_derivation(&d, Mode::Restricted, &lat).expect("certificates check");
                let json = d.to_json_string();
                let back = Derivation::from_json_str(&json).expect("certificates round-trip");
                assert_eq!(back, d);
                println!("{src}\n  {}\n  {} nodes, {} bytes of JSON", d.conclusion, d.node_count(), json.len());
            }
            Err(e @ NotTypeable::Fuel { .. }) => println!("{src}\n  not certified: {e}"),
            Err(e) => panic!("{src}: {e}"),
        }
    }
}
