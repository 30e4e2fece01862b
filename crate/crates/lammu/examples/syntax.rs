//! Parsing, printing, α-equivalence and the three substitutions.
//!
//! `cargo run --example syntax`

use lammu::syntax::nameless::alpha_eq_terms;
use lammu::syntax::{parse_expr, parse_term, rename_name, struct_subst, subst_term, well_name};

fn main() {
    let m = parse_term("\\x. mu a.[a] x (\\y. y)").unwrap();
    println!("parsed:         {m}");
    println!("size:           {}", m.size());
    let n = parse_term("\\z. mu b.[b] z (\\w. w)").unwrap();
    println!("α-equivalent:   {}", alpha_eq_terms(&m, &n));

    let t = parse_term("\\y. x y").unwrap();
    println!("[y/x]:          {}", subst_term(&t, "x", &parse_term("y").unwrap()));

    let c = parse_expr("mu c.[a] x (mu d.[a] y)").unwrap();
    println!("[b/a]:          {}", rename_name(&c, "b", "a"));
    println!("[a <= z]:       {}", struct_subst(&c, "a", &parse_term("z").unwrap()));

    let clash = parse_expr("(\\x. x) (\\x. x)").unwrap();
    println!("well-named:     {}", well_name(&clash));
}
