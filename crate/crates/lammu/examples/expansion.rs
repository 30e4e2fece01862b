//! The building blocks of the certifier: typing a normal form, splitting a
//! typing of a substitution instance and expanding back over a redex.
//!
//! `cargo run --example expansion`

use lammu::reduction::{lo_step_hygienic, DEFAULT_FUEL};
use lammu::syntax::{parse_expr, parse_term};
use lammu::types::Lattice;
use lammu::typing::{check_derivation, lo_expand, struct_split, subst_split, synth_nf, type_sn, Mode};

fn main() {
    let lat = Lattice::two_point();
    let t = |s: &str| parse_term(s).unwrap();

    let nf = synth_nf(&t("\\x. x (\\y. y)")).unwrap();
    println!("normal form:  {}", nf.conclusion);

    // `y y` is `(u u)[y/u]`.
    let yy = synth_nf(&t("y y")).unwrap();
    let split = subst_split(&yy, &t("u u"), &t("y"), "u").unwrap();
    println!("split δ:      {}", split.delta);
    println!("  with u:     {}", split.with_var.conclusion);

    // `[b] x (mu d.[a] y z)` is `([b] x (mu d.[a] y))[a <= z]`.
    let mu = synth_nf(&t("mu c.[b] x (mu d.[a] y z)")).unwrap();
    let target = parse_expr("[b] x (mu d.[a] y)").unwrap();
    let s = struct_split(&mu.premises[0], &target, "a", &t("z")).unwrap();
    println!("struct δ':    {}", s.delta);
    println!("  with a:     {}", s.with_name.conclusion);

    // One leftmost-outermost step, expanded back.
    let m = t("(\\x. x x) (\\y. y)");
    let (n, site) = lo_step_hygienic(&m).unwrap();
    let d_n = type_sn(&n, DEFAULT_FUEL).unwrap();
    let d_q = type_sn(&t("\\y. y"), DEFAULT_FUEL).unwrap();
    let d_m = lo_expand(&m, &site, &d_n, Some(&d_q)).unwrap();
    check_derivation(&d_m, Mode::Restricted, &lat).unwrap();
    println!("{n}  expands to  {}", d_m.conclusion);
}
