use lammu::parigot::{
    check_simple, parse_formula, peirce, random_derivation, translate_c, translate_d, translate_derivation,
    Assumptions, Encoding, Formula, SimpleDerivation, SimpleJudgement, SimpleRule,
};
use lammu::syntax::parse_term;
use lammu::types::{is_restricted, parse_any, Lattice, Sort};
use lammu::typing::{check_derivation, Mode, Rule};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn ax(pi: &[(&str, &str)], x: &str, a: &str) -> SimpleDerivation {
    let pi: Assumptions = pi.iter().map(|(k, v)| (k.to_string(), f(v))).collect();
    SimpleDerivation::new(SimpleRule::Ax, SimpleJudgement::new(pi, parse_term(x).unwrap(), f(a), Assumptions::new()), vec![])
}

#[test]
fn simple_checking() {
    check_simple(&peirce()).unwrap();
    assert_eq!(check_simple(&ax(&[], "x", "A")).unwrap_err().rule, SimpleRule::Ax);
    let pi = [("x", "A -> B"), ("y", "C")];
    let j = SimpleJudgement::new(
        pi.iter().map(|(k, v)| (k.to_string(), f(v))).collect(),
        parse_term("x y").unwrap(),
        f("B"),
        Assumptions::new(),
    );
    let bad = SimpleDerivation::new(SimpleRule::ArrE, j, vec![ax(&pi, "x", "A -> B"), ax(&pi, "y", "C")]);
    assert_eq!(check_simple(&bad).unwrap_err().rule, SimpleRule::ArrE);
}

#[test]
fn formula_translation() {
    let enc = Encoding::psi();
    let ty = |s: &str| parse_any(s).unwrap();
    assert_eq!(translate_c(&f("v"), &enc), ty("psi * w"));
    assert_eq!(translate_d(&f("v"), &enc), ty("psi * w -> psi"));
    assert_eq!(translate_c(&f("v -> v"), &enc), ty("(psi * w -> psi) * psi * w"));
}

#[test]
fn peirce_translation() {
    let p = peirce();
    let full = translate_derivation(&p, &Encoding::psi()).unwrap();
    check_derivation(&full, Mode::Full, &Lattice::two_point()).unwrap();
    let k = "psi * w";
    let want = format!("((({k} -> psi) * {k} -> psi) * {k} -> psi) * {k} -> psi");
    assert_eq!(full.conclusion.ty, parse_any(&want).unwrap());
    let restricted = translate_derivation(&p, &Encoding::restricted()).unwrap();
    check_derivation(&restricted, Mode::Restricted, &Lattice::two_point()).unwrap();
    assert_eq!(restricted.node_count(), p.node_count() + p.mu_count());
}

#[test]
fn node_translation() {
    let d = translate_derivation(&ax(&[("x", "A")], "x", "A"), &Encoding::restricted()).unwrap();
    assert_eq!(d.rule, Rule::Ax);
    assert!(d.premises.is_empty());
    let p = translate_derivation(&peirce(), &Encoding::restricted()).unwrap();
    // λy.μb.[a]y: the μ2 node becomes MuAbs over TCmd.
    let mu_b = &p.premises[0].premises[0].premises[0].premises[1].premises[0];
    assert_eq!(mu_b.rule, Rule::MuAbs);
    assert_eq!(mu_b.premises[0].rule, Rule::TCmd);
    assert_eq!(mu_b.premises[0].premises[0].rule, Rule::Ax);
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just(Formula::atom("A")), Just(Formula::atom("B")), Just(Formula::atom("C"))];
    leaf.prop_recursive(4, 16, 2, |inner| (inner.clone(), inner).prop_map(|(a, b)| Formula::imp(a, b)))
}

proptest! {
    #[test]
    fn translated_formulas_are_restricted(a in formula()) {
        let enc = Encoding::restricted();
        prop_assert!(is_restricted(&translate_c(&a, &enc), Sort::C));
        prop_assert!(is_restricted(&translate_d(&a, &enc), Sort::D));
    }

    #[test]
    fn translations_check(seed in any::<u64>()) {
        let src = random_derivation(&mut ChaCha8Rng::seed_from_u64(seed), 12);
        check_simple(&src).unwrap();
        let d = translate_derivation(&src, &Encoding::restricted()).unwrap();
        prop_assert!(check_derivation(&d, Mode::Restricted, &Lattice::two_point()).is_ok());
        prop_assert_eq!(d.node_count(), src.node_count() + src.mu_count());
    }
}
