use lammu::oracle::generate;
use lammu::reduction::{convertible, is_sn, reducts, SnStatus, Tri};
use lammu::syntax::nameless::alpha_eq;
use lammu::syntax::{parse_term, well_name, Command, Expr, Term};
use lammu::types::{leq, Lattice, Sort, Type};
use lammu::typing::{check_derivation, decompose, type_sn, Derivation, Mode};
use proptest::prelude::*;

const BUDGET: usize = 2_000;
const FUEL: usize = 500;

fn term() -> impl Strategy<Value = Term> {
    let var = prop_oneof![Just("x"), Just("y"), Just("z")];
    let name = prop_oneof![Just("a"), Just("b")];
    var.clone().prop_map(Term::var).prop_recursive(4, 20, 2, move |inner| {
        prop_oneof![
            (var.clone(), inner.clone()).prop_map(|(x, b)| Term::lam(x, b)),
            (inner.clone(), inner.clone()).prop_map(|(f, a)| Term::app(f, a)),
            (name.clone(), name.clone(), inner).prop_map(|(a, b, m)| Term::mu(a, Command::new(b, m))),
        ]
    })
}

fn lat() -> Lattice {
    Lattice::two_point()
}

fn types(sort: Sort) -> Vec<Type> {
    generate(&lat(), sort, 2, 2, 7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printing_round_trips(m in term()) {
        prop_assert_eq!(parse_term(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn well_naming_preserves_alpha_class(m in term()) {
        let e = Expr::Term(m);
        let w = well_name(&e);
        prop_assert!(w.is_well_named());
        prop_assert!(alpha_eq(&e, &w));
    }

    #[test]
    fn reducts_are_locally_confluent(m in term()) {
        let rs = reducts(&Expr::Term(m), true);
        for (i, (p, _)) in rs.iter().enumerate() {
            for (q, _) in &rs[i + 1..] {
                let (p, q) = (p.as_term().unwrap(), q.as_term().unwrap());
                prop_assert_ne!(convertible(p, q, BUDGET), Tri::False);
            }
        }
    }

    #[test]
    fn sn_terms_certify_and_cycles_do_not(m in term()) {
        match is_sn(&m, BUDGET, false).status {
            SnStatus::SN => {
                let d = type_sn(&m, 10 * FUEL).unwrap();
                prop_assert!(check_derivation(&d, Mode::Restricted, &lat()).is_ok());
            }
            SnStatus::NotSN => prop_assert!(type_sn(&m, FUEL).is_err()),
            SnStatus::Unknown => {}
        }
    }

    #[test]
    fn reducts_of_certified_terms_certify(m in term()) {
        if type_sn(&m, FUEL).is_ok() {
            for (n, _) in reducts(&Expr::Term(m), true) {
                let d = type_sn(n.as_term().unwrap(), 10 * FUEL).unwrap();
                prop_assert!(check_derivation(&d, Mode::Restricted, &lat()).is_ok());
            }
        }
    }

    #[test]
    fn certificates_survive_json_and_decomposition(m in term()) {
        if let Ok(d) = type_sn(&m, FUEL) {
            prop_assert_eq!(&Derivation::from_json_str(&d.to_json_string()).unwrap(), &d);
            let back = decompose(&d, &lat()).unwrap().recompose();
            prop_assert_eq!(&back.conclusion, &d.conclusion);
            prop_assert!(check_derivation(&back, Mode::Restricted, &lat()).is_ok());
        }
    }

    #[test]
    fn every_term_has_type_omega(m in term()) {
        let d = Derivation::omega(Default::default(), m, Default::default());
        prop_assert!(check_derivation(&d, Mode::Full, &lat()).is_ok());
    }

    #[test]
    fn strengthening_is_admissible(m in term(), i in any::<prop::sample::Index>()) {
        if let Ok(d) = type_sn(&m, FUEL) {
            let mut basis = d.conclusion.basis.clone();
            if let Some(x) = basis.keys().nth(i.index(basis.len().max(1))).cloned() {
                let extra = Type::arrow(Type::prod(Type::arrow(Type::Omega, Type::psi()), Type::Omega), Type::psi());
                let cur = basis.remove(&x).unwrap();
                basis.insert(x, Type::inter(cur, extra));
                let s = d.clone().strengthen_to(basis, d.conclusion.context.clone());
                prop_assert!(check_derivation(&s, Mode::Restricted, &lat()).is_ok());
            }
        }
    }

    #[test]
    fn subtyping_is_a_preorder(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        for sort in [Sort::D, Sort::C] {
            let ts = types(sort);
            let (a, b, c) = (&ts[i.index(ts.len())], &ts[j.index(ts.len())], &ts[k.index(ts.len())]);
            prop_assert!(leq(&lat(), sort, a, a).unwrap());
            if leq(&lat(), sort, a, b).unwrap() && leq(&lat(), sort, b, c).unwrap() {
                prop_assert!(leq(&lat(), sort, a, c).unwrap());
            }
        }
    }
}
