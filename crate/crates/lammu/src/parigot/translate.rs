//! Formulas as restricted types: `(A -> B)^C = (A^D) × B^C`,
//! `A^D = A^C → psi`, with a fixed continuation type for atoms.

use super::{check_simple, Assumptions, Formula, ParigotError, SimpleDerivation, SimpleRule};
use crate::typing::{Basis, Derivation, Judgement, NameContext, Rule, Side};
use crate::types::Type;

/// The continuation type given to every proposition variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoding {
    pub atom: Type,
}

impl Encoding {
    /// Atoms as `psi * w`. Not a restricted type, so translations check in
    /// the full system only.
    pub fn psi() -> Encoding {
        Encoding { atom: Type::prod(Type::psi(), Type::Omega) }
    }

    /// Atoms as `(w -> psi) * w`, the smallest restricted choice;
    /// translations check in the restricted system.
    pub fn restricted() -> Encoding {
        Encoding { atom: Type::prod(Type::arrow(Type::Omega, Type::psi()), Type::Omega) }
    }
}

pub fn translate_c(f: &Formula, enc: &Encoding) -> Type {
    match f {
        Formula::Atom(_) => enc.atom.clone(),
        Formula::Impl(a, b) => Type::prod(translate_d(a, enc), translate_c(b, enc)),
    }
}

pub fn translate_d(f: &Formula, enc: &Encoding) -> Type {
    Type::arrow(translate_c(f, enc), Type::psi())
}

fn env(m: &Assumptions, t: impl Fn(&Formula) -> Type) -> std::collections::BTreeMap<String, Type> {
    m.iter().map(|(k, f)| (k.clone(), t(f))).collect()
}

/// `Π^D ⊢ M : A^D | Σ^C`, with each `(μ1)`/`(μ2)` node expanded into
/// `(TCmd)` followed by `(MuAbs)`.
pub fn translate_derivation(d: &SimpleDerivation, enc: &Encoding) -> Result<Derivation, ParigotError> {
    check_simple(d)?;
    Ok(go(d, enc))
}

fn go(d: &SimpleDerivation, enc: &Encoding) -> Derivation {
    let c = &d.conclusion;
    let basis: Basis = env(&c.pi, |f| translate_d(f, enc));
    let context: NameContext = env(&c.sigma, |f| translate_c(f, enc));
    let j = Judgement::new(basis, c.subject.clone(), translate_d(&c.ty, enc), context);
    let premises: Vec<Derivation> = d.premises.iter().map(|p| go(p, enc)).collect();
    match d.rule {
        SimpleRule::Ax => Derivation::new(Rule::Ax, j, premises),
        SimpleRule::ArrE => Derivation::new(Rule::App, j, premises),
        SimpleRule::ArrI => {
            let Formula::Impl(a, _) = &c.ty else { unreachable!("checked (→I) node") };
            Derivation::new(Rule::Abs, j, premises).with_side(Side { delta: Some(translate_d(a, enc)), ..Side::default() })
        }
        SimpleRule::Mu1 | SimpleRule::Mu2 => {
            let crate::syntax::Term::Mu(_, cmd) = &c.subject else { unreachable!("checked μ node") };
            let body = premises.into_iter().next().expect("checked μ node");
            let pj = &body.conclusion;
            let kappa = pj.context.get(&cmd.name).cloned().expect("checked μ node names its command");
            let cj = Judgement::new(pj.basis.clone(), (**cmd).clone(), Type::prod(pj.ty.clone(), kappa.clone()), pj.context.clone());
            let tcmd = Derivation::new(Rule::TCmd, cj, vec![body]).with_side(Side { kappa: Some(kappa), ..Side::default() });
            let a = translate_c(&c.ty, enc);
            Derivation::new(Rule::MuAbs, j, vec![tcmd]).with_side(Side { kappa: Some(a), ..Side::default() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parigot::{parse_formula, peirce};
    use crate::typing::{check_derivation, Mode};
    use crate::types::{is_restricted, Lattice, Sort};

    #[test]
    fn atoms_and_arrows() {
        let v = parse_formula("v").unwrap();
        let vv = parse_formula("v -> v").unwrap();
        let e = Encoding::psi();
        assert_eq!(translate_c(&v, &e).to_string(), "psi * w");
        assert_eq!(translate_d(&v, &e).to_string(), "psi * w -> psi");
        assert_eq!(translate_c(&vv, &e).to_string(), "(psi * w -> psi) * psi * w");
        let r = Encoding::restricted();
        assert!(is_restricted(&translate_c(&vv, &r), Sort::C));
        assert!(!is_restricted(&translate_c(&vv, &e), Sort::C));
    }

    #[test]
    fn peirce_translates() {
        let d = peirce();
        let r = translate_derivation(&d, &Encoding::restricted()).unwrap();
        check_derivation(&r, Mode::Restricted, &Lattice::two_point()).unwrap();
        assert_eq!(r.node_count(), d.node_count() + d.mu_count());
        let p = translate_derivation(&d, &Encoding::psi()).unwrap();
        check_derivation(&p, Mode::Full, &Lattice::two_point()).unwrap();
        let ka = "psi * w";
        let want = format!("((({ka} -> psi) * {ka} -> psi) * {ka} -> psi) * {ka} -> psi");
        assert_eq!(p.conclusion.ty.to_string(), want);
    }
}
