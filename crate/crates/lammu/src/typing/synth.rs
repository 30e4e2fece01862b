//! Restricted typings of normal forms, built bottom-up: a head variable
//! applied to `N1 … Nk` gets `δ1 × … × δk × ω → psi`, binders get the meet
//! of what their occurrences need, and unused binders get `ω → psi` (for
//! variables) or `ω` (for names).

use super::strict::{arrow, meet_dedup, Strict, StrictNode, Typing};
use super::{emit, Derivation, TypingError};
use crate::syntax::{Expr, Term};
use crate::types::Type;
use std::collections::BTreeMap;

/// Types still owed to variables and names, collected bottom-up.
#[derive(Clone, Debug, Default)]
pub(crate) struct Reqs {
    pub vars: BTreeMap<String, Vec<Type>>,
    pub names: BTreeMap<String, Vec<Type>>,
}

impl Reqs {
    pub fn var(&mut self, x: &str, t: Type) {
        self.vars.entry(x.to_string()).or_default().push(t);
    }

    pub fn name(&mut self, a: &str, t: Type) {
        self.names.entry(a.to_string()).or_default().push(t);
    }

    pub fn merge(&mut self, other: Reqs) {
        for (x, ts) in other.vars {
            self.vars.entry(x).or_default().extend(ts);
        }
        for (a, ts) in other.names {
            self.names.entry(a).or_default().extend(ts);
        }
    }

    pub fn take_var(&mut self, x: &str) -> Vec<Type> {
        self.vars.remove(x).unwrap_or_default()
    }

    pub fn take_name(&mut self, a: &str) -> Vec<Type> {
        self.names.remove(a).unwrap_or_default()
    }

    /// Requirements of a typing's environment.
    pub fn of_env(t: &Typing) -> Reqs {
        let mut r = Reqs::default();
        for (x, ty) in &t.basis {
            r.var(x, ty.clone());
        }
        for (a, ty) in &t.context {
            if *ty != Type::Omega {
                r.name(a, ty.clone());
            }
        }
        r
    }

    /// Meets the requirements into an environment.
    pub fn apply(self, t: &mut Typing) {
        for (x, ts) in self.vars {
            let cur = t.basis.remove(&x);
            t.basis.insert(x, meet_dedup(cur.into_iter().chain(ts)));
        }
        for (a, ts) in self.names {
            let ts: Vec<Type> = ts.into_iter().filter(|t| *t != Type::Omega).collect();
            let cur = t.context.remove(&a).filter(|t| *t != Type::Omega);
            let all: Vec<Type> = cur.into_iter().chain(ts).collect();
            t.context.insert(a, if all.is_empty() { Type::Omega } else { meet_dedup(all) });
        }
    }
}

/// The default type of an unused variable.
pub(crate) fn default_var_type() -> Type {
    arrow(Type::Omega)
}

fn nf(t: &Term) -> Result<(Strict, Reqs), TypingError> {
    let (head, args) = t.spine();
    match head {
        Term::Var(x) => {
            let mut reqs = Reqs::default();
            let mut typed = Vec::new();
            for a in &args {
                let (s, r) = nf(a)?;
                reqs.merge(r);
                typed.push(s);
            }
            let doms: Vec<Type> = typed.iter().map(|s| arrow(s.k.clone())).collect();
            let head_k = Type::chain(doms.clone(), Type::Omega);
            reqs.var(x, arrow(head_k.clone()));
            let mut node = Strict::var(head_k);
            for (i, s) in typed.into_iter().enumerate() {
                let k = Type::chain(doms[i + 1..].iter().cloned(), Type::Omega);
                node = Strict { k, node: StrictNode::App { fun: Box::new(node), args: vec![s] } };
            }
            Ok((node, reqs))
        }
        _ if !args.is_empty() => Err(TypingError::NotNormal(t.to_string())),
        Term::Lam(x, b) => {
            let (body, mut reqs) = nf(b)?;
            let used = reqs.take_var(x);
            let d = if used.is_empty() { default_var_type() } else { meet_dedup(used) };
            Ok((Strict { k: Type::prod(d.clone(), body.k.clone()), node: StrictNode::Lam { d, body: Box::new(body) } }, reqs))
        }
        Term::Mu(alpha, c) => {
            let (body, mut reqs) = nf(&c.body)?;
            if body.k != Type::Omega {
                reqs.name(&c.name, body.k.clone());
            }
            let used = reqs.take_name(alpha);
            let a = if used.is_empty() { Type::Omega } else { meet_dedup(used) };
            Ok((Strict { k: a.clone(), node: StrictNode::Mu { a, body: Box::new(body) } }, reqs))
        }
        Term::App(..) => unreachable!("spine heads are not applications"),
    }
}

/// Restricted typing of a βμ-normal term.
pub fn synth_nf_typing(t: &Term) -> Result<Typing, TypingError> {
    let (s, reqs) = nf(t)?;
    let mut typing = Typing { arrows: vec![s], ..Typing::default() };
    reqs.apply(&mut typing);
    Ok(typing)
}

/// Restricted certificate for a βμ-normal term.
pub fn synth_nf(t: &Term) -> Result<Derivation, TypingError> {
    emit(&synth_nf_typing(t)?, &Expr::Term(t.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;
    use crate::typing::{check_derivation, Mode};
    use crate::types::Lattice;

    fn synth(src: &str) -> Derivation {
        let d = synth_nf(&parse_term(src).unwrap()).unwrap();
        check_derivation(&d, Mode::Restricted, &Lattice::two_point()).unwrap_or_else(|v| panic!("{v}\n{}", d.pretty()));
        d
    }

    #[test]
    fn variable() {
        assert_eq!(synth("x").conclusion.to_string(), "x: w -> psi |- x : w -> psi |");
    }

    #[test]
    fn identity() {
        assert_eq!(synth("\\x. x").conclusion.ty.to_string(), "(w -> psi) * w -> psi");
    }

    #[test]
    fn vacuous_binder_gets_the_default() {
        assert_eq!(synth("\\b a. a").conclusion.ty.to_string(), "(w -> psi) * (w -> psi) * w -> psi");
    }

    #[test]
    fn heads_take_the_argument_product() {
        let d = synth("x (\\y. y) z");
        assert_eq!(d.conclusion.basis["x"].to_string(), "((w -> psi) * w -> psi) * (w -> psi) * w -> psi");
    }

    #[test]
    fn mu_forms() {
        synth("mu a.[a] x");
        synth("mu a.[b] x (mu c.[a] y)");
        synth("\\x. mu a.[a] x (mu b.[a] x)");
        assert!(synth_nf(&parse_term("(\\x. x) y").unwrap()).is_err());
    }
}
