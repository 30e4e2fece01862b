//! Node-by-node verification of derivation certificates.

use super::{lookup, type_leq, Derivation, Judgement, Mode, Rule};
use crate::syntax::{Expr, Term};
use crate::types::{is_restricted, Lattice, Sort, Type};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// The first failing node: its path from the root (premise indices), its
/// rule and the failed condition.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub struct Violation {
    pub path: Vec<usize>,
    pub rule: Rule,
    pub reason: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(|i| i.to_string()).collect();
        write!(f, "violation at [{}] ({:?}): {}", path.join(","), self.rule, self.reason)
    }
}

/// Checks every node of `d`. Rule matching is syntactic: all subtyping has
/// to appear as explicit `Leq` or `Strength` nodes.
pub fn check_derivation(d: &Derivation, mode: Mode, lat: &Lattice) -> Result<(), Violation> {
    let mut path = Vec::new();
    go(d, mode, lat, &mut path)
}

fn go(d: &Derivation, mode: Mode, lat: &Lattice, path: &mut Vec<usize>) -> Result<(), Violation> {
    node(d, mode, lat).map_err(|reason| Violation { path: path.clone(), rule: d.rule, reason })?;
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        go(p, mode, lat, path)?;
        path.pop();
    }
    Ok(())
}

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn well_formed(j: &Judgement, mode: Mode) -> Check {
    let sorted = |t: &Type, sort: Sort, what: &str| -> Check {
        ensure(t.has_sort(sort), || format!("{what} `{t}` is not of sort {sort:?}"))?;
        ensure(mode == Mode::Full || is_restricted(t, sort), || format!("{what} `{t}` is not restricted"))
    };
    for (x, t) in &j.basis {
        sorted(t, Sort::D, &format!("basis entry {x}"))?;
    }
    for (a, t) in &j.context {
        sorted(t, Sort::C, &format!("context entry {a}"))?;
    }
    sorted(&j.ty, j.sort(), "predicate")?;
    let (vars, names) = j.subject.binders();
    for x in vars {
        ensure(!j.basis.contains_key(&x), || format!("bound variable {x} occurs in the basis"))?;
    }
    for a in names {
        ensure(!j.context.contains_key(&a), || format!("bound name {a} occurs in the context"))?;
    }
    Ok(())
}

fn arity(d: &Derivation, n: usize) -> Check {
    ensure(d.premises.len() == n, || format!("expected {n} premise(s), found {}", d.premises.len()))
}

fn same_env(a: &Judgement, b: &Judgement) -> Check {
    ensure(a.basis == b.basis, || "premise and conclusion bases differ".into())?;
    ensure(a.context == b.context, || "premise and conclusion contexts differ".into())
}

fn subset(small: &BTreeMap<String, Type>, big: &BTreeMap<String, Type>) -> bool {
    small.iter().all(|(k, t)| big.get(k) == Some(t))
}

fn node(d: &Derivation, mode: Mode, lat: &Lattice) -> Check {
    let c = &d.conclusion;
    well_formed(c, mode)?;
    let prem = |i: usize| &d.premises[i].conclusion;
    let term = |e: &Expr| e.as_term().cloned();
    match d.rule {
        Rule::Ax => {
            arity(d, 0)?;
            let Some(Term::Var(x)) = term(&c.subject) else { return Err("subject is not a variable".into()) };
            ensure(c.basis.get(&x) == Some(&c.ty), || format!("{x}: {} is not in the basis", c.ty))
        }
        Rule::Abs => {
            arity(d, 1)?;
            let p = prem(0);
            let Some(Term::Lam(x, body)) = term(&c.subject) else { return Err("subject is not an abstraction".into()) };
            ensure(p.subject == Expr::Term(*body), || "premise subject is not the body".into())?;
            ensure(p.context == c.context, || "premise and conclusion contexts differ".into())?;
            let mut expected = p.basis.clone();
            let delta = expected.remove(&x).unwrap_or(Type::Omega);
            ensure(expected == c.basis, || format!("conclusion basis is not the premise basis without {x}"))?;
            if let Some(s) = &d.side.delta {
                ensure(*s == delta, || format!("side δ `{s}` differs from the basis type `{delta}` of {x}"))?;
            }
            let Type::Arrow(k, r) = &p.ty else { return Err("premise type is not an arrow".into()) };
            let want = Type::arrow(Type::prod(delta, (**k).clone()), (**r).clone());
            ensure(c.ty == want, || format!("expected `{want}`, found `{}`", c.ty))?;
            ensure(mode == Mode::Full || is_restricted(&c.ty, Sort::D), || "type is not restricted".into())
        }
        Rule::App => {
            arity(d, 2)?;
            let (f, a) = (prem(0), prem(1));
            let Some(Term::App(m, n)) = term(&c.subject) else { return Err("subject is not an application".into()) };
            ensure(f.subject == Expr::Term(*m), || "left premise subject is not the function".into())?;
            ensure(a.subject == Expr::Term(*n), || "right premise subject is not the argument".into())?;
            same_env(f, c)?;
            same_env(a, c)?;
            let Type::Arrow(k, r) = &f.ty else { return Err("function type is not an arrow".into()) };
            let Type::Prod(delta, kappa) = k.as_ref() else { return Err("function domain is not a product".into()) };
            ensure(**delta == a.ty, || format!("argument type `{}` does not match `{delta}`", a.ty))?;
            let want = Type::arrow((**kappa).clone(), (**r).clone());
            ensure(c.ty == want, || format!("expected `{want}`, found `{}`", c.ty))
        }
        Rule::TCmd => {
            arity(d, 1)?;
            let p = prem(0);
            let Expr::Cmd(cmd) = &c.subject else { return Err("subject is not a command".into()) };
            ensure(p.subject == Expr::Term(cmd.body.clone()), || "premise subject is not the command body".into())?;
            same_env(p, c)?;
            ensure(mode == Mode::Full || c.context.contains_key(&cmd.name), || {
                format!("name {} must be in the context in restricted mode", cmd.name)
            })?;
            let kappa = lookup(&c.context, &cmd.name);
            if let Some(s) = &d.side.kappa {
                ensure(*s == kappa, || format!("side κ `{s}` differs from the context type `{kappa}`"))?;
            }
            let want = Type::prod(p.ty.clone(), kappa);
            ensure(c.ty == want, || format!("expected `{want}`, found `{}`", c.ty))
        }
        Rule::MuAbs => {
            arity(d, 1)?;
            let p = prem(0);
            let Some(Term::Mu(a, cmd)) = term(&c.subject) else { return Err("subject is not a μ-abstraction".into()) };
            ensure(p.subject == Expr::Cmd(*cmd), || "premise subject is not the command".into())?;
            ensure(p.basis == c.basis, || "premise and conclusion bases differ".into())?;
            let mut expected = p.context.clone();
            let kappa = expected.remove(&a).unwrap_or(Type::Omega);
            ensure(expected == c.context, || format!("conclusion context is not the premise context without {a}"))?;
            if let Some(s) = &d.side.kappa {
                ensure(*s == kappa, || format!("side κ `{s}` differs from the context type `{kappa}`"))?;
            }
            let Type::Prod(head, tail) = &p.ty else { return Err("premise type is not a product".into()) };
            let Type::Arrow(k1, r) = head.as_ref() else { return Err("premise head is not an arrow".into()) };
            ensure(k1 == tail, || format!("premise is not of the form (κ' -> ρ) * κ': `{}`", p.ty))?;
            let want = Type::arrow(kappa, (**r).clone());
            ensure(c.ty == want, || format!("expected `{want}`, found `{}`", c.ty))
        }
        Rule::Inter => {
            arity(d, 2)?;
            let (a, b) = (prem(0), prem(1));
            for p in [a, b] {
                ensure(p.subject == c.subject, || "premise subject differs".into())?;
                same_env(p, c)?;
            }
            let want = Type::inter(a.ty.clone(), b.ty.clone());
            ensure(c.ty == want, || format!("expected `{want}`, found `{}`", c.ty))
        }
        Rule::Omega => {
            arity(d, 0)?;
            ensure(mode == Mode::Full, || "rule (ω) is not available in restricted mode".into())?;
            ensure(c.ty == Type::Omega, || "predicate is not ω".into())
        }
        Rule::Leq => {
            arity(d, 1)?;
            let p = prem(0);
            ensure(p.subject == c.subject, || "premise subject differs".into())?;
            same_env(p, c)?;
            if let Some((l, r)) = &d.side.leq {
                ensure(*l == p.ty && *r == c.ty, || "side inequality does not match the judgements".into())?;
            }
            let ok = type_leq(mode, lat, c.sort(), &p.ty, &c.ty).map_err(|e| e.to_string())?;
            ensure(ok, || format!("`{}` is not below `{}`", p.ty, c.ty))
        }
        Rule::Weak => {
            arity(d, 1)?;
            let p = prem(0);
            ensure(p.subject == c.subject && p.ty == c.ty, || "premise subject or type differs".into())?;
            ensure(subset(&p.basis, &c.basis), || "premise basis is not contained in the conclusion basis".into())?;
            ensure(subset(&p.context, &c.context), || {
                "premise context is not contained in the conclusion context".into()
            })
        }
        Rule::Strength => {
            arity(d, 1)?;
            let p = prem(0);
            ensure(p.subject == c.subject && p.ty == c.ty, || "premise subject or type differs".into())?;
            for (sort, small, big) in [(Sort::D, &c.basis, &p.basis), (Sort::C, &c.context, &p.context)] {
                for key in small.keys().chain(big.keys()) {
                    let (s, t) = (lookup(small, key), lookup(big, key));
                    if s == t {
                        continue;
                    }
                    let ok = type_leq(mode, lat, sort, &s, &t).map_err(|e| e.to_string())?;
                    ensure(ok, || format!("{key}: `{s}` is not below `{t}`"))?;
                }
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typing::parse_judgement;

    fn lat() -> Lattice {
        Lattice::two_point()
    }

    fn ax(src: &str) -> Derivation {
        Derivation::new(Rule::Ax, parse_judgement(src).unwrap(), vec![])
    }

    #[test]
    fn axiom_needs_the_exact_entry() {
        assert!(check_derivation(&ax("x: w -> psi |- x : w -> psi"), Mode::Restricted, &lat()).is_ok());
        let bad = ax("x: w -> psi |- y : w -> psi");
        let v = check_derivation(&bad, Mode::Full, &lat()).unwrap_err();
        assert_eq!(v.path, Vec::<usize>::new());
    }

    #[test]
    fn omega_is_full_mode_only() {
        let d = Derivation::omega(Default::default(), Term::var("x"), Default::default());
        assert!(check_derivation(&d, Mode::Full, &lat()).is_ok());
        assert!(check_derivation(&d, Mode::Restricted, &lat()).is_err());
    }

    #[test]
    fn violations_point_at_the_failing_premise() {
        let good = ax("x: w -> psi |- x : w -> psi");
        let mut bad = good.clone();
        bad.conclusion.ty = Type::psi();
        let d = Derivation::inter(good, bad);
        let v = check_derivation(&d, Mode::Full, &lat()).unwrap_err();
        assert_eq!(v.path, vec![1]);
        assert_eq!(v.rule, Rule::Ax);
    }

    #[test]
    fn barendregt_convention_is_enforced() {
        let j = parse_judgement("x: w -> psi |- \\x. x : (w -> psi) * w -> psi").unwrap();
        let d = Derivation::omega(j.basis.clone(), j.subject.clone(), j.context.clone());
        assert!(check_derivation(&d, Mode::Full, &lat()).is_err());
    }
}
