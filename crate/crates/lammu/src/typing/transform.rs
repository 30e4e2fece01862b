//! Structural operations on certificates: intersection of a family,
//! moving weakening and strengthening towards the leaves, thinning,
//! α-conversion and decomposition into type-rule nodes.

use super::{Derivation, Judgement, NameContext, Rule, Basis, TypingError};
use crate::syntax::{Command, Expr, Term};
use crate::types::{leq, Lattice, Type};

/// Right-nested `(Inter)` of a family with a common subject and
/// environment; `None` for an empty family.
pub fn inter_all(mut parts: Vec<Derivation>) -> Option<Derivation> {
    let mut acc = parts.pop()?;
    while let Some(d) = parts.pop() {
        acc = Derivation::inter(d, acc);
    }
    Some(acc)
}

/// The environment a premise sees when the conclusion's environment is
/// replaced by `basis`/`context`: entries for variables and names bound at
/// this node are kept.
fn premise_env(d: &Derivation, p: &Derivation, basis: &Basis, context: &NameContext) -> (Basis, NameContext) {
    let mut b = basis.clone();
    let mut c = context.clone();
    match (&d.rule, d.conclusion.term()) {
        (Rule::Abs, Some(Term::Lam(x, _))) => {
            if let Some(t) = p.conclusion.basis.get(x) {
                b.insert(x.clone(), t.clone());
            }
        }
        (Rule::MuAbs, Some(Term::Mu(a, _))) => {
            if let Some(t) = p.conclusion.context.get(a) {
                c.insert(a.clone(), t.clone());
            }
        }
        _ => {}
    }
    (b, c)
}

/// Replaces the environment of a rule node, recursing into its premises
/// through `wrap`. Returns `None` for nodes whose environment is not passed
/// on unchanged.
fn reroot(d: &Derivation, basis: &Basis, context: &NameContext, wrap: fn(Derivation, Basis, NameContext) -> Derivation) -> Option<Derivation> {
    if matches!(d.rule, Rule::Weak | Rule::Strength | Rule::Ax) {
        return None;
    }
    let premises = d
        .premises
        .iter()
        .map(|p| {
            let (b, c) = premise_env(d, p, basis, context);
            wrap(p.clone(), b, c)
        })
        .collect();
    let conclusion = Judgement { basis: basis.clone(), context: context.clone(), ..d.conclusion.clone() };
    Some(Derivation { rule: d.rule, conclusion, premises, side: d.side.clone() })
}

/// Moves a top-level `(Weak)` one level down. Over an axiom the weakening is
/// absorbed; other derivations are returned unchanged.
pub fn push_weak(d: &Derivation) -> Derivation {
    if d.rule != Rule::Weak {
        return d.clone();
    }
    let p = &d.premises[0];
    let (basis, context) = (&d.conclusion.basis, &d.conclusion.context);
    if p.rule == Rule::Ax {
        return Derivation { conclusion: d.conclusion.clone(), ..p.clone() };
    }
    reroot(p, basis, context, Derivation::weaken_to).unwrap_or_else(|| d.clone())
}

/// Moves a top-level `(Strength)` one level down. Over an axiom it becomes
/// an axiom followed by `(Leq)`; over `(Weak)` and `(Strength)` the
/// derivation is returned unchanged.
pub fn push_strength(d: &Derivation) -> Derivation {
    if d.rule != Rule::Strength {
        return d.clone();
    }
    let p = &d.premises[0];
    let (basis, context) = (&d.conclusion.basis, &d.conclusion.context);
    if p.rule == Rule::Ax {
        let Some(Term::Var(x)) = p.conclusion.term() else { return d.clone() };
        return Derivation::ax(basis.clone(), x, context.clone()).leq_to(p.conclusion.ty.clone());
    }
    reroot(p, basis, context, Derivation::strengthen_to).unwrap_or_else(|| d.clone())
}

/// Removes `x` from every basis of a derivation whose subject does not
/// mention `x`.
pub fn thin(d: &Derivation, x: &str) -> Result<Derivation, TypingError> {
    let free = match &d.conclusion.subject {
        Expr::Term(t) => t.has_free_var(x),
        Expr::Cmd(c) => c.free_vars().contains(x),
    };
    if free {
        return Err(TypingError::Shape(format!("{x} occurs free in the subject")));
    }
    fn go(d: &Derivation, x: &str) -> Derivation {
        let mut conclusion = d.conclusion.clone();
        conclusion.basis.remove(x);
        Derivation { rule: d.rule, conclusion, premises: d.premises.iter().map(|p| go(p, x)).collect(), side: d.side.clone() }
    }
    Ok(go(d, x))
}

fn rename_term(t: &Term, old: &str, new: &str) -> Term {
    let r = |s: &String| if s == old { new.to_string() } else { s.clone() };
    match t {
        Term::Var(x) => Term::Var(r(x)),
        Term::Lam(x, b) => Term::Lam(r(x), Box::new(rename_term(b, old, new))),
        Term::App(f, a) => Term::app(rename_term(f, old, new), rename_term(a, old, new)),
        Term::Mu(a, c) => Term::Mu(r(a), Box::new(rename_cmd(c, old, new))),
    }
}

fn rename_cmd(c: &Command, old: &str, new: &str) -> Command {
    let name = if c.name == old { new } else { &c.name };
    Command::new(name, rename_term(&c.body, old, new))
}

fn rename_keys(m: &std::collections::BTreeMap<String, Type>, old: &str, new: &str) -> std::collections::BTreeMap<String, Type> {
    m.iter().map(|(k, t)| (if k == old { new.to_string() } else { k.clone() }, t.clone())).collect()
}

/// Renames every occurrence of the identifier `old` (bound or free,
/// variable or name) to `new`, in subjects and environments alike. `new`
/// must not occur anywhere in the derivation.
pub fn alpha_convert(d: &Derivation, old: &str, new: &str) -> Derivation {
    let c = &d.conclusion;
    let subject = match &c.subject {
        Expr::Term(t) => Expr::Term(rename_term(t, old, new)),
        Expr::Cmd(k) => Expr::Cmd(rename_cmd(k, old, new)),
    };
    let conclusion = Judgement {
        basis: rename_keys(&c.basis, old, new),
        subject,
        ty: c.ty.clone(),
        context: rename_keys(&c.context, old, new),
    };
    Derivation {
        rule: d.rule,
        conclusion,
        premises: d.premises.iter().map(|p| alpha_convert(p, old, new)).collect(),
        side: d.side.clone(),
    }
}

/// A derivation split into the type-rule nodes it is built from.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub conclusion: Judgement,
    /// One derivation per index, each ending in a type rule.
    pub family: Vec<Derivation>,
}

impl Decomposition {
    /// Rebuilds a derivation of the original conclusion: each member is
    /// brought to the root environment, then `(Inter)` and `(Leq)`.
    pub fn recompose(&self) -> Derivation {
        let (basis, context) = (&self.conclusion.basis, &self.conclusion.context);
        let parts = self
            .family
            .iter()
            .map(|d| {
                let mut b = d.conclusion.basis.clone();
                let mut c = d.conclusion.context.clone();
                for (k, t) in basis {
                    b.entry(k.clone()).or_insert_with(|| t.clone());
                }
                for (k, t) in context {
                    c.entry(k.clone()).or_insert_with(|| t.clone());
                }
                d.clone().weaken_to(b, c).strengthen_to(basis.clone(), context.clone())
            })
            .collect();
        inter_all(parts).expect("decompositions are non-empty").leq_to(self.conclusion.ty.clone())
    }
}

/// Walks `(Inter)`, `(Leq)`, `(Weak)` and `(Strength)` nodes down to the
/// type-rule nodes below them, skipping `(ω)`. The predicate must not be
/// equivalent to `ω`.
pub fn decompose(d: &Derivation, lat: &Lattice) -> Result<Decomposition, TypingError> {
    let c = &d.conclusion;
    if leq(lat, c.sort(), &Type::Omega, &c.ty)? {
        return Err(TypingError::Shape(format!("predicate `{}` is equivalent to ω", c.ty)));
    }
    fn go(d: &Derivation, out: &mut Vec<Derivation>) {
        match d.rule {
            Rule::Inter | Rule::Leq | Rule::Weak | Rule::Strength => d.premises.iter().for_each(|p| go(p, out)),
            Rule::Omega => {}
            _ => out.push(d.clone()),
        }
    }
    let mut family = Vec::new();
    go(d, &mut family);
    Ok(Decomposition { conclusion: c.clone(), family })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;
    use crate::typing::{check_derivation, synth_nf, Mode};

    fn lat() -> Lattice {
        Lattice::two_point()
    }

    fn checks(d: &Derivation) {
        check_derivation(d, Mode::Restricted, &lat()).unwrap_or_else(|v| panic!("{v}\n{}", d.pretty()));
    }

    #[test]
    fn inter_all_nests_to_the_right() {
        let d = synth_nf(&parse_term("x").unwrap()).unwrap();
        let all = inter_all(vec![d.clone(), d.clone(), d.clone()]).unwrap();
        assert_eq!(all.premises[1].rule, Rule::Inter);
        assert!(inter_all(vec![]).is_none());
        checks(&all);
    }

    #[test]
    fn decomposition_recomposes() {
        let d = synth_nf(&parse_term("\\x. x y").unwrap()).unwrap();
        let both = Derivation::inter(d.clone(), d);
        let dec = decompose(&both, &lat()).unwrap();
        assert_eq!(dec.family.len(), 2);
        assert!(dec.family.iter().all(|m| m.rule == Rule::Abs));
        let back = dec.recompose();
        assert_eq!(back.conclusion, both.conclusion);
        checks(&back);
    }

    #[test]
    fn omega_predicates_do_not_decompose() {
        let d = Derivation::omega(Default::default(), Term::var("x"), Default::default());
        assert!(decompose(&d, &lat()).is_err());
    }

    #[test]
    fn weakening_moves_to_the_leaves() {
        let d = synth_nf(&parse_term("\\x. x y").unwrap()).unwrap();
        let mut basis = d.conclusion.basis.clone();
        basis.insert("z".into(), Type::arrow(Type::Omega, Type::psi()));
        let w = d.weaken_to(basis, Default::default());
        let mut cur = w;
        for _ in 0..4 {
            checks(&cur);
            cur = push_weak(&cur);
        }
        checks(&cur);
        checks(&thin(&cur, "z").unwrap());
    }

    #[test]
    fn strengthening_moves_to_the_leaves() {
        let d = synth_nf(&parse_term("x y").unwrap()).unwrap();
        let mut basis = d.conclusion.basis.clone();
        let y = basis["y"].clone();
        basis.insert("y".into(), Type::inter(y, Type::arrow(Type::prod(Type::arrow(Type::Omega, Type::psi()), Type::Omega), Type::psi())));
        let s = d.strengthen_to(basis, Default::default());
        checks(&s);
        let pushed = push_strength(&s);
        assert_eq!(pushed.rule, Rule::App);
        checks(&pushed);
    }

    #[test]
    fn alpha_conversion_renames_binders() {
        let d = synth_nf(&parse_term("\\x. x").unwrap()).unwrap();
        let r = alpha_convert(&d, "x", "u");
        assert_eq!(r.conclusion.subject.to_string(), "\\u. u");
        checks(&r);
    }
}
