//! Subject expansion: from a typing of a contractum back to the redex, and
//! along the leftmost-outermost path from a reduct back to the term.

use super::strict::{arrow, dedup_args, meet_into, meet_of, strictify, Strict, StrictNode, Typing};
use super::synth::{default_var_type, Reqs};
use super::{emit, lookup, Derivation, TypingError};
use crate::reduction::RedexSite;
use crate::syntax::{Command, Expr, Term};
use crate::types::Type;

fn shape(msg: impl Into<String>) -> TypingError {
    TypingError::Shape(msg.into())
}

fn mismatch(t: &Term) -> TypingError {
    shape(format!("typing does not follow the shape of `{t}`"))
}

/// Typings found where the substituted term was placed, and for structural
/// substitution the type each affected command body ends up with.
#[derive(Default)]
struct Found {
    occurrences: Vec<Strict>,
    cuts: Vec<Type>,
}

/// Given a node for `t[n/x]`, the node for `t` with `x` typed where `n`
/// was; the typings of `n` are collected.
fn split_var(s: &Strict, t: &Term, x: &str, found: &mut Found) -> Result<Strict, TypingError> {
    if !t.has_free_var(x) {
        return Ok(s.clone());
    }
    let node = match (t, &s.node) {
        (Term::Var(_), _) => {
            found.occurrences.push(s.clone());
            return Ok(Strict::var(s.k.clone()));
        }
        (Term::Lam(_, b), StrictNode::Lam { d, body }) => {
            StrictNode::Lam { d: d.clone(), body: Box::new(split_var(body, b, x, found)?) }
        }
        (Term::App(f, a), StrictNode::App { fun, args }) => StrictNode::App {
            fun: Box::new(split_var(fun, f, x, found)?),
            args: args.iter().map(|s| split_var(s, a, x, found)).collect::<Result<_, _>>()?,
        },
        (Term::Mu(_, c), StrictNode::Mu { a, body }) => {
            StrictNode::Mu { a: a.clone(), body: Box::new(split_var(body, &c.body, x, found)?) }
        }
        _ => return Err(mismatch(t)),
    };
    Ok(Strict { k: s.k.clone(), node })
}

/// Given a node for the body of `c[α ⇐ n]`, the node for the body of `c`.
fn split_name_cmd(s: &Strict, c: &Command, alpha: &str, found: &mut Found) -> Result<Strict, TypingError> {
    if c.name != alpha {
        return split_name(s, &c.body, alpha, found);
    }
    let StrictNode::App { fun, args } = &s.node else { return Err(mismatch(&c.body)) };
    found.occurrences.extend(args.iter().cloned());
    let inner = split_name(fun, &c.body, alpha, found)?;
    found.cuts.push(inner.k.clone());
    Ok(inner)
}

/// Given a node for `t[α ⇐ n]`, the node for `t`.
fn split_name(s: &Strict, t: &Term, alpha: &str, found: &mut Found) -> Result<Strict, TypingError> {
    if !t.has_free_name(alpha) {
        return Ok(s.clone());
    }
    let node = match (t, &s.node) {
        (Term::Lam(_, b), StrictNode::Lam { d, body }) => {
            StrictNode::Lam { d: d.clone(), body: Box::new(split_name(body, b, alpha, found)?) }
        }
        (Term::App(f, a), StrictNode::App { fun, args }) => StrictNode::App {
            fun: Box::new(split_name(fun, f, alpha, found)?),
            args: args.iter().map(|s| split_name(s, a, alpha, found)).collect::<Result<_, _>>()?,
        },
        (Term::Mu(_, c), StrictNode::Mu { a, body }) => {
            StrictNode::Mu { a: a.clone(), body: Box::new(split_name_cmd(body, c, alpha, found)?) }
        }
        _ => return Err(mismatch(t)),
    };
    Ok(Strict { k: s.k.clone(), node })
}

/// The argument typings: those found at the occurrences, or `q` when there
/// are none (its environment then becomes a requirement).
fn arguments(found: Vec<Strict>, q: Option<&Typing>) -> Result<(Vec<Strict>, Reqs), TypingError> {
    let args = dedup_args(found);
    if !args.is_empty() {
        return Ok((args, Reqs::default()));
    }
    let q = q.ok_or_else(|| shape("the argument is erased and no typing for it was supplied"))?;
    if q.arrows.is_empty() {
        return Err(shape("the typing supplied for the argument has no arrows"));
    }
    Ok((q.arrows.clone(), Reqs::of_env(q)))
}

/// Expands one arrow of a contractum back to its redex; the arrow is kept.
fn expand_root(s: &Strict, redex: &Term, q: Option<&Typing>) -> Result<(Strict, Reqs), TypingError> {
    let Term::App(f, _) = redex else { return Err(shape(format!("`{redex}` is not a redex"))) };
    match f.as_ref() {
        Term::Lam(x, body) => {
            let mut found = Found::default();
            let body = split_var(s, body, x, &mut found)?;
            let (args, reqs) = arguments(found.occurrences, q)?;
            let d = meet_of(&args);
            let lam = Strict { k: Type::prod(d.clone(), body.k.clone()), node: StrictNode::Lam { d, body: Box::new(body) } };
            Ok((Strict { k: s.k.clone(), node: StrictNode::App { fun: Box::new(lam), args } }, reqs))
        }
        Term::Mu(alpha, c) => {
            let StrictNode::Mu { a, body } = &s.node else { return Err(shape("μ-contractum is not typed by a μ node")) };
            let mut found = Found::default();
            let body = split_name_cmd(body, c, alpha, &mut found)?;
            let (args, reqs) = arguments(found.occurrences, q)?;
            let a2 = Type::prod(meet_of(&args), a.clone());
            let mu = Strict { k: a2.clone(), node: StrictNode::Mu { a: a2, body: Box::new(body) } };
            Ok((Strict { k: s.k.clone(), node: StrictNode::App { fun: Box::new(mu), args } }, reqs))
        }
        _ => Err(shape(format!("`{redex}` is not a redex"))),
    }
}

/// Gives the head variable of the spine `t` the domain `k`.
fn retype_head(s: &Strict, t: &Term, k: Type) -> Result<(Strict, Reqs), TypingError> {
    match (t, &s.node) {
        (Term::Var(z), _) => {
            let mut r = Reqs::default();
            r.var(z, arrow(k.clone()));
            Ok((Strict::var(k), r))
        }
        (Term::App(g, _), StrictNode::App { fun, args }) => {
            let (fun, r) = retype_head(fun, g, Type::prod(meet_of(args), k.clone()))?;
            Ok((Strict { k, node: StrictNode::App { fun: Box::new(fun), args: args.clone() } }, r))
        }
        _ => Err(shape(format!("`{t}` is not headed by a variable"))),
    }
}

/// Expands one arrow of the reduct along `path`; binders met on the way
/// absorb the requirements of the expanded part.
fn expand_at(s: &Strict, m: &Term, path: &[usize], q: Option<&Typing>) -> Result<(Strict, Reqs), TypingError> {
    let Some((&i, rest)) = path.split_first() else { return expand_root(s, m, q) };
    match (m, i, &s.node) {
        (Term::Lam(y, b), 0, StrictNode::Lam { d, body }) => {
            let (body2, mut r) = expand_at(body, b, rest, q)?;
            let extra = r.take_var(y);
            let d2 = if extra.is_empty() { d.clone() } else { meet_into(d, &extra) };
            let k = if d2 == *d && body2.k == body.k { s.k.clone() } else { Type::prod(d2.clone(), body2.k.clone()) };
            Ok((Strict { k, node: StrictNode::Lam { d: d2, body: Box::new(body2) } }, r))
        }
        (Term::App(f, _), 0, StrictNode::App { fun, args }) => {
            let (fun2, r) = expand_at(fun, f, rest, q)?;
            let k = if fun2.k == fun.k {
                s.k.clone()
            } else {
                match &fun2.k {
                    Type::Prod(d, tail) if **d == meet_of(args) => (**tail).clone(),
                    _ => return Err(shape(format!("function `{f}` changed its argument type"))),
                }
            };
            Ok((Strict { k, node: StrictNode::App { fun: Box::new(fun2), args: args.clone() } }, r))
        }
        (Term::App(f, a), 1, StrictNode::App { fun, args }) => {
            let mut reqs = Reqs::default();
            let mut args2 = Vec::new();
            for arg in args {
                let (arg2, r) = expand_at(arg, a, rest, q)?;
                reqs.merge(r);
                args2.push(arg2);
            }
            let args2 = dedup_args(args2);
            let fun2 = if meet_of(&args2) == meet_of(args) {
                (**fun).clone()
            } else {
                let Type::Prod(_, tail) = &fun.k else { return Err(mismatch(f)) };
                let (fun2, r) = retype_head(fun, f, Type::prod(meet_of(&args2), (**tail).clone()))?;
                reqs.merge(r);
                fun2
            };
            Ok((Strict { k: s.k.clone(), node: StrictNode::App { fun: Box::new(fun2), args: args2 } }, reqs))
        }
        (Term::Mu(alpha, c), 0, StrictNode::Mu { a, body }) => {
            let rest = match rest.split_first() {
                Some((0, rest)) => rest,
                _ => return Err(shape("a redex path into a command must continue into its body")),
            };
            let (body2, mut r) = expand_at(body, &c.body, rest, q)?;
            if body2.k != body.k && body2.k != Type::Omega {
                r.name(&c.name, body2.k.clone());
            }
            let extra: Vec<Type> = r.take_name(alpha).into_iter().filter(|t| *t != Type::Omega).collect();
            let a2 = match (extra.is_empty(), a) {
                (true, _) => a.clone(),
                (false, Type::Omega) => meet_into(&extra[0], &extra[1..]),
                (false, _) => meet_into(a, &extra),
            };
            let k = if a2 == *a { s.k.clone() } else { a2.clone() };
            Ok((Strict { k, node: StrictNode::Mu { a: a2, body: Box::new(body2) } }, r))
        }
        _ => Err(shape(format!("redex path does not fit `{m}`"))),
    }
}

/// Typing of `m` from a typing of its leftmost-outermost reduct (contracted
/// at `site`) and, for erasing redexes, a typing of the redex argument.
pub(crate) fn lo_expand_typing(m: &Term, site: &RedexSite, reduct: &Typing, q: Option<&Typing>) -> Result<Typing, TypingError> {
    let mut reqs = Reqs::default();
    let mut arrows = Vec::new();
    for s in &reduct.arrows {
        let (s2, r) = expand_at(s, m, &site.path, q)?;
        reqs.merge(r);
        arrows.push(s2);
    }
    let mut t = Typing { arrows: dedup_args(arrows), basis: reduct.basis.clone(), context: reduct.context.clone() };
    reqs.apply(&mut t);
    Ok(t)
}

/// Certificate for `m` from a certificate for its leftmost-outermost reduct
/// `n` (the redex is at `site`) and one for the redex argument. The basis,
/// context and type of the result may differ from those for `n`.
pub fn lo_expand(m: &Term, site: &RedexSite, d_n: &Derivation, d_q: Option<&Derivation>) -> Result<Derivation, TypingError> {
    let q = d_q.map(strictify).transpose()?;
    let t = lo_expand_typing(m, site, &strictify(d_n)?, q.as_ref())?;
    emit(&t, &Expr::Term(m.clone()))
}

fn expand_redex(d_n: &Derivation, d_q: &Derivation, redex: &Term) -> Result<Derivation, TypingError> {
    let n = strictify(d_n)?;
    let q = strictify(d_q)?;
    let t = lo_expand_typing(redex, &RedexSite { path: vec![], rule: crate::reduction::RedexRule::Beta }, &n, Some(&q))?;
    Ok(emit(&t, &Expr::Term(redex.clone()))?.leq_to(d_n.conclusion.ty.clone()))
}

/// From `Γ ⊢ M[N/x] : δ | Δ` and `Γ ⊢ N : δ' | Δ`, a certificate for
/// `Γ ⊢ (λx.M)N : δ | Δ`. `redex` is `(λx.M)N`.
pub fn expand_beta(d_n: &Derivation, d_q: &Derivation, redex: &Term) -> Result<Derivation, TypingError> {
    match redex {
        Term::App(f, _) if matches!(f.as_ref(), Term::Lam(..)) => expand_redex(d_n, d_q, redex),
        _ => Err(shape(format!("`{redex}` is not a β-redex"))),
    }
}

/// From `Γ ⊢ μα.C[α⇐N] : δ | Δ` and `Γ ⊢ N : δ' | Δ`, a certificate for
/// `Γ ⊢ (μα.C)N : δ | Δ`. `redex` is `(μα.C)N`.
pub fn expand_mu(d_n: &Derivation, d_q: &Derivation, redex: &Term) -> Result<Derivation, TypingError> {
    match redex {
        Term::App(f, _) if matches!(f.as_ref(), Term::Mu(..)) => expand_redex(d_n, d_q, redex),
        _ => Err(shape(format!("`{redex}` is not a μ-redex"))),
    }
}

#[derive(Clone, Debug)]
pub struct SubstSplit {
    /// The type given to the substituted variable.
    pub delta: Type,
    /// `Γ, x:δ' ⊢ T : σ | Δ`.
    pub with_var: Derivation,
    /// `Γ ⊢ L : δ' | Δ`, absent when `x` does not occur in `T`.
    pub for_arg: Option<Derivation>,
}

/// Splits `Γ ⊢ T[L/x] : σ | Δ` into a typing of `T` with `x : δ'` and a
/// typing of `L` at `δ'`, where `δ'` is the meet of the types the
/// occurrences of `L` received. Unused `x` gets `ω → psi`.
pub fn subst_split(d: &Derivation, t: &Term, l: &Term, x: &str) -> Result<SubstSplit, TypingError> {
    let typing = strictify(d)?;
    let mut found = Found::default();
    let arrows = typing.arrows.iter().map(|s| split_var(s, t, x, &mut found)).collect::<Result<Vec<_>, _>>()?;
    let args = dedup_args(found.occurrences);
    let delta = if args.is_empty() { default_var_type() } else { meet_of(&args) };
    let mut basis = typing.basis.clone();
    basis.insert(x.to_string(), delta.clone());
    let with_var = Typing { arrows, basis, context: typing.context.clone() };
    let with_var = emit(&with_var, &Expr::Term(t.clone()))?.leq_to(d.conclusion.ty.clone());
    let for_arg = if args.is_empty() {
        None
    } else {
        Some(emit(&Typing { arrows: args, ..typing }, &Expr::Term(l.clone()))?)
    };
    Ok(SubstSplit { delta, with_var, for_arg })
}

#[derive(Clone, Debug)]
pub struct StructSplit {
    /// The meet of the types the copies of `L` received, `ω → psi` when
    /// `α` does not occur.
    pub delta: Type,
    /// The types of the bodies of the `[α]` commands in `T`: each is
    /// `δ_i × κ_i` where the copy of `L` there had `δ_i`.
    pub cut_types: Vec<Type>,
    /// `Γ ⊢ T : σ' | α:δ'×κ, Δ`.
    pub with_name: Derivation,
    /// `Γ ⊢ L : δ' | Δ`.
    pub for_arg: Option<Derivation>,
}

/// Splits `Γ ⊢ T[α⇐L] : σ | α:κ, Δ` into a typing of `T` in which `α` has
/// `δ' × κ`, and a typing of `L` at `δ'`.
pub fn struct_split(d: &Derivation, t: &Expr, alpha: &str, l: &Term) -> Result<StructSplit, TypingError> {
    let typing = strictify(d)?;
    let mut found = Found::default();
    let arrows = typing
        .arrows
        .iter()
        .map(|s| match t {
            Expr::Term(m) => split_name(s, m, alpha, &mut found),
            Expr::Cmd(c) => split_name_cmd(s, c, alpha, &mut found),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let args = dedup_args(found.occurrences);
    let mut context = typing.context.clone();
    let delta = if args.is_empty() { default_var_type() } else { meet_of(&args) };
    let kappa = lookup(&context, alpha);
    context.insert(alpha.to_string(), Type::prod(delta.clone(), kappa));
    let mut with_name = emit(&Typing { arrows, basis: typing.basis.clone(), context }, t)?;
    if t.is_term() {
        with_name = with_name.leq_to(d.conclusion.ty.clone());
    }
    let for_arg = if args.is_empty() {
        None
    } else {
        let mut ctx = typing.context.clone();
        ctx.remove(alpha);
        Some(emit(&Typing { arrows: args, basis: typing.basis, context: ctx }, &Expr::Term(l.clone()))?)
    };
    Ok(StructSplit { delta, cut_types: found.cuts, with_name, for_arg })
}
