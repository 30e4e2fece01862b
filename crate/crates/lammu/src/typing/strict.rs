//! Syntax-directed typings for the restricted system.
//!
//! A [`Strict`] node types one subterm with a single arrow `κ → psi`,
//! following the shape of the subterm; intersections only appear at
//! arguments (one node per arrow of the argument type) and at the root.
//! Free variables and names are looked up in one environment shared by the
//! whole tree, bound ones in the type stored at their binder. Because a
//! smaller environment keeps every lookup valid, weakening and
//! strengthening are free in this form, and [`emit`] turns a typing into an
//! ordinary certificate.

use super::{lookup, Basis, Derivation, Judgement, NameContext, Rule, Side, TypingError};
use crate::syntax::{Command, Expr, Term};
use crate::types::{leq_restricted, Sort, Type};

/// One arrow `k → psi` for a term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strict {
    pub k: Type,
    pub node: StrictNode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrictNode {
    /// The variable's type must lie below `k → psi`.
    Var,
    /// `λx.M : d × κ → psi` with `x : d` and `M : κ → psi`.
    Lam { d: Type, body: Box<Strict> },
    /// `fun : δ × κ → psi` with `δ` the meet of the argument arrows.
    App { fun: Box<Strict>, args: Vec<Strict> },
    /// `μα.[β]M : a → psi` with `α : a` and `M : κ' → psi`, where `κ'` is
    /// `body.k` and the type of `β` must lie below `κ'`.
    Mu { a: Type, body: Box<Strict> },
}

/// A restricted typing: one strict tree per arrow of the predicate, and the
/// environment of free variables and names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Typing {
    pub arrows: Vec<Strict>,
    pub basis: Basis,
    pub context: NameContext,
}

pub(crate) fn arrow(k: Type) -> Type {
    Type::arrow(k, Type::psi())
}

/// The D-type of a family of strict nodes.
pub(crate) fn meet_of(ss: &[Strict]) -> Type {
    Type::meet_all(ss.iter().map(|s| arrow(s.k.clone())))
}

/// Meet of `ts` without syntactic repetitions.
pub(crate) fn meet_dedup(ts: impl IntoIterator<Item = Type>) -> Type {
    let mut seen: Vec<Type> = Vec::new();
    for t in ts {
        for c in t.conjuncts() {
            if !seen.contains(c) {
                seen.push(c.clone());
            }
        }
    }
    Type::meet_all(seen)
}

/// `t ∧ extra`, skipping conjuncts `t` already has.
pub(crate) fn meet_into(t: &Type, extra: &[Type]) -> Type {
    meet_dedup(std::iter::once(t.clone()).chain(extra.iter().cloned()))
}

/// Arguments without repeated arrows.
pub(crate) fn dedup_args(ss: Vec<Strict>) -> Vec<Strict> {
    let mut out: Vec<Strict> = Vec::new();
    for s in ss {
        if !out.iter().any(|o| o.k == s.k) {
            out.push(s);
        }
    }
    out
}

impl Strict {
    pub fn var(k: Type) -> Strict {
        Strict { k, node: StrictNode::Var }
    }

    /// The domain this node's rule produces before any final `Leq`.
    pub fn structural(&self) -> Type {
        match &self.node {
            StrictNode::Var => self.k.clone(),
            StrictNode::Lam { d, body } => Type::prod(d.clone(), body.k.clone()),
            StrictNode::App { fun, .. } => match &fun.k {
                Type::Prod(_, tail) => (**tail).clone(),
                other => other.clone(),
            },
            StrictNode::Mu { a, .. } => a.clone(),
        }
    }

    pub fn size(&self) -> usize {
        1 + match &self.node {
            StrictNode::Var => 0,
            StrictNode::Lam { body, .. } | StrictNode::Mu { body, .. } => body.size(),
            StrictNode::App { fun, args } => fun.size() + args.iter().map(Strict::size).sum::<usize>(),
        }
    }
}

impl Typing {
    /// The predicate: the meet of the arrows.
    pub fn ty(&self) -> Type {
        meet_of(&self.arrows)
    }
}

fn shape(msg: impl Into<String>) -> TypingError {
    TypingError::Shape(msg.into())
}

/// The certificate for `subject` described by `t`. Free names of the
/// subject missing from the context are given `ω`, so that every `(TCmd)`
/// finds its name.
pub fn emit(t: &Typing, subject: &Expr) -> Result<Derivation, TypingError> {
    let mut context = t.context.clone();
    for a in subject.free_names() {
        context.entry(a).or_insert(Type::Omega);
    }
    let parts: Vec<Derivation> = match subject {
        Expr::Term(m) => t.arrows.iter().map(|s| emit_term(s, m, &t.basis, &context)).collect::<Result<_, _>>()?,
        Expr::Cmd(c) => t.arrows.iter().map(|s| emit_cmd(s, c, &t.basis, &context)).collect::<Result<_, _>>()?,
    };
    super::inter_all(parts).ok_or_else(|| shape("a restricted typing needs at least one arrow"))
}

fn cast(d: Derivation, k: &Type) -> Derivation {
    d.leq_to(arrow(k.clone()))
}

fn emit_args(args: &[Strict], t: &Term, basis: &Basis, ctx: &NameContext) -> Result<Derivation, TypingError> {
    let parts = args.iter().map(|s| emit_term(s, t, basis, ctx)).collect::<Result<Vec<_>, _>>()?;
    super::inter_all(parts).ok_or_else(|| shape(format!("argument `{t}` has no arrows")))
}

fn emit_cmd(s: &Strict, c: &Command, basis: &Basis, ctx: &NameContext) -> Result<Derivation, TypingError> {
    let body = emit_term(s, &c.body, basis, ctx)?;
    let kappa = lookup(ctx, &c.name);
    let ty = Type::prod(body.conclusion.ty.clone(), kappa.clone());
    let j = Judgement::new(basis.clone(), c.clone(), ty, ctx.clone());
    Ok(Derivation::new(Rule::TCmd, j, vec![body]).with_side(Side { kappa: Some(kappa), ..Side::default() }))
}

fn emit_term(s: &Strict, t: &Term, basis: &Basis, ctx: &NameContext) -> Result<Derivation, TypingError> {
    let d = match (&s.node, t) {
        (StrictNode::Var, Term::Var(x)) => {
            if !basis.contains_key(x) {
                return Err(shape(format!("variable {x} has no type")));
            }
            Derivation::ax(basis.clone(), x, ctx.clone())
        }
        (StrictNode::Lam { d, body }, Term::Lam(x, b)) => {
            let mut inner = basis.clone();
            inner.insert(x.clone(), d.clone());
            let pb = emit_term(body, b, &inner, ctx)?;
            let ty = arrow(Type::prod(d.clone(), body.k.clone()));
            let j = Judgement::new(basis.clone(), t.clone(), ty, ctx.clone());
            Derivation::new(Rule::Abs, j, vec![pb]).with_side(Side { delta: Some(d.clone()), ..Side::default() })
        }
        (StrictNode::App { fun, args }, Term::App(f, a)) => {
            let pf = emit_term(fun, f, basis, ctx)?;
            let pa = emit_args(args, a, basis, ctx)?;
            let Type::Prod(_, tail) = &fun.k else { return Err(shape(format!("function `{f}` is not typed by a product"))) };
            let j = Judgement::new(basis.clone(), t.clone(), arrow((**tail).clone()), ctx.clone());
            Derivation::new(Rule::App, j, vec![pf, pa])
        }
        (StrictNode::Mu { a, body }, Term::Mu(alpha, c)) => {
            let mut inner = ctx.clone();
            inner.insert(alpha.clone(), a.clone());
            let tc = emit_cmd(body, c, basis, &inner)?;
            let k1 = body.k.clone();
            let tc = tc.leq_to(Type::prod(arrow(k1.clone()), k1));
            let j = Judgement::new(basis.clone(), t.clone(), arrow(a.clone()), ctx.clone());
            Derivation::new(Rule::MuAbs, j, vec![tc]).with_side(Side { kappa: Some(a.clone()), ..Side::default() })
        }
        _ => return Err(shape(format!("typing does not follow the shape of `{t}`"))),
    };
    Ok(cast(d, &s.k))
}

/// Reads a restricted certificate back into strict form; the predicate of
/// the result lies below the certificate's.
pub fn strictify(d: &Derivation) -> Result<Typing, TypingError> {
    let c = &d.conclusion;
    let arrows = match &c.subject {
        Expr::Term(_) => {
            let got = term_arrows(d)?;
            // Keep exactly one node per arrow of the predicate.
            conjunct_domains(&c.ty)?.into_iter().map(|k| select(&got, &k)).collect::<Result<_, _>>()?
        }
        Expr::Cmd(_) => cmd_arrows(d)?,
    };
    Ok(Typing { arrows, basis: c.basis.clone(), context: c.context.clone() })
}

/// Domains of the arrows of a restricted D-type.
pub(crate) fn conjunct_domains(t: &Type) -> Result<Vec<Type>, TypingError> {
    t.conjuncts()
        .into_iter()
        .map(|c| match c {
            Type::Arrow(k, r) if **r == Type::psi() => Ok((**k).clone()),
            other => Err(shape(format!("`{other}` is not a restricted arrow"))),
        })
        .collect()
}

/// A node of `got` typing the arrow `k → psi`, narrowed to exactly `k`.
pub(crate) fn select(got: &[Strict], k: &Type) -> Result<Strict, TypingError> {
    if let Some(s) = got.iter().find(|s| s.k == *k) {
        return Ok(s.clone());
    }
    for s in got {
        if leq_restricted(Sort::C, k, &s.k)? {
            return Ok(Strict { k: k.clone(), node: s.node.clone() });
        }
    }
    Err(shape(format!("no arrow covers `{}`", arrow(k.clone()))))
}

fn term_arrows(d: &Derivation) -> Result<Vec<Strict>, TypingError> {
    let c = &d.conclusion;
    let prem = |i: usize| &d.premises[i];
    Ok(match d.rule {
        Rule::Ax => conjunct_domains(&c.ty)?.into_iter().map(Strict::var).collect(),
        Rule::Abs => {
            let Type::Arrow(k, _) = &prem(0).conclusion.ty else { return Err(shape("Abs premise is not an arrow")) };
            let body = select(&term_arrows(prem(0))?, k)?;
            let Some(Term::Lam(x, _)) = c.term() else { return Err(shape("Abs subject")) };
            let delta = lookup(&prem(0).conclusion.basis, x);
            vec![Strict { k: Type::prod(delta.clone(), body.k.clone()), node: StrictNode::Lam { d: delta, body: Box::new(body) } }]
        }
        Rule::App => {
            let Type::Arrow(dom, _) = &prem(0).conclusion.ty else { return Err(shape("App function type")) };
            let Type::Prod(delta, kappa) = dom.as_ref() else { return Err(shape("App domain")) };
            let got_arg = term_arrows(prem(1))?;
            let args = conjunct_domains(delta)?.iter().map(|k| select(&got_arg, k)).collect::<Result<Vec<_>, _>>()?;
            let args = dedup_args(args);
            let fun_k = Type::prod(meet_of(&args), (**kappa).clone());
            let fun = select(&term_arrows(prem(0))?, &fun_k)?;
            vec![Strict { k: (**kappa).clone(), node: StrictNode::App { fun: Box::new(fun), args } }]
        }
        Rule::MuAbs => {
            let Some(Term::Mu(alpha, _)) = c.term() else { return Err(shape("MuAbs subject")) };
            let Type::Prod(_, k1) = &prem(0).conclusion.ty else { return Err(shape("MuAbs premise")) };
            let body = select(&cmd_arrows(prem(0))?, k1)?;
            let a = lookup(&prem(0).conclusion.context, alpha);
            vec![Strict { k: a.clone(), node: StrictNode::Mu { a, body: Box::new(body) } }]
        }
        Rule::Inter => {
            let mut v = term_arrows(prem(0))?;
            v.extend(term_arrows(prem(1))?);
            v
        }
        Rule::Leq => {
            let got = term_arrows(prem(0))?;
            conjunct_domains(&c.ty)?.iter().map(|k| select(&got, k)).collect::<Result<_, _>>()?
        }
        Rule::Weak | Rule::Strength => term_arrows(prem(0))?,
        Rule::Omega | Rule::TCmd => return Err(shape(format!("rule {:?} has no restricted reading for a term", d.rule))),
    })
}

/// Arrows of the body of a command, read through its `(TCmd)` nodes.
fn cmd_arrows(d: &Derivation) -> Result<Vec<Strict>, TypingError> {
    Ok(match d.rule {
        Rule::TCmd => term_arrows(&d.premises[0])?,
        Rule::Inter => {
            let mut v = cmd_arrows(&d.premises[0])?;
            v.extend(cmd_arrows(&d.premises[1])?);
            v
        }
        Rule::Leq | Rule::Weak | Rule::Strength => cmd_arrows(&d.premises[0])?,
        _ => return Err(shape(format!("rule {:?} has no restricted reading for a command", d.rule))),
    })
}
