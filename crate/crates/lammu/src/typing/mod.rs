//! Judgements, derivation certificates, the rule checker, and the
//! constructive pipeline that types every strongly normalising term in the
//! restricted system.

mod check;
mod expand;
mod json;
mod sn;
mod strict;
mod synth;
mod transform;

pub use check::{check_derivation, Violation};
pub use expand::{expand_beta, expand_mu, lo_expand, struct_split, subst_split, StructSplit, SubstSplit};
pub use json::{parse_judgement, DerivationJson, JudgementJson};
pub use sn::{type_sn, NotTypeable, SnTyper};
pub use strict::{emit, strictify, Strict, StrictNode, Typing};
pub use synth::{synth_nf, synth_nf_typing};
pub use transform::{
    alpha_convert, decompose, inter_all, push_strength, push_weak, thin, Decomposition,
};

use crate::syntax::{Command, Expr, Term};
use crate::types::{leq, leq_restricted, Lattice, Sort, Type, TypeError};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Variables to D-types.
pub type Basis = BTreeMap<String, Type>;
/// Names to C-types.
pub type NameContext = BTreeMap<String, Type>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Full,
    Restricted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Rule {
    Ax,
    Abs,
    App,
    TCmd,
    MuAbs,
    Inter,
    Omega,
    Leq,
    Weak,
    Strength,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgement {
    pub basis: Basis,
    pub subject: Expr,
    pub ty: Type,
    pub context: NameContext,
}

/// Extra data recorded at a node: `delta` for Abs, `kappa` for TCmd and
/// MuAbs, the inequality for Leq.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Side {
    pub delta: Option<Type>,
    pub kappa: Option<Type>,
    pub leq: Option<(Type, Type)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: Rule,
    pub conclusion: Judgement,
    pub premises: Vec<Derivation>,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypingError {
    #[error("{0}")]
    Type(#[from] TypeError),
    #[error("not in normal form: {0}")]
    NotNormal(String),
    #[error("{0}")]
    Shape(String),
    #[error("{0}")]
    Violation(#[from] Violation),
}

/// `Γ̄(x)`: the basis as a total function, `ω` outside its domain.
pub fn lookup(m: &BTreeMap<String, Type>, x: &str) -> Type {
    m.get(x).cloned().unwrap_or(Type::Omega)
}

/// `Γ1 ∧ Γ2`: union of domains, shared keys intersected.
pub fn basis_meet(g1: &Basis, g2: &Basis) -> Basis {
    let mut out = g1.clone();
    for (x, t) in g2 {
        out.entry(x.clone())
            .and_modify(|s| {
                if s != t {
                    *s = Type::inter(s.clone(), t.clone())
                }
            })
            .or_insert_with(|| t.clone());
    }
    out
}

pub fn context_meet(d1: &NameContext, d2: &NameContext) -> NameContext {
    basis_meet(d1, d2)
}

fn map_leq(mode: Mode, lat: &Lattice, sort: Sort, a: &BTreeMap<String, Type>, b: &BTreeMap<String, Type>) -> Result<bool, TypeError> {
    for key in a.keys().chain(b.keys()) {
        let (s, t) = (lookup(a, key), lookup(b, key));
        if s == t {
            continue;
        }
        if !type_leq(mode, lat, sort, &s, &t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pointwise `Γ1 ≤ Γ2` over the total-function view.
pub fn basis_leq(lat: &Lattice, g1: &Basis, g2: &Basis) -> Result<bool, TypeError> {
    map_leq(Mode::Full, lat, Sort::D, g1, g2)
}

pub fn context_leq(lat: &Lattice, d1: &NameContext, d2: &NameContext) -> Result<bool, TypeError> {
    map_leq(Mode::Full, lat, Sort::C, d1, d2)
}

/// Subtyping in the theory of `mode`. In restricted mode `ω` is only
/// comparable at sort C, where it is the top.
pub fn type_leq(mode: Mode, lat: &Lattice, sort: Sort, s: &Type, t: &Type) -> Result<bool, TypeError> {
    match mode {
        Mode::Full => leq(lat, sort, s, t),
        Mode::Restricted => {
            if sort == Sort::D && *t == Type::Omega {
                return Err(TypeError::NotRestricted(t.to_string()));
            }
            leq_restricted(sort, s, t)
        }
    }
}

impl Judgement {
    pub fn new(basis: Basis, subject: impl Into<Expr>, ty: Type, context: NameContext) -> Judgement {
        Judgement { basis, subject: subject.into(), ty, context }
    }

    pub fn sort(&self) -> Sort {
        if self.subject.is_term() {
            Sort::D
        } else {
            Sort::C
        }
    }

    pub fn term(&self) -> Option<&Term> {
        self.subject.as_term()
    }
}

impl fmt::Display for Judgement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |m: &BTreeMap<String, Type>| {
            m.iter().map(|(k, t)| format!("{k}: {t}")).collect::<Vec<_>>().join(", ")
        };
        let g = show(&self.basis);
        let d = show(&self.context);
        write!(f, "{}{}|- {} : {} |{}{}", g, if g.is_empty() { "" } else { " " }, self.subject, self.ty, if d.is_empty() { "" } else { " " }, d)
    }
}

impl Derivation {
    pub fn new(rule: Rule, conclusion: Judgement, premises: Vec<Derivation>) -> Derivation {
        Derivation { rule, conclusion, premises, side: Side::default() }
    }

    pub fn with_side(mut self, side: Side) -> Derivation {
        self.side = side;
        self
    }

    pub fn ax(basis: Basis, x: &str, context: NameContext) -> Derivation {
        let ty = lookup(&basis, x);
        Derivation::new(Rule::Ax, Judgement::new(basis, Term::var(x), ty, context), vec![])
    }

    pub fn omega(basis: Basis, subject: impl Into<Expr>, context: NameContext) -> Derivation {
        Derivation::new(Rule::Omega, Judgement::new(basis, subject, Type::Omega, context), vec![])
    }

    /// `(Abs)` over `x`: the premise types the body with an arrow.
    pub fn abs(x: &str, body: Derivation) -> Result<Derivation, TypingError> {
        let p = &body.conclusion;
        let Some(b) = p.term() else { return Err(TypingError::Shape("abstraction body must be a term".into())) };
        let Type::Arrow(k, r) = &p.ty else { return Err(TypingError::Shape(format!("`{}` is not an arrow", p.ty))) };
        let mut basis = p.basis.clone();
        let delta = basis.remove(x).unwrap_or(Type::Omega);
        let ty = Type::arrow(Type::prod(delta.clone(), (**k).clone()), (**r).clone());
        let j = Judgement::new(basis, Term::lam(x, b.clone()), ty, p.context.clone());
        Ok(Derivation::new(Rule::Abs, j, vec![body]).with_side(Side { delta: Some(delta), ..Side::default() }))
    }

    /// `(App)`: the function's domain must be a product.
    pub fn app(fun: Derivation, arg: Derivation) -> Result<Derivation, TypingError> {
        let (f, a) = (&fun.conclusion, &arg.conclusion);
        let (Some(m), Some(n)) = (f.term(), a.term()) else { return Err(TypingError::Shape("application of a command".into())) };
        let Type::Arrow(k, r) = &f.ty else { return Err(TypingError::Shape(format!("`{}` is not an arrow", f.ty))) };
        let Type::Prod(_, kappa) = k.as_ref() else { return Err(TypingError::Shape(format!("`{k}` is not a product"))) };
        let j = Judgement::new(f.basis.clone(), Term::app(m.clone(), n.clone()), Type::arrow((**kappa).clone(), (**r).clone()), f.context.clone());
        Ok(Derivation::new(Rule::App, j, vec![fun, arg]))
    }

    /// `(TCmd)` naming `a`.
    pub fn tcmd(a: &str, body: Derivation) -> Result<Derivation, TypingError> {
        let p = &body.conclusion;
        let Some(m) = p.term() else { return Err(TypingError::Shape("command body must be a term".into())) };
        let kappa = lookup(&p.context, a);
        let j = Judgement::new(p.basis.clone(), Command::new(a, m.clone()), Type::prod(p.ty.clone(), kappa.clone()), p.context.clone());
        Ok(Derivation::new(Rule::TCmd, j, vec![body]).with_side(Side { kappa: Some(kappa), ..Side::default() }))
    }

    /// `(MuAbs)` binding `a`: the premise types a command with
    /// `(κ' → ρ) × κ'`.
    pub fn mu_abs(a: &str, cmd: Derivation) -> Result<Derivation, TypingError> {
        let p = &cmd.conclusion;
        let Expr::Cmd(c) = &p.subject else { return Err(TypingError::Shape("μ-abstraction over a term".into())) };
        let Type::Prod(head, _) = &p.ty else { return Err(TypingError::Shape(format!("`{}` is not a product", p.ty))) };
        let Type::Arrow(_, r) = head.as_ref() else { return Err(TypingError::Shape(format!("`{head}` is not an arrow"))) };
        let mut context = p.context.clone();
        let kappa = context.remove(a).unwrap_or(Type::Omega);
        let j = Judgement::new(p.basis.clone(), Term::mu(a, c.clone()), Type::arrow(kappa.clone(), (**r).clone()), context);
        Ok(Derivation::new(Rule::MuAbs, j, vec![cmd]).with_side(Side { kappa: Some(kappa), ..Side::default() }))
    }

    /// `(Leq)` to `ty`; the identity when the type is already `ty`.
    pub fn leq_to(self, ty: Type) -> Derivation {
        if self.conclusion.ty == ty {
            return self;
        }
        let from = self.conclusion.ty.clone();
        let j = Judgement { ty: ty.clone(), ..self.conclusion.clone() };
        Derivation::new(Rule::Leq, j, vec![self]).with_side(Side { leq: Some((from, ty)), ..Side::default() })
    }

    /// `(Inter)` of two derivations for the same subject.
    pub fn inter(a: Derivation, b: Derivation) -> Derivation {
        let j = Judgement {
            ty: Type::inter(a.conclusion.ty.clone(), b.conclusion.ty.clone()),
            ..a.conclusion.clone()
        };
        Derivation::new(Rule::Inter, j, vec![a, b])
    }

    /// `(Weak)` to a larger basis and context; the identity when unchanged.
    pub fn weaken_to(self, basis: Basis, context: NameContext) -> Derivation {
        self.wrap(Rule::Weak, basis, context)
    }

    /// `(Strength)` to a smaller basis and context; the identity when
    /// unchanged.
    pub fn strengthen_to(self, basis: Basis, context: NameContext) -> Derivation {
        self.wrap(Rule::Strength, basis, context)
    }

    fn wrap(self, rule: Rule, basis: Basis, context: NameContext) -> Derivation {
        if self.conclusion.basis == basis && self.conclusion.context == context {
            return self;
        }
        let j = Judgement { basis, context, ..self.conclusion.clone() };
        Derivation::new(rule, j, vec![self])
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(Derivation::node_count).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(Derivation::depth).max().unwrap_or(0)
    }

    /// Number of nodes using `rule`.
    pub fn count_rule(&self, rule: Rule) -> usize {
        usize::from(self.rule == rule) + self.premises.iter().map(|p| p.count_rule(rule)).sum::<usize>()
    }

    /// Indented one-node-per-line rendering.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        fn go(d: &Derivation, depth: usize, out: &mut String) {
            out.push_str(&format!("{}({:?}) {}\n", "  ".repeat(depth), d.rule, d.conclusion));
            for p in &d.premises {
                go(p, depth + 1, out);
            }
        }
        go(self, 0, &mut out);
        out
    }
}
