//! Nameless (de Bruijn) form of terms and commands.
//!
//! Bound variables and bound names use separate index spaces; free
//! identifiers keep their names. Two expressions are α-equivalent exactly
//! when their nameless forms are equal, which also makes the form a sound
//! hashing key. Substitutions on this form cannot capture, so they serve as
//! an independent reference for the named operations.

use super::{Command, Expr, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ref {
    Bound(usize),
    Free(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NTerm {
    Var(Ref),
    Lam(Box<NTerm>),
    App(Box<NTerm>, Box<NTerm>),
    Mu(Box<NCmd>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NCmd {
    pub name: Ref,
    pub body: NTerm,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NExpr {
    Term(NTerm),
    Cmd(NCmd),
}

fn lookup(scope: &[String], x: &str) -> Ref {
    match scope.iter().rev().position(|y| y == x) {
        Some(i) => Ref::Bound(i),
        None => Ref::Free(x.to_string()),
    }
}

pub fn term(t: &Term) -> NTerm {
    term_in(t, &mut Vec::new(), &mut Vec::new())
}

pub fn command(c: &Command) -> NCmd {
    cmd_in(c, &mut Vec::new(), &mut Vec::new())
}

pub fn expr(e: &Expr) -> NExpr {
    match e {
        Expr::Term(t) => NExpr::Term(term(t)),
        Expr::Cmd(c) => NExpr::Cmd(command(c)),
    }
}

fn term_in(t: &Term, vars: &mut Vec<String>, names: &mut Vec<String>) -> NTerm {
    match t {
        Term::Var(x) => NTerm::Var(lookup(vars, x)),
        Term::Lam(x, b) => {
            vars.push(x.clone());
            let nb = term_in(b, vars, names);
            vars.pop();
            NTerm::Lam(Box::new(nb))
        }
        Term::App(f, a) => NTerm::App(
            Box::new(term_in(f, vars, names)),
            Box::new(term_in(a, vars, names)),
        ),
        Term::Mu(a, c) => {
            names.push(a.clone());
            let nc = cmd_in(c, vars, names);
            names.pop();
            NTerm::Mu(Box::new(nc))
        }
    }
}

fn cmd_in(c: &Command, vars: &mut Vec<String>, names: &mut Vec<String>) -> NCmd {
    NCmd { name: lookup(names, &c.name), body: term_in(&c.body, vars, names) }
}

pub fn alpha_eq(a: &Expr, b: &Expr) -> bool {
    expr(a) == expr(b)
}

pub fn alpha_eq_terms(a: &Term, b: &Term) -> bool {
    term(a) == term(b)
}

/// `t[n/x]` on nameless terms. `n` must have no dangling indices.
pub fn subst(t: &NTerm, x: &str, n: &NTerm) -> NTerm {
    match t {
        NTerm::Var(Ref::Free(y)) if y == x => n.clone(),
        NTerm::Var(_) => t.clone(),
        NTerm::Lam(b) => NTerm::Lam(Box::new(subst(b, x, n))),
        NTerm::App(f, a) => NTerm::App(Box::new(subst(f, x, n)), Box::new(subst(a, x, n))),
        NTerm::Mu(c) => NTerm::Mu(Box::new(NCmd { name: c.name.clone(), body: subst(&c.body, x, n) })),
    }
}

/// `t[a/b]`: free occurrences of name `b` become `a`.
pub fn rename(t: &NExpr, a: &str, b: &str) -> NExpr {
    fn go_t(t: &NTerm, a: &str, b: &str) -> NTerm {
        match t {
            NTerm::Var(_) => t.clone(),
            NTerm::Lam(body) => NTerm::Lam(Box::new(go_t(body, a, b))),
            NTerm::App(f, g) => NTerm::App(Box::new(go_t(f, a, b)), Box::new(go_t(g, a, b))),
            NTerm::Mu(c) => NTerm::Mu(Box::new(go_c(c, a, b))),
        }
    }
    fn go_c(c: &NCmd, a: &str, b: &str) -> NCmd {
        let name = match &c.name {
            Ref::Free(n) if n == b => Ref::Free(a.to_string()),
            other => other.clone(),
        };
        NCmd { name, body: go_t(&c.body, a, b) }
    }
    match t {
        NExpr::Term(t) => NExpr::Term(go_t(t, a, b)),
        NExpr::Cmd(c) => NExpr::Cmd(go_c(c, a, b)),
    }
}

/// `t[a <= l]`: every command named by the free name `a` gets `l` appended.
pub fn struct_subst(t: &NExpr, a: &str, l: &NTerm) -> NExpr {
    fn go_t(t: &NTerm, a: &str, l: &NTerm) -> NTerm {
        match t {
            NTerm::Var(_) => t.clone(),
            NTerm::Lam(b) => NTerm::Lam(Box::new(go_t(b, a, l))),
            NTerm::App(f, g) => NTerm::App(Box::new(go_t(f, a, l)), Box::new(go_t(g, a, l))),
            NTerm::Mu(c) => NTerm::Mu(Box::new(go_c(c, a, l))),
        }
    }
    fn go_c(c: &NCmd, a: &str, l: &NTerm) -> NCmd {
        let body = go_t(&c.body, a, l);
        match &c.name {
            Ref::Free(n) if n == a => {
                NCmd { name: c.name.clone(), body: NTerm::App(Box::new(body), Box::new(l.clone())) }
            }
            _ => NCmd { name: c.name.clone(), body },
        }
    }
    match t {
        NExpr::Term(t) => NExpr::Term(go_t(t, a, l)),
        NExpr::Cmd(c) => NExpr::Cmd(go_c(c, a, l)),
    }
}
