//! Term substitution `T[N/x]`, name renaming `T[a/b]` and structural
//! substitution `T[a <= L]`, all capture-avoiding.

use super::{fresh_name, Command, Expr, Stack, Term};
use std::collections::BTreeSet;

/// Source of fresh identifiers; remembers everything it has seen or issued.
#[derive(Clone, Debug, Default)]
pub struct NameSupply {
    used: BTreeSet<String>,
}

impl NameSupply {
    pub fn new() -> NameSupply {
        NameSupply::default()
    }

    pub fn from_expr(e: &Expr) -> NameSupply {
        let mut s = NameSupply::new();
        s.reserve(e);
        s
    }

    pub fn reserve(&mut self, e: &Expr) {
        self.used.extend(e.all_identifiers());
    }

    pub fn reserve_term(&mut self, t: &Term) {
        t.all_identifiers(&mut self.used);
    }

    pub fn reserve_name(&mut self, x: &str) {
        self.used.insert(x.to_string());
    }

    /// Smallest primed variant of `base` not yet used; it is marked used.
    pub fn fresh(&mut self, base: &str) -> String {
        let x = fresh_name(base, &self.used);
        self.used.insert(x.clone());
        x
    }
}

/// Substitution state. In hygienic mode every copy of the substituted term
/// but the first gets fresh binders, which keeps well-named terms well named.
struct SubstCtx<'a> {
    fv_n: BTreeSet<String>,
    fn_n: BTreeSet<String>,
    hygienic: bool,
    first: bool,
    supply: &'a mut NameSupply,
}

impl<'a> SubstCtx<'a> {
    fn new(n: &Term, hygienic: bool, supply: &'a mut NameSupply) -> SubstCtx<'a> {
        SubstCtx { fv_n: n.free_vars(), fn_n: n.free_names(), hygienic, first: true, supply }
    }

    fn copy(&mut self, n: &Term) -> Term {
        if self.hygienic && !self.first {
            freshen_binders(n, self.supply)
        } else {
            self.first = false;
            n.clone()
        }
    }

    fn fresh(&mut self, base: &str) -> String {
        self.supply.fresh(base)
    }
}

pub fn subst_term(t: &Term, x: &str, n: &Term) -> Term {
    let mut supply = NameSupply::new();
    supply.reserve_term(t);
    supply.reserve_term(n);
    supply.reserve_name(x);
    let mut ctx = SubstCtx::new(n, false, &mut supply);
    subst_t(t, x, n, &mut ctx)
}

pub fn subst_expr(e: &Expr, x: &str, n: &Term) -> Expr {
    match e {
        Expr::Term(t) => Expr::Term(subst_term(t, x, n)),
        Expr::Cmd(c) => Expr::Cmd(Command { name: c.name.clone(), body: subst_term(&c.body, x, n) }),
    }
}

/// `t[n/x]` where every copy of `n` but the first gets fresh binders drawn
/// from `supply`, which must already know every identifier in `t` and `n`.
pub fn subst_term_hygienic(t: &Term, x: &str, n: &Term, supply: &mut NameSupply) -> Term {
    let mut ctx = SubstCtx::new(n, true, supply);
    subst_t(t, x, n, &mut ctx)
}

fn subst_t(t: &Term, x: &str, n: &Term, ctx: &mut SubstCtx<'_>) -> Term {
    match t {
        Term::Var(y) if y == x => ctx.copy(n),
        Term::Var(_) => t.clone(),
        Term::Lam(y, b) => {
            if y == x || !b.has_free_var(x) {
                return t.clone();
            }
            if ctx.fv_n.contains(y) {
                let y2 = ctx.fresh(y);
                let b2 = subst_term(b, y, &Term::Var(y2.clone()));
                Term::Lam(y2, Box::new(subst_t(&b2, x, n, ctx)))
            } else {
                Term::Lam(y.clone(), Box::new(subst_t(b, x, n, ctx)))
            }
        }
        Term::App(f, a) => Term::app(subst_t(f, x, n, ctx), subst_t(a, x, n, ctx)),
        Term::Mu(a, c) => {
            if !c.body.has_free_var(x) {
                return t.clone();
            }
            let (a2, c2) = if ctx.fn_n.contains(a) {
                let a2 = ctx.fresh(a);
                let c2 = rename_cmd(c, &a2, a);
                (a2, c2)
            } else {
                (a.clone(), (**c).clone())
            };
            let body = subst_t(&c2.body, x, n, ctx);
            Term::mu(&a2, Command { name: c2.name, body })
        }
    }
}

/// `e[a/b]`: free occurrences of the name `b` become `a`.
pub fn rename_name(e: &Expr, a: &str, b: &str) -> Expr {
    match e {
        Expr::Term(t) => Expr::Term(rename_t(t, a, b)),
        Expr::Cmd(c) => Expr::Cmd(rename_cmd(c, a, b)),
    }
}

pub(crate) fn rename_cmd(c: &Command, a: &str, b: &str) -> Command {
    let name = if c.name == b { a.to_string() } else { c.name.clone() };
    Command { name, body: rename_t(&c.body, a, b) }
}

fn rename_t(t: &Term, a: &str, b: &str) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::Lam(y, body) => Term::Lam(y.clone(), Box::new(rename_t(body, a, b))),
        Term::App(f, g) => Term::app(rename_t(f, a, b), rename_t(g, a, b)),
        Term::Mu(g, c) => {
            if g == b || !c.has_free_name(b) {
                return t.clone();
            }
            if g == a {
                let mut supply = NameSupply::from_expr(&Expr::Term(t.clone()));
                supply.reserve_name(a);
                supply.reserve_name(b);
                let g2 = supply.fresh(g);
                let c2 = rename_cmd(c, &g2, g);
                Term::mu(&g2, rename_cmd(&c2, a, b))
            } else {
                Term::mu(g, rename_cmd(c, a, b))
            }
        }
    }
}

/// `e[a <= l]`: each command `[a] N` becomes `[a] N' l`.
pub fn struct_subst(e: &Expr, a: &str, l: &Term) -> Expr {
    let mut supply = NameSupply::from_expr(e);
    supply.reserve_term(l);
    supply.reserve_name(a);
    let mut ctx = SubstCtx::new(l, false, &mut supply);
    struct_e(e, a, l, &mut ctx)
}

/// Structural substitution with fresh binders in every copy of `l` but the
/// first; `supply` must know every identifier in `e` and `l`.
pub fn struct_subst_hygienic(e: &Expr, a: &str, l: &Term, supply: &mut NameSupply) -> Expr {
    let mut ctx = SubstCtx::new(l, true, supply);
    struct_e(e, a, l, &mut ctx)
}

/// `e[a <= L1 :: ... :: Lk]`, defined when `a` is free in no stack item.
pub fn struct_subst_stack(e: &Expr, a: &str, stack: &Stack) -> Option<Expr> {
    if stack.0.iter().any(|l| l.has_free_name(a)) {
        return None;
    }
    Some(stack.0.iter().fold(e.clone(), |acc, l| struct_subst(&acc, a, l)))
}

fn struct_e(e: &Expr, a: &str, l: &Term, ctx: &mut SubstCtx<'_>) -> Expr {
    match e {
        Expr::Term(t) => Expr::Term(struct_t(t, a, l, ctx)),
        Expr::Cmd(c) => Expr::Cmd(struct_c(c, a, l, ctx)),
    }
}

fn struct_c(c: &Command, a: &str, l: &Term, ctx: &mut SubstCtx<'_>) -> Command {
    let body = struct_t(&c.body, a, l, ctx);
    if c.name == a {
        let copy = ctx.copy(l);
        Command { name: c.name.clone(), body: Term::app(body, copy) }
    } else {
        Command { name: c.name.clone(), body }
    }
}

fn struct_t(t: &Term, a: &str, l: &Term, ctx: &mut SubstCtx<'_>) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::Lam(y, b) => {
            if !b.has_free_name(a) {
                return t.clone();
            }
            if ctx.fv_n.contains(y) {
                let y2 = ctx.fresh(y);
                let b2 = subst_term(b, y, &Term::Var(y2.clone()));
                Term::Lam(y2, Box::new(struct_t(&b2, a, l, ctx)))
            } else {
                Term::Lam(y.clone(), Box::new(struct_t(b, a, l, ctx)))
            }
        }
        Term::App(f, g) => Term::app(struct_t(f, a, l, ctx), struct_t(g, a, l, ctx)),
        Term::Mu(g, c) => {
            if g == a || !c.has_free_name(a) {
                return t.clone();
            }
            let (g2, c2) = if ctx.fn_n.contains(g) {
                let g2 = ctx.fresh(g);
                let c2 = rename_cmd(c, &g2, g);
                (g2, c2)
            } else {
                (g.clone(), (**c).clone())
            };
            Term::mu(&g2, struct_c(&c2, a, l, ctx))
        }
    }
}

/// α-equivalent copy of `t` whose binders are all fresh in `supply`.
pub fn freshen_binders(t: &Term, supply: &mut NameSupply) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::Lam(x, b) => {
            let y = supply.fresh(x);
            let b2 = subst_term(b, x, &Term::Var(y.clone()));
            Term::Lam(y, Box::new(freshen_binders(&b2, supply)))
        }
        Term::App(f, a) => Term::app(freshen_binders(f, supply), freshen_binders(a, supply)),
        Term::Mu(a, c) => {
            let b = supply.fresh(a);
            let c2 = rename_cmd(c, &b, a);
            Term::mu(&b, Command { name: c2.name, body: freshen_binders(&c2.body, supply) })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::nameless::{self, alpha_eq};
    use crate::syntax::{parse_expr, parse_stack, parse_term};

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn e(s: &str) -> Expr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn term_substitution() {
        assert_eq!(subst_term(&t("x y"), "x", &t("z")), t("z y"));
        assert_eq!(subst_term(&t("\\x.x"), "x", &t("n")), t("\\x.x"));
        let r = subst_term(&t("\\y.x"), "x", &t("y"));
        assert_eq!(r, t("\\y'.y"));
        // Names are renamed apart as well.
        let r = subst_term(&t("mu a.[a] x"), "x", &t("mu b.[a] z"));
        assert!(alpha_eq(&Expr::Term(r), &e("mu c.[c] mu b.[a] z")));
    }

    #[test]
    fn name_renaming() {
        assert_eq!(rename_name(&e("[b] x"), "a", "b"), e("[a] x"));
        assert_eq!(rename_name(&e("mu b.[b] x"), "a", "b"), e("mu b.[b] x"));
        assert_eq!(rename_name(&e("[g] x"), "a", "b"), e("[g] x"));
        let r = rename_name(&e("mu a.[b] x"), "a", "b");
        assert!(alpha_eq(&r, &e("mu c.[a] x")));
    }

    #[test]
    fn structural_substitution() {
        assert_eq!(struct_subst(&e("[a] x"), "a", &t("y")), e("[a] x y"));
        assert_eq!(struct_subst(&e("[b] x"), "a", &t("y")), e("[b] x"));
        let st = parse_stack("y :: z :: eps").unwrap();
        assert_eq!(struct_subst_stack(&e("[a] x"), "a", &st).unwrap(), e("[a] x y z"));
        // Nested commands are rewritten inside-out.
        assert_eq!(struct_subst(&e("[a] mu b.[a] x"), "a", &t("y")), e("[a] (mu b.[a] x y) y"));
        assert!(struct_subst_stack(&e("[a] x"), "a", &parse_stack("mu b.[a] y").unwrap()).is_none());
    }

    #[test]
    fn hygienic_copies_stay_well_named() {
        let body = t("f (f a)");
        let n = t("\\y. \\w. y");
        let mut supply = NameSupply::new();
        supply.reserve_term(&body);
        supply.reserve_term(&n);
        let r = subst_term_hygienic(&body, "f", &n, &mut supply);
        assert!(r.is_well_named());
        assert_eq!(nameless::term(&r), nameless::term(&subst_term(&body, "f", &n)));
    }
}
