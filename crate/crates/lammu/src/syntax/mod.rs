//! Terms and commands of the λμ-calculus: AST, parsing, printing and the
//! three substitution operations.
//!
//! Terms are kept with their binder names so that certificates can mention
//! subterms directly. α-equivalence and hashing go through the nameless form
//! in [`nameless`].

pub mod nameless;
mod parse;
mod enumerate;
mod print;
mod subst;

use std::collections::BTreeSet;

pub use enumerate::{closed_terms, terms_of_size};
pub use parse::{parse_command, parse_expr, parse_stack, parse_term, ParseError};
pub use subst::{
    freshen_binders, rename_name, struct_subst, struct_subst_hygienic, struct_subst_stack,
    subst_expr, subst_term, subst_term_hygienic, NameSupply,
};

/// A λμ-term: `x`, `\x. M`, `M N` or `mu a.[b] M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Lam(String, Box<Term>),
    App(Box<Term>, Box<Term>),
    Mu(String, Box<Command>),
}

/// A named command `[a] M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Command {
    pub name: String,
    pub body: Term,
}

/// Either syntactic sort; the subject of a judgement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expr {
    Term(Term),
    Cmd(Command),
}

/// A finite term stack `L1 :: ... :: Lk :: eps`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Stack(pub Vec<Term>);

impl Term {
    pub fn var(x: &str) -> Term {
        Term::Var(x.to_string())
    }

    pub fn lam(x: &str, body: Term) -> Term {
        Term::Lam(x.to_string(), Box::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn mu(a: &str, c: Command) -> Term {
        Term::Mu(a.to_string(), Box::new(c))
    }

    /// Applies `self` to every term of the stack, left to right.
    pub fn apply_stack(self, stack: &Stack) -> Term {
        stack.0.iter().fold(self, |m, p| Term::app(m, p.clone()))
    }

    /// Number of AST nodes, counting each command as one node.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Lam(_, b) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
            Term::Mu(_, c) => 1 + c.size(),
        }
    }

    /// Splits `H A1 ... An` into the head `H` and its arguments.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut t = self;
        while let Term::App(f, a) = t {
            args.push(a.as_ref());
            t = f;
        }
        args.reverse();
        (t, args)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_fv(&mut Vec::new(), &mut out);
        out
    }

    pub fn free_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_fn(&mut Vec::new(), &mut out);
        out
    }

    pub fn has_free_var(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => x == y,
            Term::Lam(y, b) => x != y && b.has_free_var(x),
            Term::App(f, a) => f.has_free_var(x) || a.has_free_var(x),
            Term::Mu(_, c) => c.body.has_free_var(x),
        }
    }

    pub fn has_free_name(&self, a: &str) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Lam(_, b) => b.has_free_name(a),
            Term::App(f, g) => f.has_free_name(a) || g.has_free_name(a),
            Term::Mu(b, c) => a != b && c.has_free_name(a),
        }
    }

    fn collect_fv(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::Lam(x, b) => {
                bound.push(x.clone());
                b.collect_fv(bound, out);
                bound.pop();
            }
            Term::App(f, a) => {
                f.collect_fv(bound, out);
                a.collect_fv(bound, out);
            }
            Term::Mu(_, c) => c.body.collect_fv(bound, out),
        }
    }

    fn collect_fn(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(_) => {}
            Term::Lam(_, b) => b.collect_fn(bound, out),
            Term::App(f, a) => {
                f.collect_fn(bound, out);
                a.collect_fn(bound, out);
            }
            Term::Mu(a, c) => {
                bound.push(a.clone());
                c.collect_fn(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable and name identifier occurring anywhere, bound or free.
    pub fn all_identifiers(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Lam(x, b) => {
                out.insert(x.clone());
                b.all_identifiers(out);
            }
            Term::App(f, a) => {
                f.all_identifiers(out);
                a.all_identifiers(out);
            }
            Term::Mu(a, c) => {
                out.insert(a.clone());
                c.all_identifiers(out);
            }
        }
    }

    /// Binders (λ-variables and μ-names) in pre-order, with repetitions.
    pub fn binders(&self, vars: &mut Vec<String>, names: &mut Vec<String>) {
        match self {
            Term::Var(_) => {}
            Term::Lam(x, b) => {
                vars.push(x.clone());
                b.binders(vars, names);
            }
            Term::App(f, a) => {
                f.binders(vars, names);
                a.binders(vars, names);
            }
            Term::Mu(a, c) => {
                names.push(a.clone());
                c.body.binders(vars, names);
            }
        }
    }

    /// True when all binders are pairwise distinct and distinct from the
    /// free identifiers of the same namespace.
    pub fn is_well_named(&self) -> bool {
        Expr::Term(self.clone()).is_well_named()
    }
}

impl Command {
    pub fn new(name: &str, body: Term) -> Command {
        Command { name: name.to_string(), body }
    }

    pub fn size(&self) -> usize {
        1 + self.body.size()
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        self.body.free_vars()
    }

    pub fn free_names(&self) -> BTreeSet<String> {
        let mut out = self.body.free_names();
        out.insert(self.name.clone());
        out
    }

    pub fn has_free_name(&self, a: &str) -> bool {
        self.name == a || self.body.has_free_name(a)
    }

    fn collect_fn(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        if !bound.contains(&self.name) {
            out.insert(self.name.clone());
        }
        self.body.collect_fn(bound, out);
    }

    pub fn all_identifiers(&self, out: &mut BTreeSet<String>) {
        out.insert(self.name.clone());
        self.body.all_identifiers(out);
    }
}

impl Expr {
    pub fn size(&self) -> usize {
        match self {
            Expr::Term(t) => t.size(),
            Expr::Cmd(c) => c.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            Expr::Term(t) => t.free_vars(),
            Expr::Cmd(c) => c.free_vars(),
        }
    }

    pub fn free_names(&self) -> BTreeSet<String> {
        match self {
            Expr::Term(t) => t.free_names(),
            Expr::Cmd(c) => c.free_names(),
        }
    }

    pub fn all_identifiers(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        match self {
            Expr::Term(t) => t.all_identifiers(&mut out),
            Expr::Cmd(c) => c.all_identifiers(&mut out),
        }
        out
    }

    /// Bound variables and bound names, in pre-order with repetitions.
    pub fn binders(&self) -> (Vec<String>, Vec<String>) {
        let (mut vars, mut names) = (Vec::new(), Vec::new());
        match self {
            Expr::Term(t) => t.binders(&mut vars, &mut names),
            Expr::Cmd(c) => c.body.binders(&mut vars, &mut names),
        }
        (vars, names)
    }

    pub fn is_well_named(&self) -> bool {
        let (vars, names) = self.binders();
        let unique = |xs: &[String], free: &BTreeSet<String>| {
            let set: BTreeSet<&String> = xs.iter().collect();
            set.len() == xs.len() && xs.iter().all(|x| !free.contains(x))
        };
        unique(&vars, &self.free_vars()) && unique(&names, &self.free_names())
    }

    pub fn as_term(&self) -> Option<&Term> {
        match self {
            Expr::Term(t) => Some(t),
            Expr::Cmd(_) => None,
        }
    }

    pub fn into_term(self) -> Option<Term> {
        match self {
            Expr::Term(t) => Some(t),
            Expr::Cmd(_) => None,
        }
    }

    pub fn as_cmd(&self) -> Option<&Command> {
        match self {
            Expr::Cmd(c) => Some(c),
            Expr::Term(_) => None,
        }
    }

    pub fn is_term(&self) -> bool {
        matches!(self, Expr::Term(_))
    }
}

impl From<Term> for Expr {
    fn from(t: Term) -> Expr {
        Expr::Term(t)
    }
}

impl From<Command> for Expr {
    fn from(c: Command) -> Expr {
        Expr::Cmd(c)
    }
}

/// Smallest primed variant of `base` (`x'`, `x''`, ...) not in `used`.
pub fn fresh_name(base: &str, used: &BTreeSet<String>) -> String {
    let mut candidate = format!("{base}'");
    while used.contains(&candidate) {
        candidate.push('\'');
    }
    candidate
}

/// Renames binders so that the result is well named and α-equivalent to the
/// input. Well-named inputs are returned unchanged.
pub fn well_name(e: &Expr) -> Expr {
    if e.is_well_named() {
        return e.clone();
    }
    let mut supply = NameSupply::from_expr(e);
    // Reserve free identifiers; binders are renamed on their second use.
    let mut seen_vars: BTreeSet<String> = e.free_vars();
    let mut seen_names: BTreeSet<String> = e.free_names();
    match e {
        Expr::Term(t) => Expr::Term(rename_dups(t, &mut seen_vars, &mut seen_names, &mut supply)),
        Expr::Cmd(c) => Expr::Cmd(Command {
            name: c.name.clone(),
            body: rename_dups(&c.body, &mut seen_vars, &mut seen_names, &mut supply),
        }),
    }
}

fn rename_dups(
    t: &Term,
    seen_vars: &mut BTreeSet<String>,
    seen_names: &mut BTreeSet<String>,
    supply: &mut NameSupply,
) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::Lam(x, b) => {
            let (x2, body) = if seen_vars.contains(x) {
                let y = supply.fresh(x);
                (y.clone(), subst_term(b, x, &Term::Var(y)))
            } else {
                (x.clone(), (**b).clone())
            };
            seen_vars.insert(x2.clone());
            Term::Lam(x2, Box::new(rename_dups(&body, seen_vars, seen_names, supply)))
        }
        Term::App(f, a) => Term::app(
            rename_dups(f, seen_vars, seen_names, supply),
            rename_dups(a, seen_vars, seen_names, supply),
        ),
        Term::Mu(a, c) => {
            let (a2, cmd) = if seen_names.contains(a) {
                let b = supply.fresh(a);
                let renamed = rename_name(&Expr::Cmd((**c).clone()), &b, a);
                (b, renamed.as_cmd().cloned().expect("command stays a command"))
            } else {
                (a.clone(), (**c).clone())
            };
            seen_names.insert(a2.clone());
            let body = rename_dups(&cmd.body, seen_vars, seen_names, supply);
            Term::mu(&a2, Command { name: cmd.name, body })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn free_vars_and_names() {
        assert!(t("\\x.x").free_vars().is_empty());
        let fnames: Vec<_> = t("mu a.[b] x").free_names().into_iter().collect();
        assert_eq!(fnames, vec!["b".to_string()]);
        let fv: Vec<_> = t("mu a.[a] (x y)").free_vars().into_iter().collect();
        assert_eq!(fv, vec!["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn fresh_names_are_primed() {
        let used: BTreeSet<String> = ["x".into(), "x'".into()].into_iter().collect();
        assert_eq!(fresh_name("x", &used), "x''");
        assert_eq!(fresh_name("y", &used), "y'");
    }

    #[test]
    fn well_naming_renames_shadowing_binders() {
        let e = Expr::Term(t("\\x.\\x.x"));
        let w = well_name(&e);
        assert!(w.is_well_named());
        assert!(nameless::alpha_eq(&e, &w));
        assert_eq!(w.as_term().unwrap().to_string(), "\\x. \\x'. x'");
        let ok = Expr::Term(t("\\x.\\y.x y"));
        assert_eq!(well_name(&ok), ok);
        let free_clash = Expr::Term(t("x (\\x.x)"));
        let w = well_name(&free_clash);
        assert!(w.is_well_named());
        assert!(nameless::alpha_eq(&free_clash, &w));
    }

    #[test]
    fn spine_splits_applications() {
        let m = t("x a (b c) d");
        let (h, args) = m.spine();
        assert_eq!(h, &Term::var("x"));
        assert_eq!(args.len(), 3);
    }
}
