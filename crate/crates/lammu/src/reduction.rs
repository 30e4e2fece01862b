//! One-step and multi-step reduction: the β, μ and Rename rules, the
//! leftmost-outermost strategy, normalisation, SN probing and a
//! convertibility test.

use crate::syntax::nameless::{self, NExpr};
use crate::syntax::{
    rename_name, struct_subst, struct_subst_hygienic, subst_term, subst_term_hygienic, Command,
    Expr, NameSupply, Term,
};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use thiserror::Error;

pub const DEFAULT_FUEL: usize = 10_000;
pub const DEFAULT_BUDGET: usize = 100_000;
/// Largest term (in AST nodes) that SN probing and certification will visit.
pub const MAX_TERM_SIZE: usize = 5_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RedexRule {
    Beta,
    MuApp,
    Rename,
}

/// Address of a redex. Children are numbered: λ body 0; application
/// function 0 and argument 1; μ command 0; command body 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RedexSite {
    pub path: Vec<usize>,
    pub rule: RedexRule,
}

impl fmt::Display for RedexSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(|i| i.to_string()).collect();
        write!(f, "{:?}@[{}]", self.rule, path.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("no {rule:?} redex at path {path:?}")]
    InvalidSite { path: Vec<usize>, rule: RedexRule },
    #[error("fuel exhausted after {steps} steps")]
    FuelExhausted { last: Term, steps: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Leftmost-outermost β/μ reduction.
    Lo,
    /// Leftmost-outermost over all rules, Rename included.
    Full,
}

fn term_rule(t: &Term) -> Option<RedexRule> {
    match t {
        Term::App(f, _) => match f.as_ref() {
            Term::Lam(..) => Some(RedexRule::Beta),
            Term::Mu(..) => Some(RedexRule::MuApp),
            _ => None,
        },
        _ => None,
    }
}

fn cmd_rule(c: &Command) -> Option<RedexRule> {
    match c.body {
        Term::Mu(..) => Some(RedexRule::Rename),
        _ => None,
    }
}

/// All redex sites in leftmost-outermost (pre-order) order.
pub fn redexes(e: &Expr) -> Vec<RedexSite> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    match e {
        Expr::Term(t) => redexes_t(t, &mut path, &mut out),
        Expr::Cmd(c) => redexes_c(c, &mut path, &mut out),
    }
    out
}

fn redexes_t(t: &Term, path: &mut Vec<usize>, out: &mut Vec<RedexSite>) {
    if let Some(rule) = term_rule(t) {
        out.push(RedexSite { path: path.clone(), rule });
    }
    match t {
        Term::Var(_) => {}
        Term::Lam(_, b) => {
            path.push(0);
            redexes_t(b, path, out);
            path.pop();
        }
        Term::App(f, a) => {
            path.push(0);
            redexes_t(f, path, out);
            path.pop();
            path.push(1);
            redexes_t(a, path, out);
            path.pop();
        }
        Term::Mu(_, c) => {
            path.push(0);
            redexes_c(c, path, out);
            path.pop();
        }
    }
}

fn redexes_c(c: &Command, path: &mut Vec<usize>, out: &mut Vec<RedexSite>) {
    if let Some(rule) = cmd_rule(c) {
        out.push(RedexSite { path: path.clone(), rule });
    }
    path.push(0);
    redexes_t(&c.body, path, out);
    path.pop();
}

/// Subexpression at `path`.
pub fn subexpr<'a>(e: &'a Expr, path: &[usize]) -> Option<SubRef<'a>> {
    let mut cur = match e {
        Expr::Term(t) => SubRef::Term(t),
        Expr::Cmd(c) => SubRef::Cmd(c),
    };
    for &i in path {
        cur = match (cur, i) {
            (SubRef::Term(Term::Lam(_, b)), 0) => SubRef::Term(b),
            (SubRef::Term(Term::App(f, _)), 0) => SubRef::Term(f),
            (SubRef::Term(Term::App(_, a)), 1) => SubRef::Term(a),
            (SubRef::Term(Term::Mu(_, c)), 0) => SubRef::Cmd(c),
            (SubRef::Cmd(c), 0) => SubRef::Term(&c.body),
            _ => return None,
        };
    }
    Some(cur)
}

#[derive(Clone, Copy, Debug)]
pub enum SubRef<'a> {
    Term(&'a Term),
    Cmd(&'a Command),
}

impl SubRef<'_> {
    pub fn to_expr(self) -> Expr {
        match self {
            SubRef::Term(t) => Expr::Term(t.clone()),
            SubRef::Cmd(c) => Expr::Cmd(c.clone()),
        }
    }
}

/// Replaces the subexpression at `path` by the result of `f`.
pub fn replace_at(
    e: &Expr,
    path: &[usize],
    f: &mut dyn FnMut(SubRef<'_>) -> Option<Expr>,
) -> Option<Expr> {
    fn go_t(t: &Term, path: &[usize], f: &mut dyn FnMut(SubRef<'_>) -> Option<Expr>) -> Option<Expr> {
        let Some((&i, rest)) = path.split_first() else {
            return f(SubRef::Term(t));
        };
        let term = Expr::into_term;
        let new = match (t, i) {
            (Term::Lam(x, b), 0) => Term::Lam(x.clone(), Box::new(term(go_t(b, rest, f)?)?)),
            (Term::App(g, a), 0) => Term::App(Box::new(term(go_t(g, rest, f)?)?), a.clone()),
            (Term::App(g, a), 1) => Term::App(g.clone(), Box::new(term(go_t(a, rest, f)?)?)),
            (Term::Mu(a, c), 0) => {
                let Expr::Cmd(c2) = go_c(c, rest, f)? else { return None };
                Term::Mu(a.clone(), Box::new(c2))
            }
            _ => return None,
        };
        Some(Expr::Term(new))
    }
    fn go_c(c: &Command, path: &[usize], f: &mut dyn FnMut(SubRef<'_>) -> Option<Expr>) -> Option<Expr> {
        let Some((&i, rest)) = path.split_first() else {
            return f(SubRef::Cmd(c));
        };
        if i != 0 {
            return None;
        }
        let body = go_t(&c.body, rest, f)?.into_term()?;
        Some(Expr::Cmd(Command { name: c.name.clone(), body }))
    }
    match e {
        Expr::Term(t) => go_t(t, path, f),
        Expr::Cmd(c) => go_c(c, path, f),
    }
}

/// Contracts a redex in isolation, given as the subexpression itself.
fn contract_here(s: SubRef<'_>, rule: RedexRule, supply: Option<&mut NameSupply>) -> Option<Expr> {
    match (s, rule) {
        (SubRef::Term(Term::App(f, n)), RedexRule::Beta) => {
            let Term::Lam(x, m) = f.as_ref() else { return None };
            Some(Expr::Term(match supply {
                Some(s) => subst_term_hygienic(m, x, n, s),
                None => subst_term(m, x, n),
            }))
        }
        (SubRef::Term(Term::App(f, n)), RedexRule::MuApp) => {
            let Term::Mu(a, c) = f.as_ref() else { return None };
            let c = Expr::Cmd((**c).clone());
            let r = match supply {
                Some(s) => struct_subst_hygienic(&c, a, n, s),
                None => struct_subst(&c, a, n),
            };
            Some(Expr::Term(Term::Mu(a.clone(), Box::new(r.as_cmd()?.clone()))))
        }
        (SubRef::Cmd(c), RedexRule::Rename) => {
            let Term::Mu(b, inner) = &c.body else { return None };
            Some(rename_name(&Expr::Cmd((**inner).clone()), &c.name, b))
        }
        _ => None,
    }
}

/// The rule's right-hand side at `site`, context unchanged.
pub fn contract(e: &Expr, site: &RedexSite) -> Result<Expr, ReductionError> {
    replace_at(e, &site.path, &mut |s| contract_here(s, site.rule, None)).ok_or_else(|| {
        ReductionError::InvalidSite { path: site.path.clone(), rule: site.rule }
    })
}

/// Like [`contract`], but every duplicated copy of the argument receives
/// fresh binders, so a well-named input yields a well-named, α-equivalent
/// result. Used by the certification pipeline.
pub fn contract_hygienic(e: &Expr, site: &RedexSite) -> Result<Expr, ReductionError> {
    let mut supply = NameSupply::from_expr(e);
    replace_at(e, &site.path, &mut |s| contract_here(s, site.rule, Some(&mut supply))).ok_or_else(
        || ReductionError::InvalidSite { path: site.path.clone(), rule: site.rule },
    )
}

fn first_site(e: &Expr, include_rename: bool) -> Option<RedexSite> {
    redexes(e).into_iter().find(|s| include_rename || s.rule != RedexRule::Rename)
}

/// Contracts the leftmost-outermost β/μ redex (and Rename redexes when
/// `include_rename` is set).
pub fn lo_step(m: &Term, include_rename: bool) -> Option<(Term, RedexSite)> {
    let e = Expr::Term(m.clone());
    let site = first_site(&e, include_rename)?;
    let r = contract(&e, &site).ok()?;
    Some((r.as_term()?.clone(), site))
}

/// Leftmost-outermost β/μ step with hygienic copies.
pub fn lo_step_hygienic(m: &Term) -> Option<(Term, RedexSite)> {
    let e = Expr::Term(m.clone());
    let site = first_site(&e, false)?;
    let r = contract_hygienic(&e, &site).ok()?;
    Some((r.as_term()?.clone(), site))
}

/// All one-step reducts, in redex order.
pub fn reducts(e: &Expr, include_rename: bool) -> Vec<(Expr, RedexSite)> {
    redexes(e)
        .into_iter()
        .filter(|s| include_rename || s.rule != RedexRule::Rename)
        .filter_map(|s| contract(e, &s).ok().map(|r| (r, s)))
        .collect()
}

pub fn is_normal(e: &Expr, include_rename: bool) -> bool {
    first_site(e, include_rename).is_none()
}

/// Reduces to normal form under `strategy`; returns the normal form and the
/// number of steps taken.
pub fn normalize(m: &Term, strategy: Strategy, fuel: usize) -> Result<(Term, usize), ReductionError> {
    let include_rename = strategy == Strategy::Full;
    let mut cur = m.clone();
    for steps in 0..=fuel {
        match lo_step(&cur, include_rename) {
            None => return Ok((cur, steps)),
            Some((next, _)) if steps < fuel => cur = next,
            Some(_) => break,
        }
    }
    Err(ReductionError::FuelExhausted { last: cur, steps: fuel })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SnStatus {
    SN,
    NotSN,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct SnVerdict {
    pub status: SnStatus,
    /// Distinct terms (up to α) visited.
    pub steps_explored: usize,
    /// For NotSN, the terms of a reachable cycle; for Unknown, a sample of
    /// the unexplored frontier.
    pub witness: Vec<String>,
}

/// Exhaustive search of the reduction graph with α-equivalence hashing.
/// A reachable cycle gives NotSN; an exhausted graph gives SN; reaching the
/// node budget or a term larger than [`MAX_TERM_SIZE`] gives Unknown.
pub fn is_sn(m: &Term, node_budget: usize, include_rename: bool) -> SnVerdict {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    let root = Expr::Term(m.clone());
    let mut marks: HashMap<NExpr, Mark> = HashMap::new();
    // Each frame: the expression, its key and the reducts still to visit.
    let mut stack: Vec<(Expr, NExpr, Vec<Expr>)> = Vec::new();
    let key = nameless::expr(&root);
    marks.insert(key.clone(), Mark::Open);
    let succ = |e: &Expr| reducts(e, include_rename).into_iter().map(|(r, _)| r).collect::<Vec<_>>();
    stack.push((root.clone(), key, succ(&root)));
    while let Some(frame) = stack.last_mut() {
        let Some(next) = frame.2.pop() else {
            let (_, k, _) = stack.pop().expect("non-empty stack");
            marks.insert(k, Mark::Done);
            continue;
        };
        let k = nameless::expr(&next);
        match marks.get(&k) {
            Some(Mark::Done) => continue,
            Some(Mark::Open) => {
                let start = stack.iter().position(|(_, fk, _)| *fk == k).unwrap_or(0);
                let witness = stack[start..].iter().map(|(e, _, _)| e.to_string()).collect();
                return SnVerdict { status: SnStatus::NotSN, steps_explored: marks.len(), witness };
            }
            None => {
                if marks.len() >= node_budget || next.size() > MAX_TERM_SIZE {
                    let witness = stack.iter().rev().take(3).map(|(e, _, _)| e.to_string()).collect();
                    return SnVerdict { status: SnStatus::Unknown, steps_explored: marks.len(), witness };
                }
                marks.insert(k.clone(), Mark::Open);
                let rs = succ(&next);
                stack.push((next, k, rs));
            }
        }
    }
    SnVerdict { status: SnStatus::SN, steps_explored: marks.len(), witness: Vec::new() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Tri {
    True,
    False,
    Unknown,
}

/// Searches for a common reduct of `m` and `n`, exploring at most `fuel`
/// terms on each side. Distinct normal forms, or two exhausted reduction
/// graphs without a meeting point, give `False` by confluence.
pub fn convertible(m: &Term, n: &Term, fuel: usize) -> Tri {
    struct Side {
        seen: HashSet<NExpr>,
        queue: VecDeque<Expr>,
        normal: Option<NExpr>,
    }
    let start = |t: &Term| {
        let e = Expr::Term(t.clone());
        let mut seen = HashSet::new();
        seen.insert(nameless::expr(&e));
        Side { seen, queue: VecDeque::from([e]), normal: None }
    };
    let mut sides = [start(m), start(n)];
    if !sides[0].seen.is_disjoint(&sides[1].seen) {
        return Tri::True;
    }
    loop {
        for i in 0..2 {
            let Some(e) = sides[i].queue.pop_front() else { continue };
            let rs = reducts(&e, true);
            if rs.is_empty() {
                sides[i].normal = Some(nameless::expr(&e));
            }
            for (r, _) in rs {
                let k = nameless::expr(&r);
                if sides[1 - i].seen.contains(&k) {
                    return Tri::True;
                }
                if sides[i].seen.len() < fuel && sides[i].seen.insert(k) {
                    sides[i].queue.push_back(r);
                }
            }
        }
        if let (Some(a), Some(b)) = (&sides[0].normal, &sides[1].normal) {
            if a != b {
                return Tri::False;
            }
        }
        let exhausted = sides.iter().all(|s| s.queue.is_empty());
        if exhausted {
            let capped = sides.iter().any(|s| s.seen.len() >= fuel);
            return if capped { Tri::Unknown } else { Tri::False };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_expr, parse_term};

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn e(s: &str) -> Expr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn redex_listing() {
        let r = redexes(&e("(\\x.x) y"));
        assert_eq!(r, vec![RedexSite { path: vec![], rule: RedexRule::Beta }]);
        let r = redexes(&e("(mu a.[a] x) x"));
        assert_eq!(r, vec![RedexSite { path: vec![], rule: RedexRule::MuApp }]);
        assert!(redexes(&e("x")).is_empty());
        let r = redexes(&e("(\\x.x) ((\\y.y) z)"));
        assert_eq!(r.len(), 2);
        assert_eq!(r[1].path, vec![1]);
    }

    #[test]
    fn contraction() {
        let root = |rule| RedexSite { path: vec![], rule };
        assert_eq!(contract(&e("(\\x.x) y"), &root(RedexRule::Beta)).unwrap(), e("y"));
        assert_eq!(contract(&e("(mu a.[a] x) x"), &root(RedexRule::MuApp)).unwrap(), e("mu a.[a] x x"));
        assert_eq!(contract(&e("[a] mu b.[b] x"), &root(RedexRule::Rename)).unwrap(), e("[a] x"));
        assert!(contract(&e("x"), &root(RedexRule::Beta)).is_err());
    }

    #[test]
    fn leftmost_outermost_steps() {
        assert_eq!(lo_step(&t("(\\x.x) ((\\y.y) z)"), false).unwrap().0, t("(\\y.y) z"));
        assert!(lo_step(&t("\\b.\\a.a"), false).is_none());
        assert_eq!(lo_step(&t("x ((\\y.y) z)"), false).unwrap().0, t("x z"));
        // Rename sites are skipped unless requested.
        let m = t("mu a.[a] mu b.[b] x");
        assert!(lo_step(&m, false).is_none());
        assert_eq!(lo_step(&m, true).unwrap().0, t("mu a.[a] x"));
    }

    #[test]
    fn normalisation() {
        let (nf, steps) = normalize(&t("(\\x y z. x z (y z)) (\\a b. a)"), Strategy::Lo, 100).unwrap();
        assert!(nameless::alpha_eq_terms(&nf, &t("\\b a. a")));
        assert!(steps > 0);
        let omega = t("(\\x. x x) (\\x. x x)");
        assert!(matches!(normalize(&omega, Strategy::Lo, 50), Err(ReductionError::FuelExhausted { .. })));
        assert_eq!(normalize(&t("y"), Strategy::Lo, 10).unwrap(), (t("y"), 0));
    }

    #[test]
    fn sn_probe() {
        assert_eq!(is_sn(&t("\\x.x"), 100, false).status, SnStatus::SN);
        assert_eq!(is_sn(&t("(\\x. x x) (\\x. x x)"), 100, false).status, SnStatus::NotSN);
        assert_eq!(is_sn(&t("(\\x y z. x z (y z)) (\\a b. a)"), 1000, false).status, SnStatus::SN);
        assert_eq!(is_sn(&t("(\\x. x x x) (\\x. x x x)"), 50, false).status, SnStatus::Unknown);
    }

    #[test]
    fn convertibility() {
        assert_eq!(convertible(&t("(\\x.x) y"), &t("y"), 100), Tri::True);
        assert_eq!(convertible(&t("x"), &t("y"), 100), Tri::False);
        assert_eq!(convertible(&t("(mu a.[a] x) x"), &t("mu a.[a] x x"), 100), Tri::True);
    }

    #[test]
    fn hygienic_contraction_is_alpha_equal() {
        let m = e("(\\f. f (f a)) (\\y. \\w. y)");
        let site = RedexSite { path: vec![], rule: RedexRule::Beta };
        let plain = contract(&m, &site).unwrap();
        let hyg = contract_hygienic(&m, &site).unwrap();
        assert!(nameless::alpha_eq(&plain, &hyg));
        assert!(hyg.is_well_named());
    }
}
