//! Restricted typing of strongly normalising terms: reduce leftmost-outermost
//! to normal form, type the normal form, then expand back along the path.

use super::expand::lo_expand_typing;
use super::strict::{emit, Typing};
use super::synth::synth_nf_typing;
use super::{check_derivation, Derivation, Mode};
use crate::reduction::{lo_step_hygienic, MAX_TERM_SIZE, subexpr, RedexSite, SubRef};
use crate::syntax::{well_name, Expr, Term};
use crate::types::Lattice;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotTypeable {
    /// The reduction budget ran out, either in steps or in term size.
    #[error("fuel exhausted after {steps} reduction steps (term size {size})")]
    Fuel { steps: usize, size: usize },
    /// The construction failed; never expected for a normalising term.
    #[error("construction failed: {0}")]
    Structural(String),
}

/// Runs the pipeline with one step budget shared by all recursive calls,
/// remembering the typings of redex arguments.
pub struct SnTyper {
    fuel: usize,
    steps: usize,
    memo: HashMap<Term, Typing>,
}

impl SnTyper {
    pub fn new(fuel: usize) -> SnTyper {
        SnTyper { fuel, steps: 0, memo: HashMap::new() }
    }

    /// Reduction steps spent so far.
    pub fn steps(&self) -> usize {
        self.steps
    }

    /// A restricted certificate for the well-named variant of `m`.
    pub fn certify(&mut self, m: &Term) -> Result<Derivation, NotTypeable> {
        let m = match well_name(&Expr::Term(m.clone())) {
            Expr::Term(t) => t,
            Expr::Cmd(_) => unreachable!("renaming keeps the sort"),
        };
        let t = self.typing(&m)?;
        let d = emit(&t, &Expr::Term(m)).map_err(|e| NotTypeable::Structural(e.to_string()))?;
        check_derivation(&d, Mode::Restricted, &Lattice::two_point()).map_err(|v| NotTypeable::Structural(v.to_string()))?;
        Ok(d)
    }

    /// A restricted typing of a well-named term.
    pub fn typing(&mut self, m: &Term) -> Result<Typing, NotTypeable> {
        if let Some(t) = self.memo.get(m) {
            return Ok(t.clone());
        }
        let mut path: Vec<(Term, RedexSite)> = Vec::new();
        let mut cur = m.clone();
        while let Some((next, site)) = lo_step_hygienic(&cur) {
            self.steps += 1;
            if self.steps > self.fuel || next.size() > MAX_TERM_SIZE {
                return Err(NotTypeable::Fuel { steps: self.steps, size: next.size() });
            }
            path.push((std::mem::replace(&mut cur, next), site));
        }
        let structural = |e: super::TypingError| NotTypeable::Structural(e.to_string());
        let mut t = synth_nf_typing(&cur).map_err(structural)?;
        for (term, site) in path.iter().rev() {
            let q = self.typing(&redex_argument(term, site)?)?;
            t = lo_expand_typing(term, site, &t, Some(&q)).map_err(structural)?;
        }
        self.memo.insert(m.clone(), t.clone());
        Ok(t)
    }
}

fn redex_argument(m: &Term, site: &RedexSite) -> Result<Term, NotTypeable> {
    let e = Expr::Term(m.clone());
    match subexpr(&e, &site.path) {
        Some(SubRef::Term(Term::App(_, q))) => Ok((**q).clone()),
        _ => Err(NotTypeable::Structural(format!("no redex at {site} in `{m}`"))),
    }
}

/// A restricted certificate for (the well-named variant of) `m`, when `m`
/// normalises within `fuel` leftmost-outermost steps, counted across the
/// whole construction.
pub fn type_sn(m: &Term, fuel: usize) -> Result<Derivation, NotTypeable> {
    SnTyper::new(fuel).certify(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::DEFAULT_FUEL;
    use crate::syntax::parse_term;

    fn certify(src: &str) -> Derivation {
        type_sn(&parse_term(src).unwrap(), DEFAULT_FUEL).unwrap_or_else(|e| panic!("{src}: {e}"))
    }

    #[test]
    fn normal_forms() {
        assert_eq!(certify("\\x. x").conclusion.ty.to_string(), "(w -> psi) * w -> psi");
    }

    #[test]
    fn redexes_expand() {
        for src in [
            "(\\x. x) y",
            "(\\x. y) z",
            "(\\x. x x) y",
            "(\\x y z. x z (y z)) (\\a b. a)",
            "(mu a.[a] x) x",
            "(mu a.[b] x) y",
            "(mu a.[a] \\y. y) z w",
            "z ((\\x. x) y) ((\\x. x x) w)",
            "\\f. (\\x. f x) ((\\y. y) f)",
            "mu a.[a] (\\x. mu b.[a] x) y",
            "(\\x. x x) (\\y. y)",
            "(\\x. \\y. x) ((\\z. z z) (\\z. z))",
            "(mu a.[a] (mu b.[a] x)) y z",
        ] {
            certify(src);
        }
    }

    #[test]
    fn non_normalising_terms_run_out_of_fuel() {
        let r = type_sn(&parse_term("(\\x. x x) (\\x. x x)").unwrap(), 200);
        assert!(matches!(r, Err(NotTypeable::Fuel { .. })));
        let erased = type_sn(&parse_term("(\\x y. y) ((\\x. x x) (\\x. x x))").unwrap(), 200);
        assert!(matches!(erased, Err(NotTypeable::Fuel { .. })));
    }
}
