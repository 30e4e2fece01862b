//! Parigot's simply typed λμ-calculus: derivations, their checker, and the
//! translation into the restricted intersection type system.

mod formula;
mod gen;
mod translate;

pub use formula::{parse_formula, Formula, FormulaError};
pub use gen::random_derivation;
pub use translate::{translate_c, translate_d, translate_derivation, Encoding};

use crate::syntax::{parse_term, Term};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Variables to formulas.
pub type Assumptions = BTreeMap<String, Formula>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SimpleRule {
    Ax,
    ArrI,
    ArrE,
    Mu1,
    Mu2,
}

/// `Π ⊢ M : A | Σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleJudgement {
    pub pi: Assumptions,
    pub subject: Term,
    pub ty: Formula,
    pub sigma: Assumptions,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleDerivation {
    pub rule: SimpleRule,
    pub conclusion: SimpleJudgement,
    pub premises: Vec<SimpleDerivation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("violation at {path:?} ({rule:?}): {reason}")]
pub struct SimpleViolation {
    pub path: Vec<usize>,
    pub rule: SimpleRule,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParigotError {
    #[error("{0}")]
    Formula(#[from] FormulaError),
    #[error("{0}")]
    Format(String),
    #[error("{0}")]
    Violation(#[from] SimpleViolation),
}

impl SimpleJudgement {
    pub fn new(pi: Assumptions, subject: Term, ty: Formula, sigma: Assumptions) -> SimpleJudgement {
        SimpleJudgement { pi, subject, ty, sigma }
    }
}

impl fmt::Display for SimpleJudgement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |m: &Assumptions| m.iter().map(|(k, t)| format!("{k}: {t}")).collect::<Vec<_>>().join(", ");
        write!(f, "{} |- {} : {} | {}", show(&self.pi), self.subject, self.ty, show(&self.sigma))
    }
}

impl SimpleDerivation {
    pub fn new(rule: SimpleRule, conclusion: SimpleJudgement, premises: Vec<SimpleDerivation>) -> SimpleDerivation {
        SimpleDerivation { rule, conclusion, premises }
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(SimpleDerivation::node_count).sum::<usize>()
    }

    /// Number of `(μ1)` and `(μ2)` nodes.
    pub fn mu_count(&self) -> usize {
        usize::from(matches!(self.rule, SimpleRule::Mu1 | SimpleRule::Mu2))
            + self.premises.iter().map(SimpleDerivation::mu_count).sum::<usize>()
    }
}

/// Checks every node against the five rules.
pub fn check_simple(d: &SimpleDerivation) -> Result<(), SimpleViolation> {
    fn go(d: &SimpleDerivation, path: &mut Vec<usize>) -> Result<(), SimpleViolation> {
        node(d).map_err(|reason| SimpleViolation { path: path.clone(), rule: d.rule, reason })?;
        for (i, p) in d.premises.iter().enumerate() {
            path.push(i);
            go(p, path)?;
            path.pop();
        }
        Ok(())
    }
    go(d, &mut Vec::new())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn with(m: &Assumptions, k: &str, f: &Formula) -> Assumptions {
    let mut m = m.clone();
    m.insert(k.to_string(), f.clone());
    m
}

fn node(d: &SimpleDerivation) -> Result<(), String> {
    let c = &d.conclusion;
    let arity = |n: usize| ensure(d.premises.len() == n, || format!("expected {n} premise(s), found {}", d.premises.len()));
    let prem = |i: usize| &d.premises[i].conclusion;
    match d.rule {
        SimpleRule::Ax => {
            arity(0)?;
            let Term::Var(x) = &c.subject else { return Err("subject is not a variable".into()) };
            ensure(c.pi.get(x) == Some(&c.ty), || format!("{x}: {} is not an assumption", c.ty))
        }
        SimpleRule::ArrI => {
            arity(1)?;
            let Term::Lam(x, body) = &c.subject else { return Err("subject is not an abstraction".into()) };
            let Formula::Impl(a, b) = &c.ty else { return Err("type is not an implication".into()) };
            let p = prem(0);
            ensure(!c.pi.contains_key(x), || format!("{x} is already assumed"))?;
            ensure(p.subject == **body, || "premise subject is not the body".into())?;
            ensure(p.ty == **b, || "premise type is not the consequent".into())?;
            ensure(p.pi == with(&c.pi, x, a), || format!("premise assumptions are not the conclusion's with {x}: {a}"))?;
            ensure(p.sigma == c.sigma, || "premise and conclusion names differ".into())
        }
        SimpleRule::ArrE => {
            arity(2)?;
            let Term::App(m, n) = &c.subject else { return Err("subject is not an application".into()) };
            let (f, a) = (prem(0), prem(1));
            ensure(f.subject == **m && a.subject == **n, || "premise subjects do not match".into())?;
            ensure(f.ty == Formula::imp(a.ty.clone(), c.ty.clone()), || {
                format!("function type `{}` does not match `{} -> {}`", f.ty, a.ty, c.ty)
            })?;
            for p in [f, a] {
                ensure(p.pi == c.pi && p.sigma == c.sigma, || "premise environments differ".into())?;
            }
            Ok(())
        }
        SimpleRule::Mu1 | SimpleRule::Mu2 => {
            arity(1)?;
            let Term::Mu(alpha, cmd) = &c.subject else { return Err("subject is not a μ-abstraction".into()) };
            let p = prem(0);
            ensure(p.subject == cmd.body, || "premise subject is not the command body".into())?;
            ensure(p.pi == c.pi, || "premise and conclusion assumptions differ".into())?;
            ensure(!c.sigma.contains_key(alpha), || format!("{alpha} is already a name"))?;
            let mut sigma = with(&c.sigma, alpha, &c.ty);
            if d.rule == SimpleRule::Mu1 {
                ensure(cmd.name == *alpha, || "(μ1) needs the command to name the bound μ".into())?;
                ensure(p.ty == c.ty, || "premise type differs".into())?;
            } else {
                ensure(cmd.name != *alpha, || "(μ2) needs a command naming a different μ".into())?;
                ensure(c.sigma.get(&cmd.name) == Some(&p.ty), || format!("{}: {} is not a name", cmd.name, p.ty))?;
                sigma.insert(cmd.name.clone(), p.ty.clone());
            }
            ensure(p.sigma == sigma, || format!("premise names are not the conclusion's with {alpha}: {}", c.ty))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleJudgementJson {
    #[serde(default)]
    pub basis: BTreeMap<String, String>,
    pub subject: String,
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(default)]
    pub context: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleDerivationJson {
    pub rule: SimpleRule,
    pub judgement: SimpleJudgementJson,
    #[serde(default)]
    pub premises: Vec<SimpleDerivationJson>,
}

fn map_to(m: &Assumptions) -> BTreeMap<String, String> {
    m.iter().map(|(k, f)| (k.clone(), f.to_string())).collect()
}

fn map_from(m: &BTreeMap<String, String>) -> Result<Assumptions, ParigotError> {
    m.iter().map(|(k, f)| Ok((k.clone(), parse_formula(f)?))).collect()
}

impl SimpleDerivation {
    pub fn to_json(&self) -> SimpleDerivationJson {
        let c = &self.conclusion;
        SimpleDerivationJson {
            rule: self.rule,
            judgement: SimpleJudgementJson {
                basis: map_to(&c.pi),
                subject: c.subject.to_string(),
                ty: c.ty.to_string(),
                context: map_to(&c.sigma),
            },
            premises: self.premises.iter().map(SimpleDerivation::to_json).collect(),
        }
    }

    pub fn from_json(j: &SimpleDerivationJson) -> Result<SimpleDerivation, ParigotError> {
        let jj = &j.judgement;
        let subject = parse_term(&jj.subject).map_err(|e| ParigotError::Format(format!("subject `{}`: {e}", jj.subject)))?;
        let conclusion = SimpleJudgement::new(map_from(&jj.basis)?, subject, parse_formula(&jj.ty)?, map_from(&jj.context)?);
        let premises = j.premises.iter().map(SimpleDerivation::from_json).collect::<Result<_, _>>()?;
        Ok(SimpleDerivation { rule: j.rule, conclusion, premises })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("derivations serialise")
    }

    pub fn from_json_str(s: &str) -> Result<SimpleDerivation, ParigotError> {
        let j: SimpleDerivationJson = serde_json::from_str(s).map_err(|e| ParigotError::Format(format!("derivation JSON: {e}")))?;
        SimpleDerivation::from_json(&j)
    }
}

/// The proof of Peirce's law `((A -> B) -> A) -> A` by
/// `λx.μα.[α](x(λy.μβ.[α]y))`.
pub fn peirce() -> SimpleDerivation {
    use SimpleRule::*;
    let f = |s: &str| parse_formula(s).expect("fixed formula");
    let t = |s: &str| parse_term(s).expect("fixed term");
    let (a, b, ab, hyp) = (f("A"), f("B"), f("A -> B"), f("(A -> B) -> A"));
    let pi = Assumptions::from([("x".to_string(), hyp.clone())]);
    let pi_y = with(&pi, "y", &a);
    let sa = Assumptions::from([("a".to_string(), a.clone())]);
    let sab = with(&sa, "b", &b);
    let j = |pi: &Assumptions, m: &str, ty: &Formula, sigma: &Assumptions| SimpleJudgement::new(pi.clone(), t(m), ty.clone(), sigma.clone());
    let y = SimpleDerivation::new(Ax, j(&pi_y, "y", &a, &sab), vec![]);
    let mu_b = SimpleDerivation::new(Mu2, j(&pi_y, "mu b.[a] y", &b, &sa), vec![y]);
    let lam_y = SimpleDerivation::new(ArrI, j(&pi, "\\y. mu b.[a] y", &ab, &sa), vec![mu_b]);
    let x = SimpleDerivation::new(Ax, j(&pi, "x", &hyp, &sa), vec![]);
    let app = SimpleDerivation::new(ArrE, j(&pi, "x (\\y. mu b.[a] y)", &a, &sa), vec![x, lam_y]);
    let empty = Assumptions::new();
    let mu_a = SimpleDerivation::new(Mu1, j(&pi, "mu a.[a] x (\\y. mu b.[a] y)", &a, &empty), vec![app]);
    let ty = f("((A -> B) -> A) -> A");
    SimpleDerivation::new(ArrI, j(&empty, "\\x. mu a.[a] x (\\y. mu b.[a] y)", &ty, &empty), vec![mu_a])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peirce_checks() {
        let d = peirce();
        check_simple(&d).unwrap();
        assert_eq!(d.node_count(), 7);
        assert_eq!(d.mu_count(), 2);
    }

    #[test]
    fn bad_nodes_are_reported() {
        let mut d = peirce();
        d.premises[0].premises[0].premises[0].conclusion.pi.clear();
        let v = check_simple(&d).unwrap_err();
        assert_eq!(v.path, vec![0, 0]);
        let mut e = peirce();
        e.premises[0].premises[0].premises[1].conclusion.ty = Formula::atom("B");
        assert!(check_simple(&e).is_err());
    }

    #[test]
    fn json_round_trip() {
        let d = peirce();
        assert_eq!(SimpleDerivation::from_json_str(&d.to_json_string()).unwrap(), d);
    }
}
