//! Random well-named derivations of bounded size.

use super::{Assumptions, Formula, SimpleDerivation, SimpleJudgement, SimpleRule};
use crate::syntax::{Command, Term};
use rand::seq::SliceRandom;
use rand::Rng;

struct Gen<'r, R: Rng> {
    rng: &'r mut R,
    next: usize,
    free_vars: Assumptions,
    free_names: Assumptions,
}

impl<R: Rng> Gen<'_, R> {
    fn fresh(&mut self, prefix: &str) -> String {
        self.next += 1;
        format!("{prefix}{}", self.next)
    }

    fn formula(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.5) {
            Formula::atom(["A", "B", "C"].choose(self.rng).expect("non-empty"))
        } else {
            Formula::imp(self.formula(depth - 1), self.formula(depth - 1))
        }
    }

    fn leaf(&mut self, pi: &Assumptions, sigma: &Assumptions, ty: &Formula) -> SimpleDerivation {
        let known: Vec<&String> = pi.iter().filter(|(_, f)| *f == ty).map(|(x, _)| x).collect();
        let x = match known.choose(self.rng) {
            Some(x) => (*x).clone(),
            None => {
                let z = self.fresh("z");
                self.free_vars.insert(z.clone(), ty.clone());
                z
            }
        };
        let mut pi = pi.clone();
        pi.insert(x.clone(), ty.clone());
        SimpleDerivation::new(SimpleRule::Ax, SimpleJudgement::new(pi, Term::Var(x), ty.clone(), sigma.clone()), vec![])
    }

    /// A derivation of at most `budget` nodes concluding `ty`.
    fn derive(&mut self, pi: &Assumptions, sigma: &Assumptions, ty: &Formula, budget: usize) -> SimpleDerivation {
        let j = |subject: Term, sigma: &Assumptions| SimpleJudgement::new(pi.clone(), subject, ty.clone(), sigma.clone());
        let choice = if budget <= 1 { 0 } else { self.rng.gen_range(0..5) };
        match (choice, ty) {
            (1, Formula::Impl(a, b)) => {
                let x = self.fresh("x");
                let mut inner = pi.clone();
                inner.insert(x.clone(), (**a).clone());
                let body = self.derive(&inner, sigma, b, budget - 1);
                let subject = Term::Lam(x, Box::new(body.conclusion.subject.clone()));
                SimpleDerivation::new(SimpleRule::ArrI, j(subject, sigma), vec![body])
            }
            (2, _) if budget >= 3 => {
                let a = self.formula(1);
                let left = self.rng.gen_range(1..budget - 1);
                let f = self.derive(pi, sigma, &Formula::imp(a.clone(), ty.clone()), left);
                let arg = self.derive(pi, sigma, &a, budget - 1 - left);
                let subject = Term::app(f.conclusion.subject.clone(), arg.conclusion.subject.clone());
                SimpleDerivation::new(SimpleRule::ArrE, j(subject, sigma), vec![f, arg])
            }
            (3, _) => {
                let alpha = self.fresh("a");
                let mut inner = sigma.clone();
                inner.insert(alpha.clone(), ty.clone());
                let body = self.derive(pi, &inner, ty, budget - 1);
                let subject = Term::mu(&alpha, Command::new(&alpha, body.conclusion.subject.clone()));
                SimpleDerivation::new(SimpleRule::Mu1, j(subject, sigma), vec![body])
            }
            (4, _) => {
                let alpha = self.fresh("a");
                let (beta, b) = match sigma.iter().collect::<Vec<_>>().choose(self.rng) {
                    Some((beta, b)) => ((*beta).clone(), (*b).clone()),
                    None => {
                        let beta = self.fresh("n");
                        let b = self.formula(1);
                        self.free_names.insert(beta.clone(), b.clone());
                        (beta, b)
                    }
                };
                let mut outer = sigma.clone();
                outer.insert(beta.clone(), b.clone());
                let mut inner = outer.clone();
                inner.insert(alpha.clone(), ty.clone());
                let body = self.derive(pi, &inner, &b, budget - 1);
                let subject = Term::mu(&alpha, Command::new(&beta, body.conclusion.subject.clone()));
                SimpleDerivation::new(SimpleRule::Mu2, j(subject, &outer), vec![body])
            }
            _ => self.leaf(pi, sigma, ty),
        }
    }
}

/// Adds the free variables and names to every judgement.
fn close(d: &mut SimpleDerivation, vars: &Assumptions, names: &Assumptions) {
    for (x, f) in vars {
        d.conclusion.pi.entry(x.clone()).or_insert_with(|| f.clone());
    }
    for (a, f) in names {
        d.conclusion.sigma.entry(a.clone()).or_insert_with(|| f.clone());
    }
    for p in &mut d.premises {
        close(p, vars, names);
    }
}

/// A random checked derivation with at most `max_nodes` nodes. Binders are
/// pairwise distinct and distinct from the free variables and names.
pub fn random_derivation<R: Rng>(rng: &mut R, max_nodes: usize) -> SimpleDerivation {
    let mut g = Gen { rng, next: 0, free_vars: Assumptions::new(), free_names: Assumptions::new() };
    let ty = g.formula(2);
    let budget = g.rng.gen_range(1..=max_nodes.max(1));
    let mut d = g.derive(&Assumptions::new(), &Assumptions::new(), &ty, budget);
    let (vars, names) = (g.free_vars, g.free_names);
    close(&mut d, &vars, &names);
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parigot::check_simple;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_derivations_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let d = random_derivation(&mut rng, 12);
            assert!(d.node_count() <= 12);
            check_simple(&d).unwrap_or_else(|v| panic!("{v}: {}", d.to_json_string()));
            assert!(d.conclusion.subject.is_well_named());
        }
    }
}
