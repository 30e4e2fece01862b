//! Exhaustive enumeration of small terms, one per α-class.

use super::{Command, Term};

/// All terms of exactly `size` nodes whose free variables are among the
/// first `vars` of `x0, x1, …` and free names among the first `names` of
/// `a0, a1, …`. Binders take the next unused index, so each α-class
/// appears once.
pub fn terms_of_size(size: usize, vars: usize, names: usize) -> Vec<Term> {
    let mut out = Vec::new();
    match size {
        0 => {}
        1 => out.extend((0..vars).map(|i| Term::Var(format!("x{i}")))),
        _ => {
            let x = format!("x{vars}");
            out.extend(terms_of_size(size - 1, vars + 1, names).into_iter().map(|b| Term::lam(&x, b)));
            for left in 1..size - 1 {
                let fs = terms_of_size(left, vars, names);
                if fs.is_empty() {
                    continue;
                }
                let args = terms_of_size(size - 1 - left, vars, names);
                for f in &fs {
                    out.extend(args.iter().map(|a| Term::app(f.clone(), a.clone())));
                }
            }
            if size >= 3 {
                let a = format!("a{names}");
                for body in terms_of_size(size - 2, vars, names + 1) {
                    for j in 0..=names {
                        out.push(Term::mu(&a, Command::new(&format!("a{j}"), body.clone())));
                    }
                }
            }
        }
    }
    out
}

/// All closed terms (no free variables or names) of at most `max_size`
/// nodes, smallest first.
pub fn closed_terms(max_size: usize) -> Vec<Term> {
    (1..=max_size).flat_map(|n| terms_of_size(n, 0, 0)).collect()
}
