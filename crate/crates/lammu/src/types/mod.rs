//! Three-sorted intersection types over a finite result lattice, the
//! restricted sublanguage, canonical forms and subtyping.

mod canon;
mod lattice;
mod leq;
mod parse;
mod print;

pub use canon::{canon_c, canon_d, canon_r, CanonC, CanonD};
pub use lattice::Lattice;
pub use leq::{equiv, leq, leq_c, leq_d, leq_restricted};
pub use parse::{parse_any, parse_type};

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    R,
    D,
    C,
}

impl std::str::FromStr for Sort {
    type Err = String;
    fn from_str(s: &str) -> Result<Sort, String> {
        match s {
            "R" | "r" => Ok(Sort::R),
            "D" | "d" => Ok(Sort::D),
            "C" | "c" => Ok(Sort::C),
            _ => Err(format!("unknown sort `{s}` (expected R, D or C)")),
        }
    }
}

/// A type. Sorts are not stored: `ω` and `∧` are shared by all sorts and an
/// atom used at sort D stands for `ω → ψ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Omega,
    /// `psi` (no atom) is the lattice top; `psi_a` names element `a`.
    Psi(Option<String>),
    Inter(Box<Type>, Box<Type>),
    Arrow(Box<Type>, Box<Type>),
    Prod(Box<Type>, Box<Type>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("type syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("sort error: `{ty}` is not of sort {sort:?}")]
    Sort { ty: String, sort: Sort },
    #[error("unknown lattice element `{0}`")]
    UnknownAtom(String),
    #[error("`{0}` is not a restricted type")]
    NotRestricted(String),
    #[error("invalid lattice: {0}")]
    Lattice(String),
}

impl Type {
    pub fn psi() -> Type {
        Type::Psi(None)
    }

    pub fn atom(a: &str) -> Type {
        Type::Psi(Some(a.to_string()))
    }

    pub fn inter(a: Type, b: Type) -> Type {
        Type::Inter(Box::new(a), Box::new(b))
    }

    pub fn arrow(k: Type, r: Type) -> Type {
        Type::Arrow(Box::new(k), Box::new(r))
    }

    pub fn prod(d: Type, k: Type) -> Type {
        Type::Prod(Box::new(d), Box::new(k))
    }

    /// `δ1 × … × δn × tail`.
    pub fn chain(heads: impl IntoIterator<Item = Type>, tail: Type) -> Type {
        let heads: Vec<Type> = heads.into_iter().collect();
        heads.into_iter().rev().fold(tail, |k, d| Type::prod(d, k))
    }

    /// Right-nested meet; the empty meet is `ω`.
    pub fn meet_all(ts: impl IntoIterator<Item = Type>) -> Type {
        let mut ts: Vec<Type> = ts.into_iter().collect();
        let Some(mut acc) = ts.pop() else { return Type::Omega };
        while let Some(t) = ts.pop() {
            acc = Type::inter(t, acc);
        }
        acc
    }

    /// Top-level ∧-conjuncts, left to right.
    pub fn conjuncts(&self) -> Vec<&Type> {
        let mut out = Vec::new();
        fn go<'a>(t: &'a Type, out: &mut Vec<&'a Type>) {
            match t {
                Type::Inter(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                _ => out.push(t),
            }
        }
        go(self, &mut out);
        out
    }

    pub fn size(&self) -> usize {
        match self {
            Type::Omega | Type::Psi(_) => 1,
            Type::Inter(a, b) | Type::Arrow(a, b) | Type::Prod(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Type::Omega | Type::Psi(_) => 0,
            Type::Inter(a, b) => a.rank().max(b.rank()),
            Type::Prod(d, k) => d.rank().max(k.rank()) + 1,
            Type::Arrow(k, _) => k.rank() + 1,
        }
    }

    /// Length of a restricted continuation type.
    pub fn length_c(&self) -> Result<usize, TypeError> {
        if !is_restricted(self, Sort::C) {
            return Err(TypeError::NotRestricted(self.to_string()));
        }
        fn go(t: &Type) -> usize {
            match t {
                Type::Prod(_, k) => 1 + go(k),
                Type::Inter(a, b) => go(a).max(go(b)),
                _ => 0,
            }
        }
        Ok(go(self))
    }

    pub fn has_sort(&self, sort: Sort) -> bool {
        match (self, sort) {
            (Type::Omega, _) => true,
            (Type::Inter(a, b), s) => a.has_sort(s) && b.has_sort(s),
            (Type::Psi(_), Sort::R | Sort::D) => true,
            (Type::Arrow(k, r), Sort::D) => k.has_sort(Sort::C) && r.has_sort(Sort::R),
            (Type::Prod(d, k), Sort::C) => d.has_sort(Sort::D) && k.has_sort(Sort::C),
            _ => false,
        }
    }

    pub fn check_sort(&self, sort: Sort) -> Result<(), TypeError> {
        if self.has_sort(sort) {
            Ok(())
        } else {
            Err(TypeError::Sort { ty: self.to_string(), sort })
        }
    }
}

/// Membership in the restricted grammars: D-types are meets of `κ → psi`,
/// C-types are built from `ω`, `δ × κ` and `∧`.
pub fn is_restricted(t: &Type, sort: Sort) -> bool {
    match (t, sort) {
        (Type::Inter(a, b), s) => is_restricted(a, s) && is_restricted(b, s),
        (Type::Arrow(k, r), Sort::D) => **r == Type::Psi(None) && is_restricted(k, Sort::C),
        (Type::Omega, Sort::C) => true,
        (Type::Prod(d, k), Sort::C) => is_restricted(d, Sort::D) && is_restricted(k, Sort::C),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str, sort: Sort) -> Type {
        parse_type(s, sort).unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(ty("psi", Sort::R).rank(), 0);
        assert_eq!(ty("w -> psi", Sort::D).rank(), 1);
        assert_eq!(ty("psi * w -> psi", Sort::D).rank(), 2);
    }

    #[test]
    fn lengths() {
        let d = "w -> psi";
        assert_eq!(ty("w", Sort::C).length_c().unwrap(), 0);
        assert_eq!(ty(&format!("({d}) * w"), Sort::C).length_c().unwrap(), 1);
        let k = format!("(({d}) * w) & (({d}) * ({d}) * w)");
        assert_eq!(ty(&k, Sort::C).length_c().unwrap(), 2);
        assert!(ty("psi * w", Sort::C).length_c().is_err());
    }

    #[test]
    fn restricted_membership() {
        assert!(!is_restricted(&Type::Omega, Sort::D));
        assert!(is_restricted(&ty("w -> psi", Sort::D), Sort::D));
        assert!(is_restricted(&ty("(w -> psi) * w", Sort::C), Sort::C));
        assert!(!is_restricted(&ty("psi * w", Sort::C), Sort::C));
        assert!(!is_restricted(&ty("w * w", Sort::C), Sort::C));
    }

    #[test]
    fn meets_and_chains() {
        assert_eq!(Type::meet_all([]), Type::Omega);
        let d = ty("w -> psi", Sort::D);
        assert_eq!(Type::chain([d.clone()], Type::Omega).to_string(), "(w -> psi) * w");
        let m = Type::meet_all([d.clone(), d.clone(), d.clone()]);
        assert_eq!(m.conjuncts().len(), 3);
    }
}
