//! Subtyping decisions: the full theories by recursion on canonical forms,
//! and the restricted theory by a direct syntactic procedure.

use super::canon::{canon_c, canon_d, canon_r, CanonC, CanonD};
use super::{is_restricted, Lattice, Sort, Type, TypeError};

/// Every arrow `κ → a` of `b` is covered by the join of the codomains of
/// the arrows of `a` whose domains lie above `κ`.
pub fn leq_d(lat: &Lattice, a: &CanonD, b: &CanonD) -> bool {
    b.0.iter().all(|(k, target)| {
        let got = a
            .0
            .iter()
            .filter(|(kj, _)| leq_c(lat, k, kj))
            .fold(lat.bottom(), |acc, (_, aj)| lat.join(acc, *aj));
        lat.leq(*target, got)
    })
}

/// Componentwise over the components of `b`, with `a` padded by `ω`.
pub fn leq_c(lat: &Lattice, a: &CanonC, b: &CanonC) -> bool {
    b.0.iter().enumerate().all(|(i, bi)| leq_d(lat, &a.get(i), bi))
}

/// `σ ≤ τ` at `sort`.
pub fn leq(lat: &Lattice, sort: Sort, s: &Type, t: &Type) -> Result<bool, TypeError> {
    s.check_sort(sort)?;
    t.check_sort(sort)?;
    Ok(match sort {
        Sort::R => lat.leq(canon_r(lat, t)?, canon_r(lat, s)?),
        Sort::D => leq_d(lat, &canon_d(lat, s)?, &canon_d(lat, t)?),
        Sort::C => leq_c(lat, &canon_c(lat, s)?, &canon_c(lat, t)?),
    })
}

pub fn equiv(lat: &Lattice, sort: Sort, s: &Type, t: &Type) -> Result<bool, TypeError> {
    Ok(leq(lat, sort, s, t)? && leq(lat, sort, t, s)?)
}

/// `σ ≤ τ` in the restricted theory; both sides must be restricted.
pub fn leq_restricted(sort: Sort, s: &Type, t: &Type) -> Result<bool, TypeError> {
    for x in [s, t] {
        if sort == Sort::R || !is_restricted(x, sort) {
            return Err(TypeError::NotRestricted(x.to_string()));
        }
    }
    Ok(match sort {
        Sort::D => restricted_d(s, t),
        _ => restricted_c(s, t),
    })
}

fn arrow_domains(t: &Type) -> Vec<&Type> {
    t.conjuncts()
        .into_iter()
        .filter_map(|c| match c {
            Type::Arrow(k, _) => Some(k.as_ref()),
            _ => None,
        })
        .collect()
}

// ⋀ᵢ(κᵢ→ψ) ≤ ⋀ⱼ(κ'ⱼ→ψ) iff every κ'ⱼ lies below some κᵢ.
fn restricted_d(s: &Type, t: &Type) -> bool {
    let lhs = arrow_domains(s);
    arrow_domains(t).into_iter().all(|kt| lhs.iter().any(|ks| restricted_c(kt, ks)))
}

// The product conjuncts of the left side collapse to one product of meets,
// which must lie below each product conjunct of the right side.
fn restricted_c(s: &Type, t: &Type) -> bool {
    let prods: Vec<(&Type, &Type)> = s
        .conjuncts()
        .into_iter()
        .filter_map(|c| match c {
            Type::Prod(d, k) => Some((d.as_ref(), k.as_ref())),
            _ => None,
        })
        .collect();
    let heads = || Type::meet_all(prods.iter().map(|(d, _)| (*d).clone()));
    let tails = || Type::meet_all(prods.iter().map(|(_, k)| (*k).clone()));
    t.conjuncts().into_iter().all(|c| match c {
        Type::Prod(d, k) => !prods.is_empty() && restricted_d(&heads(), d) && restricted_c(&tails(), k),
        _ => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::parse_type;

    fn l() -> Lattice {
        Lattice::two_point()
    }

    fn d(s: &str) -> Type {
        parse_type(s, Sort::D).unwrap()
    }

    fn c(s: &str) -> Type {
        parse_type(s, Sort::C).unwrap()
    }

    #[test]
    fn atom_and_omega_arrow_coincide() {
        assert!(leq(&l(), Sort::D, &d("psi"), &d("w -> psi")).unwrap());
        assert!(leq(&l(), Sort::D, &d("w -> psi"), &d("psi")).unwrap());
    }

    #[test]
    fn omega_is_top() {
        for s in ["w", "(w -> psi) * w", "psi * psi * w", "(psi * w) & w"] {
            assert!(leq(&l(), Sort::C, &c(s), &Type::Omega).unwrap());
        }
        assert!(!leq(&l(), Sort::C, &Type::Omega, &c("psi * w")).unwrap());
    }

    #[test]
    fn arrows_are_contravariant() {
        let small = d("psi * psi * w -> psi");
        let big = d("psi * w -> psi");
        assert!(leq(&l(), Sort::D, &big, &small).unwrap());
        assert!(!leq(&l(), Sort::D, &small, &big).unwrap());
    }

    #[test]
    fn result_order_is_reversed() {
        assert!(leq(&l(), Sort::R, &d("psi"), &Type::Omega).unwrap());
        assert!(leq(&l(), Sort::R, &d("psi_top"), &d("psi_bot")).unwrap());
        assert!(!leq(&l(), Sort::R, &Type::Omega, &d("psi")).unwrap());
        assert!(leq(&l(), Sort::R, &Type::Omega, &d("psi_bot")).unwrap());
    }

    #[test]
    fn sort_mismatch_is_an_error() {
        assert!(leq(&l(), Sort::D, &c("psi * w"), &Type::Omega).is_err());
    }

    #[test]
    fn restricted_examples() {
        let d1 = "(w -> psi)";
        let d2 = "((w -> psi) * w -> psi)";
        let lhs = c(&format!("{d1} * {d2} * w"));
        let rhs = c(&format!("{d1} * w"));
        assert!(leq_restricted(Sort::C, &lhs, &rhs).unwrap());
        assert!(!leq_restricted(Sort::C, &rhs, &lhs).unwrap());
        // κ → ψ ≤ κ' → ψ when κ' ≤ κ.
        let k = format!("{d1} * w");
        let k2 = format!("({d1} & {d2}) * w");
        assert!(leq_restricted(Sort::D, &d(&format!("{k} -> psi")), &d(&format!("{k2} -> psi"))).unwrap());
        assert!(leq_restricted(Sort::D, &Type::Omega, &d("w -> psi")).is_err());
    }
}
