//! Canonical forms. A D-type becomes a set of arrows `κ → a` with `a ≠ ⊥`
//! (the empty set is `ω`); a C-type becomes the list `[δ1, …, δn]` standing
//! for `δ1 × … × δn × ω`, with trailing `ω` components trimmed.

use super::leq::leq_c;
use super::{Lattice, Sort, Type, TypeError};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonD(pub Vec<(CanonC, usize)>);

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonC(pub Vec<CanonD>);

fn sort_err(t: &Type, sort: Sort) -> TypeError {
    TypeError::Sort { ty: t.to_string(), sort }
}

/// Lattice element of an R-type: atoms joined, `ω` as bottom.
pub fn canon_r(lat: &Lattice, t: &Type) -> Result<usize, TypeError> {
    match t {
        Type::Omega => Ok(lat.bottom()),
        Type::Psi(a) => lat.element(a.as_deref()),
        Type::Inter(a, b) => Ok(lat.join(canon_r(lat, a)?, canon_r(lat, b)?)),
        _ => Err(sort_err(t, Sort::R)),
    }
}

pub fn canon_d(lat: &Lattice, t: &Type) -> Result<CanonD, TypeError> {
    match t {
        Type::Omega => Ok(CanonD::default()),
        Type::Psi(_) => Ok(CanonD::arrow(lat, CanonC::default(), canon_r(lat, t)?)),
        Type::Arrow(k, r) => Ok(CanonD::arrow(lat, canon_c(lat, k)?, canon_r(lat, r)?)),
        Type::Inter(a, b) => Ok(canon_d(lat, a)?.meet(lat, &canon_d(lat, b)?)),
        Type::Prod(..) => Err(sort_err(t, Sort::D)),
    }
}

pub fn canon_c(lat: &Lattice, t: &Type) -> Result<CanonC, TypeError> {
    match t {
        Type::Omega => Ok(CanonC::default()),
        Type::Prod(d, k) => {
            let mut items = vec![canon_d(lat, d)?];
            items.extend(canon_c(lat, k)?.0);
            Ok(CanonC::trimmed(items))
        }
        Type::Inter(a, b) => Ok(canon_c(lat, a)?.meet(lat, &canon_c(lat, b)?)),
        _ => Err(sort_err(t, Sort::C)),
    }
}

impl CanonD {
    pub fn omega() -> CanonD {
        CanonD::default()
    }

    pub fn is_omega(&self) -> bool {
        self.0.is_empty()
    }

    /// `κ → a`, which is `ω` when `a = ⊥`.
    pub fn arrow(lat: &Lattice, k: CanonC, a: usize) -> CanonD {
        if a == lat.bottom() {
            CanonD::default()
        } else {
            CanonD(vec![(k, a)])
        }
    }

    pub fn meet(&self, lat: &Lattice, other: &CanonD) -> CanonD {
        let mut arrows = self.0.clone();
        arrows.extend(other.0.iter().cloned());
        CanonD::normalize(lat, arrows)
    }

    /// Merges arrows with equivalent domains and drops arrows implied by the
    /// rest.
    fn normalize(lat: &Lattice, mut arrows: Vec<(CanonC, usize)>) -> CanonD {
        arrows.sort();
        arrows.dedup();
        let mut merged: Vec<(CanonC, usize)> = Vec::new();
        for (k, a) in arrows {
            match merged
                .iter_mut()
                .find(|(k2, _)| *k2 == k || (leq_c(lat, k2, &k) && leq_c(lat, &k, k2)))
            {
                Some(slot) => slot.1 = lat.join(slot.1, a),
                None => merged.push((k, a)),
            }
        }
        let mut i = 0;
        while i < merged.len() {
            let (k, a) = &merged[i];
            let implied = merged
                .iter()
                .enumerate()
                .filter(|&(j, (kj, _))| j != i && leq_c(lat, k, kj))
                .fold(lat.bottom(), |acc, (_, (_, aj))| lat.join(acc, *aj));
            if lat.leq(*a, implied) {
                merged.remove(i);
            } else {
                i += 1;
            }
        }
        merged.sort();
        CanonD(merged)
    }

    pub fn to_type(&self, lat: &Lattice) -> Type {
        Type::meet_all(self.0.iter().map(|(k, a)| Type::arrow(k.to_type(lat), atom_type(lat, *a))))
    }
}

impl CanonC {
    pub fn omega() -> CanonC {
        CanonC::default()
    }

    pub fn trimmed(mut items: Vec<CanonD>) -> CanonC {
        while items.last().is_some_and(CanonD::is_omega) {
            items.pop();
        }
        CanonC(items)
    }

    /// `δ × κ`.
    pub fn cons(d: CanonD, k: &CanonC) -> CanonC {
        let mut items = vec![d];
        items.extend(k.0.iter().cloned());
        CanonC::trimmed(items)
    }

    /// Component `i`, `ω` beyond the end.
    pub fn get(&self, i: usize) -> CanonD {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn meet(&self, lat: &Lattice, other: &CanonC) -> CanonC {
        let n = self.0.len().max(other.0.len());
        CanonC::trimmed((0..n).map(|i| self.get(i).meet(lat, &other.get(i))).collect())
    }

    pub fn to_type(&self, lat: &Lattice) -> Type {
        Type::chain(self.0.iter().map(|d| d.to_type(lat)), Type::Omega)
    }
}

fn atom_type(lat: &Lattice, a: usize) -> Type {
    if a == lat.top() {
        Type::psi()
    } else {
        Type::atom(lat.name(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{equiv, parse_type};

    fn lat() -> Lattice {
        Lattice::two_point()
    }

    #[test]
    fn atom_is_omega_arrow() {
        let l = lat();
        let d = canon_d(&l, &Type::psi()).unwrap();
        assert_eq!(d, CanonD(vec![(CanonC::omega(), l.top())]));
        assert_eq!(d.to_type(&l).to_string(), "w -> psi");
    }

    #[test]
    fn omega_chains_are_empty() {
        let l = lat();
        assert_eq!(canon_c(&l, &Type::Omega).unwrap(), CanonC::omega());
        assert_eq!(canon_c(&l, &parse_type("w * w", Sort::C).unwrap()).unwrap(), CanonC::omega());
    }

    #[test]
    fn meets_distribute_over_products() {
        let l = lat();
        let k = parse_type("((w -> psi) * w) & ((psi * w -> psi) * (w -> psi) * w)", Sort::C).unwrap();
        let c = canon_c(&l, &k).unwrap();
        assert_eq!(c.0.len(), 2);
        let expected = parse_type("((w -> psi) & (psi * w -> psi)) * (w -> psi) * w", Sort::C).unwrap();
        assert!(equiv(&l, Sort::C, &k, &expected).unwrap());
    }

    #[test]
    fn bottom_codomains_vanish() {
        let l = lat();
        assert!(canon_d(&l, &parse_type("psi * w -> psi_bot", Sort::D).unwrap()).unwrap().is_omega());
        assert!(canon_d(&l, &parse_type("psi_bot", Sort::D).unwrap()).unwrap().is_omega());
    }

    #[test]
    fn redundant_arrows_are_dropped() {
        let l = lat();
        let t = parse_type("(w -> psi) & ((w -> psi) * w -> psi)", Sort::D).unwrap();
        assert_eq!(canon_d(&l, &t).unwrap().to_type(&l).to_string(), "w -> psi");
    }
}
