//! Enumeration of types by AST size.

use crate::types::{Lattice, Sort, Type};
use std::collections::HashMap;

struct Gen<'a> {
    lat: &'a Lattice,
    max_rank: usize,
    width: usize,
    prime: HashMap<(Sort, usize), Vec<Type>>,
    chains: HashMap<(Sort, usize, usize), Vec<Type>>,
}

impl Gen<'_> {
    fn atoms(&self) -> Vec<Type> {
        let mut out = vec![Type::psi()];
        out.extend((0..self.lat.len()).filter(|&a| a != self.lat.top()).map(|a| Type::atom(self.lat.name(a))));
        out
    }

    /// Types of exact size `s` whose root is not `∧`.
    fn prime(&mut self, sort: Sort, s: usize) -> Vec<Type> {
        if let Some(v) = self.prime.get(&(sort, s)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if s == 1 {
            out.push(Type::Omega);
            if sort != Sort::C {
                out.extend(self.atoms());
            }
        }
        let (left, right) = match sort {
            Sort::D => (Sort::C, Sort::R),
            Sort::C => (Sort::D, Sort::C),
            Sort::R => (Sort::R, Sort::R),
        };
        if sort != Sort::R && s >= 3 {
            for s1 in 1..s - 1 {
                let ls = self.full(left, s1);
                let rs = self.full(right, s - 1 - s1);
                for l in &ls {
                    for r in &rs {
                        let t = match sort {
                            Sort::D => Type::arrow(l.clone(), r.clone()),
                            _ => Type::prod(l.clone(), r.clone()),
                        };
                        if t.rank() <= self.max_rank {
                            out.push(t);
                        }
                    }
                }
            }
        }
        self.prime.insert((sort, s), out.clone());
        out
    }

    /// Left-nested meets of exactly `k` prime conjuncts, total size `s`.
    fn chain(&mut self, sort: Sort, s: usize, k: usize) -> Vec<Type> {
        if k == 1 {
            return self.prime(sort, s);
        }
        if let Some(v) = self.chains.get(&(sort, s, k)) {
            return v.clone();
        }
        let mut out = Vec::new();
        for s1 in 1..s.saturating_sub(1) {
            let ls = self.chain(sort, s1, k - 1);
            let rs = self.prime(sort, s - 1 - s1);
            for l in &ls {
                for r in &rs {
                    out.push(Type::inter(l.clone(), r.clone()));
                }
            }
        }
        self.chains.insert((sort, s, k), out.clone());
        out
    }

    fn full(&mut self, sort: Sort, s: usize) -> Vec<Type> {
        (1..=self.width.max(1)).flat_map(|k| self.chain(sort, s, k)).collect()
    }
}

/// Every type of `sort` with rank at most `max_rank`, at most `width`
/// conjuncts in any ∧-tree (nested to the left) and at most `max_size`
/// AST nodes, in order of size.
pub fn generate(lat: &Lattice, sort: Sort, max_rank: usize, width: usize, max_size: usize) -> Vec<Type> {
    let mut g = Gen { lat, max_rank, width, prime: HashMap::new(), chains: HashMap::new() };
    (1..=max_size).flat_map(|s| g.full(sort, s)).collect()
}

/// Every restricted type of `sort` (D or C) within the same bounds as
/// [`generate`], built directly from the restricted grammars.
pub fn generate_restricted(sort: Sort, max_rank: usize, width: usize, max_size: usize) -> Vec<Type> {
    fn prime(sort: Sort, s: usize, n: usize, w: usize, memo: &mut HashMap<(Sort, usize), Vec<Type>>) -> Vec<Type> {
        if let Some(v) = memo.get(&(sort, s)) {
            return v.clone();
        }
        let mut out = Vec::new();
        match sort {
            Sort::D if s >= 3 => {
                for k in full(Sort::C, s - 2, n, w, memo) {
                    out.push(Type::arrow(k, Type::psi()));
                }
            }
            Sort::C if s == 1 => out.push(Type::Omega),
            Sort::C if s >= 3 => {
                for s1 in 1..s - 1 {
                    let ds = full(Sort::D, s1, n, w, memo);
                    let ks = full(Sort::C, s - 1 - s1, n, w, memo);
                    for d in &ds {
                        out.extend(ks.iter().map(|k| Type::prod(d.clone(), k.clone())));
                    }
                }
            }
            _ => {}
        }
        out.retain(|t| t.rank() <= n);
        memo.insert((sort, s), out.clone());
        out
    }
    fn chain(sort: Sort, s: usize, k: usize, n: usize, w: usize, memo: &mut HashMap<(Sort, usize), Vec<Type>>) -> Vec<Type> {
        if k == 1 {
            return prime(sort, s, n, w, memo);
        }
        let mut out = Vec::new();
        for s1 in 1..s.saturating_sub(1) {
            let ls = chain(sort, s1, k - 1, n, w, memo);
            let rs = prime(sort, s - 1 - s1, n, w, memo);
            for l in &ls {
                out.extend(rs.iter().map(|r| Type::inter(l.clone(), r.clone())));
            }
        }
        out
    }
    fn full(sort: Sort, s: usize, n: usize, w: usize, memo: &mut HashMap<(Sort, usize), Vec<Type>>) -> Vec<Type> {
        (1..=w.max(1)).flat_map(|k| chain(sort, s, k, n, w, memo)).collect()
    }
    let mut memo = HashMap::new();
    (1..=max_size).flat_map(|s| full(sort, s, max_rank, width, &mut memo)).collect()
}
