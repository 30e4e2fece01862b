//! Finite-rank semantic model. `C_0 = {⊥}`, `C_{n+1} = D_n × C_n` and `D_n`
//! is the set of monotone maps from `C_n` to the result lattice. Types are
//! interpreted by `theta`, which reverses the subtyping order.

mod gen;
mod validate;

pub use gen::{generate, generate_restricted};
pub use validate::{
    app_coherence, restricted_conservativity, validate_subtyping, Canon, CoherenceReport, ConservativityReport,
    Counterexample, Report, Surjectivity,
};

use crate::types::{canon_r, CanonC, CanonD, Lattice, Sort, Type, TypeError};
use std::collections::HashMap;
use std::sync::OnceLock;
use thiserror::Error;

/// A point of `D_n`: its value at every point of `C_n`, by index.
pub type Table = Vec<usize>;

/// Default bound on the number of points enumerated for one `D_n`.
pub const DEFAULT_POINT_CAP: usize = 200_000;
pub const DEFAULT_MAX_RANK: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("rank {requested} exceeds the configured maximum {max}")]
    RankTooLarge { requested: usize, max: usize },
    #[error("D_{rank} has more than {cap} points; raise the cap to enumerate it")]
    TooManyPoints { rank: usize, cap: usize },
    #[error("`{ty}` does not fit level {rank} at sort {sort:?}")]
    DoesNotFit { ty: String, sort: Sort, rank: usize },
    #[error(transparent)]
    Type(#[from] TypeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum CPoint {
    Bottom,
    /// Indices into `D_{n-1}` and `C_{n-1}`.
    Pair(usize, usize),
}

struct Level {
    c: Vec<CPoint>,
    c_index: HashMap<CPoint, usize>,
    c_leq: Vec<Vec<bool>>,
    c_bottom: usize,
    /// Points of `C_n` in an order compatible with `c_leq`.
    c_topo: Vec<usize>,
    /// `D_n` with its index, enumerated on first use; `None` past the cap.
    d: OnceLock<Option<DPoints>>,
}

struct DPoints {
    tables: Vec<Table>,
    index: HashMap<Table, usize>,
}

impl Level {
    fn d_points(&self, lat: &Lattice, cap: usize) -> Option<&DPoints> {
        self.d
            .get_or_init(|| {
                monotone_tables(lat, self, cap).map(|tables| {
                    let index = tables.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
                    DPoints { tables, index }
                })
            })
            .as_ref()
    }
}

/// A compact point of some level, for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CompactPoint {
    R(usize),
    D(Table),
    C(usize),
}

pub struct Oracle {
    lat: Lattice,
    levels: Vec<Level>,
    max_rank: usize,
    cap: usize,
}

impl Oracle {
    /// Builds `C_0 … C_max` and `D_0 … D_{max-1}`. `D_max` is enumerated on
    /// demand and reported as too large past `cap` points.
    pub fn new(lat: Lattice, max_rank: usize, cap: usize) -> Result<Oracle, OracleError> {
        let mut levels: Vec<Level> = Vec::new();
        for n in 0..=max_rank {
            let c: Vec<CPoint> = if n == 0 {
                vec![CPoint::Bottom]
            } else {
                let prev = &levels[n - 1];
                let dn = prev.d_points(&lat, cap).ok_or(OracleError::TooManyPoints { rank: n - 1, cap })?;
                (0..dn.tables.len()).flat_map(|d| (0..prev.c.len()).map(move |k| CPoint::Pair(d, k))).collect()
            };
            let c_leq: Vec<Vec<bool>> = c
                .iter()
                .map(|a| {
                    c.iter()
                        .map(|b| match (a, b) {
                            (CPoint::Bottom, CPoint::Bottom) => true,
                            (CPoint::Pair(d1, k1), CPoint::Pair(d2, k2)) => {
                                let prev = &levels[n - 1];
                                let dn = &prev.d_points(&lat, cap).expect("checked above").tables;
                                table_leq(&lat, &dn[*d1], &dn[*d2]) && prev.c_leq[*k1][*k2]
                            }
                            _ => false,
                        })
                        .collect()
                })
                .collect();
            let c_index = c.iter().enumerate().map(|(i, p)| (*p, i)).collect();
            let c_bottom = (0..c.len()).find(|&i| (0..c.len()).all(|j| c_leq[i][j])).expect("C_n has a bottom");
            let mut c_topo: Vec<usize> = (0..c.len()).collect();
            c_topo.sort_by_key(|&i| (0..c.len()).filter(|&j| c_leq[j][i]).count());
            levels.push(Level { c, c_index, c_leq, c_bottom, c_topo, d: OnceLock::new() });
        }
        Ok(Oracle { lat, levels, max_rank, cap })
    }

    /// Two-point lattice, rank 3, default cap.
    pub fn standard() -> Oracle {
        Oracle::new(Lattice::two_point(), DEFAULT_MAX_RANK, DEFAULT_POINT_CAP).expect("default oracle builds")
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lat
    }

    pub fn max_rank(&self) -> usize {
        self.max_rank
    }

    fn level(&self, n: usize) -> Result<&Level, OracleError> {
        self.levels.get(n).ok_or(OracleError::RankTooLarge { requested: n, max: self.max_rank })
    }

    pub fn c_len(&self, n: usize) -> Result<usize, OracleError> {
        Ok(self.level(n)?.c.len())
    }

    pub fn d_points(&self, n: usize) -> Result<&[Table], OracleError> {
        let dp = self.level(n)?.d_points(&self.lat, self.cap);
        dp.map(|d| d.tables.as_slice()).ok_or(OracleError::TooManyPoints { rank: n, cap: self.cap })
    }

    /// All compact points of `D_n` or `C_n` (or the lattice for `R`).
    pub fn enum_compacts(&self, sort: Sort, n: usize) -> Result<Vec<CompactPoint>, OracleError> {
        Ok(match sort {
            Sort::R => (0..self.lat.len()).map(CompactPoint::R).collect(),
            Sort::D => self.d_points(n)?.iter().cloned().map(CompactPoint::D).collect(),
            Sort::C => (0..self.c_len(n)?).map(CompactPoint::C).collect(),
        })
    }

    pub fn c_leq(&self, n: usize, a: usize, b: usize) -> bool {
        self.levels[n].c_leq[a][b]
    }

    pub fn d_leq(&self, a: &Table, b: &Table) -> bool {
        table_leq(&self.lat, a, b)
    }

    pub fn point_leq(&self, n: usize, a: &CompactPoint, b: &CompactPoint) -> bool {
        match (a, b) {
            (CompactPoint::R(x), CompactPoint::R(y)) => self.lat.leq(*x, *y),
            (CompactPoint::D(x), CompactPoint::D(y)) => self.d_leq(x, y),
            (CompactPoint::C(x), CompactPoint::C(y)) => self.c_leq(n, *x, *y),
            _ => false,
        }
    }

    /// `D_{n-1}`, always enumerated once `C_n` exists.
    fn lower(&self, n: usize) -> &DPoints {
        self.levels[n - 1].d_points(&self.lat, self.cap).expect("lower levels are enumerated")
    }

    fn c_join(&self, n: usize, a: usize, b: usize) -> usize {
        let lv = &self.levels[n];
        match (lv.c[a], lv.c[b]) {
            (CPoint::Pair(d1, k1), CPoint::Pair(d2, k2)) => {
                let dn = self.lower(n);
                let d = dn.index[&table_join(&self.lat, &dn.tables[d1], &dn.tables[d2])];
                let k = self.c_join(n - 1, k1, k2);
                lv.c_index[&CPoint::Pair(d, k)]
            }
            _ => a,
        }
    }

    /// `Θ` at level `n`.
    pub fn theta(&self, t: &Type, sort: Sort, n: usize) -> Result<CompactPoint, OracleError> {
        t.check_sort(sort)?;
        self.level(n)?;
        Ok(match sort {
            Sort::R => CompactPoint::R(canon_r(&self.lat, t)?),
            Sort::D => CompactPoint::D(self.theta_d(t, n)?),
            Sort::C => CompactPoint::C(self.theta_c(t, n)?),
        })
    }

    pub fn theta_d(&self, t: &Type, n: usize) -> Result<Table, OracleError> {
        let lv = self.level(n)?;
        let size = lv.c.len();
        Ok(match t {
            Type::Omega => vec![self.lat.bottom(); size],
            Type::Psi(_) => vec![canon_r(&self.lat, t)?; size],
            Type::Arrow(k, r) => {
                let c0 = self.theta_c(k, n)?;
                let a = canon_r(&self.lat, r)?;
                (0..size).map(|c| if lv.c_leq[c0][c] { a } else { self.lat.bottom() }).collect()
            }
            Type::Inter(a, b) => table_join(&self.lat, &self.theta_d(a, n)?, &self.theta_d(b, n)?),
            Type::Prod(..) => return Err(TypeError::Sort { ty: t.to_string(), sort: Sort::D }.into()),
        })
    }

    pub fn theta_c(&self, t: &Type, n: usize) -> Result<usize, OracleError> {
        let lv = self.level(n)?;
        match t {
            Type::Omega => Ok(lv.c_bottom),
            Type::Inter(a, b) => Ok(self.c_join(n, self.theta_c(a, n)?, self.theta_c(b, n)?)),
            Type::Prod(d, k) => {
                if n == 0 {
                    return Err(OracleError::DoesNotFit { ty: t.to_string(), sort: Sort::C, rank: 0 });
                }
                let d = self.lower(n).index[&self.theta_d(d, n - 1)?];
                let k = self.theta_c(k, n - 1)?;
                Ok(lv.c_index[&CPoint::Pair(d, k)])
            }
            _ => Err(TypeError::Sort { ty: t.to_string(), sort: Sort::C }.into()),
        }
    }

    /// A type whose image under `Θ` at level `n` is the given `D_n` point:
    /// the meet of `reify_c(c) → ψ_{f(c)}` over the points where `f` is not ⊥.
    pub fn reify_d(&self, n: usize, f: &Table) -> Type {
        Type::meet_all(
            f.iter()
                .enumerate()
                .filter(|&(_, &a)| a != self.lat.bottom())
                .map(|(c, &a)| Type::arrow(self.reify_c(n, c), atom_type(&self.lat, a))),
        )
    }

    pub fn reify_c(&self, n: usize, c: usize) -> Type {
        match self.levels[n].c[c] {
            CPoint::Bottom => Type::Omega,
            CPoint::Pair(d, k) => {
                Type::prod(self.reify_d(n - 1, &self.lower(n).tables[d]), self.reify_c(n - 1, k))
            }
        }
    }
}

fn atom_type(lat: &Lattice, a: usize) -> Type {
    if a == lat.top() {
        Type::psi()
    } else {
        Type::atom(lat.name(a))
    }
}

fn table_leq(lat: &Lattice, a: &Table, b: &Table) -> bool {
    a.iter().zip(b).all(|(x, y)| lat.leq(*x, *y))
}

fn table_join(lat: &Lattice, a: &Table, b: &Table) -> Table {
    a.iter().zip(b).map(|(x, y)| lat.join(*x, *y)).collect()
}

/// All monotone maps from `C_n` to the lattice, or `None` past `cap`.
fn monotone_tables(lat: &Lattice, lv: &Level, cap: usize) -> Option<Vec<Table>> {
    fn go(
        lat: &Lattice,
        lv: &Level,
        pos: usize,
        table: &mut Table,
        out: &mut Vec<Table>,
        cap: usize,
    ) -> bool {
        if pos == lv.c_topo.len() {
            out.push(table.clone());
            return out.len() <= cap;
        }
        let c = lv.c_topo[pos];
        let below: Vec<usize> = lv.c_topo[..pos].iter().copied().filter(|&p| lv.c_leq[p][c]).collect();
        for a in 0..lat.len() {
            if below.iter().all(|&p| lat.leq(table[p], a)) {
                table[c] = a;
                if !go(lat, lv, pos + 1, table, out, cap) {
                    return false;
                }
            }
        }
        true
    }
    let mut out = Vec::new();
    let mut table = vec![lat.bottom(); lv.c.len()];
    go(lat, lv, 0, &mut table, &mut out, cap).then(|| {
        out.sort();
        out
    })
}

/// Principal-filter application: the join of the codomains of the arrows
/// of `d` whose domains lie above `k`.
pub fn app_principal(lat: &Lattice, d: &CanonD, k: &CanonC) -> usize {
    d.0.iter()
        .filter(|(kj, _)| crate::types::leq_c(lat, k, kj))
        .fold(lat.bottom(), |acc, (_, a)| lat.join(acc, *a))
}

/// Principal-filter cons: `d × k`.
pub fn cons_principal(d: &CanonD, k: &CanonC) -> CanonC {
    CanonC::cons(d.clone(), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{canon_c, canon_d, parse_type};

    #[test]
    fn level_sizes() {
        let o = Oracle::standard();
        let sizes: Vec<(usize, usize)> =
            (0..=2).map(|n| (o.c_len(n).unwrap(), o.d_points(n).unwrap().len())).collect();
        assert_eq!(sizes, vec![(1, 2), (2, 3), (6, 10)]);
        assert_eq!(o.c_len(3).unwrap(), 60);
        assert!(o.enum_compacts(Sort::C, 4).is_err());
    }

    #[test]
    fn theta_examples() {
        let o = Oracle::standard();
        let l = o.lattice();
        assert_eq!(o.theta_d(&Type::Omega, 2).unwrap(), vec![l.bottom(); 6]);
        let t = parse_type("w -> psi", Sort::D).unwrap();
        assert_eq!(o.theta_d(&t, 1).unwrap(), vec![l.top(); 2]);
        let a = parse_type("psi * w -> psi", Sort::D).unwrap();
        let b = parse_type("(w -> psi) * psi * w -> psi", Sort::D).unwrap();
        let ab = Type::inter(a.clone(), b.clone());
        let joined = table_join(l, &o.theta_d(&a, 2).unwrap(), &o.theta_d(&b, 2).unwrap());
        assert_eq!(o.theta_d(&ab, 2).unwrap(), joined);
        assert!(o.theta_c(&parse_type("psi * w", Sort::C).unwrap(), 0).is_err());
    }

    #[test]
    fn reification_is_a_section() {
        let o = Oracle::standard();
        for n in 0..=2 {
            for f in o.d_points(n).unwrap() {
                assert_eq!(&o.theta_d(&o.reify_d(n, f), n).unwrap(), f);
            }
            for c in 0..o.c_len(n).unwrap() {
                assert_eq!(o.theta_c(&o.reify_c(n, c), n).unwrap(), c);
            }
        }
    }

    #[test]
    fn principal_application() {
        let l = Lattice::two_point();
        let d = |s: &str| canon_d(&l, &parse_type(s, Sort::D).unwrap()).unwrap();
        let c = |s: &str| canon_c(&l, &parse_type(s, Sort::C).unwrap()).unwrap();
        assert_eq!(app_principal(&l, &d("w -> psi"), &c("psi * psi * w")), l.top());
        assert_eq!(app_principal(&l, &d("w"), &c("psi * w")), l.bottom());
        let d0 = "(psi * w -> psi)";
        assert_eq!(app_principal(&l, &d(&format!("{d0} * w -> psi")), &c(&format!("{d0} * w"))), l.top());
        assert_eq!(app_principal(&l, &d(&format!("{d0} * w -> psi")), &c("(w -> psi_bot) * w")), l.bottom());
        assert_eq!(cons_principal(&d("psi"), &c("w")), c("psi * w"));
    }
}
