//! Agreement between the subtyping engine and the model.

use super::{app_principal, cons_principal, generate, generate_restricted, CompactPoint, Oracle, OracleError};
use crate::types::{canon_c, canon_d, canon_r, leq, leq_c, leq_d, leq_restricted, CanonC, CanonD, Lattice, Sort, Type};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, HashSet};

/// A canonical form of any sort.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Canon {
    R(usize),
    D(CanonD),
    C(CanonC),
}

impl Canon {
    pub fn of(lat: &Lattice, sort: Sort, t: &Type) -> Result<Canon, OracleError> {
        Ok(match sort {
            Sort::R => Canon::R(canon_r(lat, t)?),
            Sort::D => Canon::D(canon_d(lat, t)?),
            Sort::C => Canon::C(canon_c(lat, t)?),
        })
    }

    /// The engine's verdict on canonical forms.
    pub fn leq(lat: &Lattice, a: &Canon, b: &Canon) -> bool {
        match (a, b) {
            (Canon::R(x), Canon::R(y)) => lat.leq(*y, *x),
            (Canon::D(x), Canon::D(y)) => leq_d(lat, x, y),
            (Canon::C(x), Canon::C(y)) => leq_c(lat, x, y),
            _ => false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub sort: String,
    pub lhs: String,
    pub rhs: String,
    pub leq: bool,
    pub oracle: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Surjectivity {
    pub sort: String,
    pub rank: usize,
    /// Points hit by the generated slice alone.
    pub slice_image: usize,
    /// Points hit by the slice together with the reified points.
    pub image: usize,
    pub total: usize,
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub rank: usize,
    pub width: usize,
    pub size: usize,
    pub types: usize,
    pub classes: usize,
    pub pairs: usize,
    pub counterexample_count: usize,
    pub counterexamples: Vec<Counterexample>,
    pub surjectivity: Vec<Surjectivity>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.counterexample_count == 0 && self.surjectivity.iter().all(|s| s.image == s.total)
    }
}

const MAX_LISTED: usize = 20;

fn sort_name(s: Sort) -> String {
    format!("{s:?}")
}

/// Types of `sort` at level `n`: the generated slice plus one reified type
/// per compact point.
fn sample(o: &Oracle, sort: Sort, n: usize, width: usize, size: usize) -> Result<Vec<Type>, OracleError> {
    let lat = o.lattice();
    let mut ts = generate(lat, sort, if sort == Sort::R { 0 } else { n }, width, size);
    match sort {
        Sort::R => {}
        Sort::D => ts.extend(o.d_points(n)?.iter().map(|f| o.reify_d(n, f))),
        Sort::C => ts.extend((0..o.c_len(n)?).map(|c| o.reify_c(n, c))),
    }
    Ok(ts)
}

/// Checks `leq(σ, τ) ⟺ Θ(τ) ⊑ Θ(σ)` over the slice of types of rank at most
/// `n`, ∧-width at most `width` and size at most `size`, extended with a
/// reified type for every compact point; and checks that `Θ` hits every
/// compact point of `D_m` and `C_m` for `m ≤ n`. `leq` decides subtyping on
/// canonical forms, which lets the harness be run against a faulty engine.
pub fn validate_subtyping(
    o: &Oracle,
    n: usize,
    width: usize,
    size: usize,
    leq: &(dyn Fn(&Lattice, &Canon, &Canon) -> bool + Sync),
) -> Result<Report, OracleError> {
    let lat = o.lattice();
    let mut counterexamples = Vec::new();
    let mut count = 0;
    let (mut types, mut classes_total, mut pairs) = (0, 0, 0);
    for sort in [Sort::R, Sort::D, Sort::C] {
        let ts = sample(o, sort, n, width, size)?;
        types += ts.len();
        // Canonical class → (representative, model point).
        let mut classes: BTreeMap<Canon, (Type, CompactPoint)> = BTreeMap::new();
        for t in &ts {
            let c = Canon::of(lat, sort, t)?;
            let p = o.theta(t, sort, n)?;
            match classes.get(&c) {
                Some((rep, q)) if *q != p => {
                    count += 1;
                    if counterexamples.len() < MAX_LISTED {
                        counterexamples.push(Counterexample {
                            sort: sort_name(sort),
                            lhs: rep.to_string(),
                            rhs: t.to_string(),
                            leq: true,
                            oracle: false,
                        });
                    }
                }
                Some(_) => {}
                None => {
                    classes.insert(c, (t.clone(), p));
                }
            }
        }
        let classes: Vec<(Canon, (Type, CompactPoint))> = classes.into_iter().collect();
        classes_total += classes.len();
        pairs += classes.len() * classes.len();
        let bad: Vec<Counterexample> = classes
            .par_iter()
            .flat_map_iter(|(ca, (ta, pa))| {
                classes.iter().filter_map(move |(cb, (tb, pb))| {
                    let verdict = leq(lat, ca, cb);
                    let model = o.point_leq(n, pb, pa);
                    (verdict != model).then(|| Counterexample {
                        sort: sort_name(sort),
                        lhs: ta.to_string(),
                        rhs: tb.to_string(),
                        leq: verdict,
                        oracle: model,
                    })
                })
            })
            .collect();
        count += bad.len();
        counterexamples.extend(bad.into_iter().take(MAX_LISTED.saturating_sub(counterexamples.len())));
    }
    let mut surjectivity = Vec::new();
    for m in 0..=n {
        for sort in [Sort::D, Sort::C] {
            let total = o.enum_compacts(sort, m)?.len();
            let slice = generate(lat, sort, m, width, size);
            let image_of = |ts: &[Type]| -> Result<HashSet<CompactPoint>, OracleError> {
                ts.iter().map(|t| o.theta(t, sort, m)).collect()
            };
            let slice_image = image_of(&slice)?;
            let mut image = slice_image.clone();
            image.extend(image_of(&sample(o, sort, m, 1, 0)?)?);
            surjectivity.push(Surjectivity {
                sort: sort_name(sort),
                rank: m,
                slice_image: slice_image.len(),
                image: image.len(),
                total,
                ratio: image.len() as f64 / total as f64,
            });
        }
    }
    Ok(Report {
        rank: n,
        width,
        size,
        types,
        classes: classes_total,
        pairs,
        counterexample_count: count,
        counterexamples,
        surjectivity,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoherenceReport {
    pub rank: usize,
    pub app_checked: usize,
    pub app_mismatches: Vec<String>,
    pub cons_checked: usize,
    pub cons_mismatches: Vec<String>,
}

impl CoherenceReport {
    pub fn ok(&self) -> bool {
        self.app_mismatches.is_empty() && self.cons_mismatches.is_empty()
    }
}

fn distinct(lat: &Lattice, sort: Sort, ts: Vec<Type>) -> Result<Vec<(Type, Canon)>, OracleError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for t in ts {
        let c = Canon::of(lat, sort, &t)?;
        if seen.insert(c.clone()) {
            out.push((t, c));
        }
    }
    Ok(out)
}

/// Application coherence: `Θ(δ)` looked up at `Θ(κ)` equals the principal
/// application of `δ` to `κ`; cons coherence: `Θ(δ × κ)` equals `Θ` of the
/// principal cons.
pub fn app_coherence(o: &Oracle, n: usize, width: usize, size: usize) -> Result<CoherenceReport, OracleError> {
    let lat = o.lattice();
    let ds = distinct(lat, Sort::D, sample(o, Sort::D, n, width, size)?)?;
    let ks = distinct(lat, Sort::C, sample(o, Sort::C, n, width, size)?)?;
    let tables: Vec<_> = ds.iter().map(|(t, _)| o.theta_d(t, n)).collect::<Result<_, _>>()?;
    let points: Vec<_> = ks.iter().map(|(t, _)| o.theta_c(t, n)).collect::<Result<_, _>>()?;
    let app_mismatches: Vec<String> = ds
        .par_iter()
        .zip(tables.par_iter())
        .flat_map_iter(|((d, dc), table)| {
            ks.iter().zip(&points).filter_map(move |((k, kc), &p)| {
                let (Canon::D(dc), Canon::C(kc)) = (dc, kc) else { return None };
                let expected = app_principal(lat, dc, kc);
                (table[p] != expected).then(|| format!("({d}) applied to ({k})"))
            })
        })
        .collect();
    let mut cons_mismatches = Vec::new();
    let mut cons_checked = 0;
    if n > 0 {
        let ds = distinct(lat, Sort::D, sample(o, Sort::D, n - 1, width, size)?)?;
        let ks = distinct(lat, Sort::C, sample(o, Sort::C, n - 1, width, size)?)?;
        for (d, dc) in &ds {
            for (k, kc) in &ks {
                let (Canon::D(dc), Canon::C(kc)) = (dc, kc) else { continue };
                cons_checked += 1;
                let direct = o.theta_c(&Type::prod(d.clone(), k.clone()), n)?;
                let via = o.theta_c(&cons_principal(dc, kc).to_type(lat), n)?;
                if direct != via {
                    cons_mismatches.push(format!("({d}) * ({k})"));
                }
            }
        }
    }
    Ok(CoherenceReport {
        rank: n,
        app_checked: ds.len() * ks.len(),
        app_mismatches,
        cons_checked,
        cons_mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_zero_agrees() {
        let o = Oracle::standard();
        let r = validate_subtyping(&o, 0, 2, 5, &Canon::leq).unwrap();
        assert!(r.ok(), "{:?}", r.counterexamples);
    }

    #[test]
    fn rank_one_agrees_and_is_surjective() {
        let o = Oracle::standard();
        let r = validate_subtyping(&o, 1, 2, 5, &Canon::leq).unwrap();
        assert!(r.ok(), "{:?}", r.counterexamples);
        assert!(r.surjectivity.iter().all(|s| s.ratio == 1.0));
    }

    #[test]
    fn corrupted_engine_is_caught() {
        let o = Oracle::standard();
        let flip = |lat: &Lattice, a: &Canon, b: &Canon| {
            let v = Canon::leq(lat, a, b);
            if matches!((a, b), (Canon::R(0), Canon::R(1))) {
                !v
            } else {
                v
            }
        };
        let r = validate_subtyping(&o, 1, 1, 3, &flip).unwrap();
        assert!(r.counterexample_count >= 1);
    }

    #[test]
    fn application_coheres_at_rank_one() {
        let o = Oracle::standard();
        let r = app_coherence(&o, 1, 2, 5).unwrap();
        assert!(r.ok(), "{:?} {:?}", r.app_mismatches, r.cons_mismatches);
        assert!(r.app_checked > 0 && r.cons_checked > 0);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConservativityReport {
    pub rank: usize,
    pub width: usize,
    pub size: usize,
    pub types: usize,
    pub pairs: usize,
    pub mismatches: Vec<String>,
}

impl ConservativityReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the restricted pre-order with the full one on every pair of
/// restricted types of the same sort within the bounds.
pub fn restricted_conservativity(lat: &Lattice, n: usize, width: usize, size: usize) -> Result<ConservativityReport, OracleError> {
    let (mut types, mut pairs) = (0, 0);
    let mut mismatches = Vec::new();
    for sort in [Sort::D, Sort::C] {
        let ts = generate_restricted(sort, n, width, size);
        types += ts.len();
        pairs += ts.len() * ts.len();
        let bad: Vec<String> = ts
            .par_iter()
            .map(|a| -> Result<Vec<String>, OracleError> {
                let mut out = Vec::new();
                for b in &ts {
                    let r = leq_restricted(sort, a, b)?;
                    let f = leq(lat, sort, a, b)?;
                    if r != f {
                        out.push(format!("{a} <= {b}: restricted {r}, full {f}"));
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect();
        mismatches.extend(bad);
    }
    Ok(ConservativityReport { rank: n, width, size, types, pairs, mismatches })
}
