//! Acceptance harness: one PASS/FAIL line per criterion.

use lammu::cli::{load_corpus, WORKER_STACK};
use lammu::goldens;
use lammu::oracle::{app_coherence, restricted_conservativity, validate_subtyping, Canon, Oracle};
use lammu::parigot::{check_simple, peirce, random_derivation, translate_derivation, Encoding};
use lammu::reduction::{is_sn, reducts, SnStatus, DEFAULT_BUDGET};
use lammu::syntax::{closed_terms, nameless::alpha_eq, parse_term, Expr, Term};
use lammu::types::Lattice;
use lammu::typing::{check_derivation, type_sn, Derivation, Mode, NotTypeable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::path::Path;
use std::time::Instant;

/// Step budget for certification in the sweeps.
const FUEL: usize = 2_000;

type Outcome = Result<String, String>;

fn lat() -> Lattice {
    Lattice::two_point()
}

fn goldens_check() -> Outcome {
    let all = goldens::all();
    for g in &all {
        check_derivation(&g.derivation, g.mode, &lat()).map_err(|v| format!("{}: {v}", g.name))?;
    }
    check_simple(&peirce()).map_err(|v| format!("peirce: {v}"))?;
    Ok(format!("{} certificates and the simply typed Peirce derivation", all.len()))
}

/// `is_sn` and `type_sn` agree on `m`; certificates check in restricted mode.
fn agree(m: &Term) -> Result<SnStatus, String> {
    let verdict = is_sn(m, DEFAULT_BUDGET, false).status;
    match (verdict, type_sn(m, FUEL)) {
        (SnStatus::SN, Ok(d)) => {
            check_derivation(&d, Mode::Restricted, &lat()).map_err(|v| format!("`{m}`: {v}"))?;
            Ok(verdict)
        }
        (SnStatus::NotSN, Err(NotTypeable::Fuel { .. })) => Ok(verdict),
        (v, r) => Err(format!("`{m}`: {v:?} but {:?}", r.map(|d| d.conclusion.to_string()))),
    }
}

fn sn_sweep() -> Outcome {
    let mut terms = closed_terms(7);
    let swept = terms.len();
    for src in [
        "(\\x. x x) (\\x. x x)",
        "(\\x. x x) (\\x. x x) x",
        "(\\x. \\y. \\z. x z (y z)) (\\a. \\b. a)",
        "(mu a.[a] x) x",
        "mu a.[a] x x",
    ] {
        terms.push(parse_term(src).expect("fixed term"));
    }
    let (mut sn, mut not_sn) = (0, 0);
    for m in &terms {
        match agree(m)? {
            SnStatus::SN => sn += 1,
            _ => not_sn += 1,
        }
    }
    Ok(format!("{swept} closed terms up to 7 nodes plus 5 named: {sn} SN, {not_sn} not SN, 0 disagreements"))
}

fn oracle_agreement() -> Outcome {
    let r = validate_subtyping(&Oracle::standard(), 2, 2, 7, &Canon::leq).map_err(|e| e.to_string())?;
    let ratios: Vec<String> = r.surjectivity.iter().map(|s| format!("{}_{} {:.1}", s.sort, s.rank, s.ratio)).collect();
    if !r.ok() {
        return Err(format!("{} counterexamples, surjectivity {}", r.counterexample_count, ratios.join(", ")));
    }
    Ok(format!("{} types in {} classes, {} class pairs, 0 counterexamples; surjectivity {}", r.types, r.classes, r.pairs, ratios.join(", ")))
}

fn conservativity() -> Outcome {
    let mut parts = Vec::new();
    for (n, w, s) in [(2, 2, 7), (3, 2, 11), (4, 2, 13), (3, 3, 13)] {
        let r = restricted_conservativity(&lat(), n, w, s).map_err(|e| e.to_string())?;
        if !r.ok() {
            return Err(format!("({n},{w},{s}): {}", r.mismatches.join("; ")));
        }
        parts.push(format!("({n},{w},{s}) {} pairs", r.pairs));
    }
    Ok(format!("0 mismatches at {}", parts.join(", ")))
}

/// The reduct golden types a one-step reduct of the redex golden's subject,
/// at the same type.
fn golden_step(pre: &Derivation, post: &Derivation) -> Result<(), String> {
    let subject = pre.conclusion.term().ok_or("redex golden types a command")?;
    let target = &post.conclusion.subject;
    if !reducts(&Expr::Term(subject.clone()), true).iter().any(|(r, _)| alpha_eq(r, target)) {
        return Err(format!("`{target}` is not a reduct of `{subject}`"));
    }
    if pre.conclusion.ty != post.conclusion.ty {
        return Err(format!("type changes along `{subject}`"));
    }
    Ok(())
}

fn convertibility_invariance() -> Outcome {
    let corpus = load_corpus(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/corpus.jsonl"))?;
    let mut checked = 0;
    for e in &corpus {
        let m = parse_term(&e.term).expect("validated on load");
        if type_sn(&m, FUEL).is_err() {
            continue;
        }
        for (n, _) in reducts(&Expr::Term(m.clone()), true) {
            let n = n.as_term().expect("reducts of terms are terms").clone();
            let d = type_sn(&n, FUEL).map_err(|err| format!("{}: reduct `{n}`: {err}", e.id))?;
            check_derivation(&d, Mode::Restricted, &lat()).map_err(|v| format!("{}: reduct `{n}`: {v}", e.id))?;
            checked += 1;
        }
    }
    let by_name = |name: &str| goldens::all().into_iter().find(|g| g.name == name).expect("golden exists");
    let path = goldens::sk_path();
    let mut pairs: Vec<(Derivation, Derivation, Mode)> = path.windows(2).map(|w| (w[0].clone(), w[1].clone(), Mode::Full)).collect();
    for stem in ["mu-self-app", "mu-app", "mu-self-app-restricted", "fixpoint"] {
        let (pre, post) = match stem {
            "mu-self-app-restricted" => ("mu-self-app-redex-restricted", "mu-self-app-reduct-restricted"),
            "fixpoint" => ("fixpoint", "fixpoint-reduct"),
            "mu-self-app" => ("mu-self-app-redex", "mu-self-app-reduct"),
            _ => ("mu-app-redex", "mu-app-reduct"),
        };
        let (pre, post) = (by_name(pre), by_name(post));
        pairs.push((pre.derivation, post.derivation, post.mode));
    }
    for (pre, post, mode) in &pairs {
        golden_step(pre, post)?;
        check_derivation(post, *mode, &lat()).map_err(|v| v.to_string())?;
    }
    Ok(format!("{checked} reducts of certified corpus terms certified; {} golden reduction steps keep their types", pairs.len()))
}

fn translation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut nodes, mut mus) = (0, 0);
    for i in 0..100 {
        let src = random_derivation(&mut rng, 12);
        if src.node_count() > 12 {
            return Err(format!("derivation {i} has {} nodes", src.node_count()));
        }
        let d = translate_derivation(&src, &Encoding::restricted()).map_err(|e| format!("derivation {i}: {e}"))?;
        check_derivation(&d, Mode::Restricted, &lat()).map_err(|v| format!("derivation {i}: {v}"))?;
        if d.node_count() != src.node_count() + src.mu_count() {
            return Err(format!("derivation {i}: {} nodes from {} + {}", d.node_count(), src.node_count(), src.mu_count()));
        }
        nodes += src.node_count();
        mus += src.mu_count();
    }
    Ok(format!("100 derivations ({nodes} nodes, {mus} μ) translate and check"))
}

fn coherence() -> Outcome {
    let r = app_coherence(&Oracle::standard(), 2, 2, 7).map_err(|e| e.to_string())?;
    if !r.ok() {
        return Err(format!("{} app and {} cons mismatches", r.app_mismatches.len(), r.cons_mismatches.len()));
    }
    Ok(format!("{} applications and {} conses agree", r.app_checked, r.cons_checked))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        ("golden certificates check", goldens_check),
        ("SN characterisation sweep", sn_sweep),
        ("oracle agreement", oracle_agreement),
        ("restricted conservativity", conservativity),
        ("convertibility invariance", convertibility_invariance),
        ("translation preservation", translation),
        ("application coherence", coherence),
    ];
    let failures = std::thread::Builder::new()
        .stack_size(WORKER_STACK)
        .spawn(move || {
            let mut failures = 0;
            for (i, (name, run)) in criteria.iter().enumerate() {
                let start = Instant::now();
                let outcome = run();
                let secs = start.elapsed().as_secs_f64();
                match outcome {
                    Ok(detail) => println!("criterion {}: PASS {name} ({detail}; {secs:.2}s)", i + 1),
                    Err(why) => {
                        failures += 1;
                        println!("criterion {}: FAIL {name} ({why}; {secs:.2}s)", i + 1);
                    }
                }
            }
            failures
        })
        .expect("harness thread spawns")
        .join()
        .expect("harness thread completes");
    if failures > 0 {
        std::process::exit(1);
    }
}
