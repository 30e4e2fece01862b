//! The `lammu` command line. Exit codes: 0 success, 1 negative verdict,
//! 2 usage or parse error, 3 budget exhausted.

use crate::oracle::{app_coherence, restricted_conservativity, validate_subtyping, Canon, Oracle, OracleError, DEFAULT_POINT_CAP};
use crate::parigot::{translate_derivation, Encoding, ParigotError, SimpleDerivation};
use crate::reduction::{is_normal, is_sn, lo_step, normalize, ReductionError, SnStatus, Strategy, DEFAULT_BUDGET, DEFAULT_FUEL};
use crate::syntax::{nameless::alpha_eq, parse_expr, parse_term, Expr, Term};
use crate::types::{equiv, leq, leq_restricted, parse_type, Lattice, Sort, Type};
use crate::typing::{check_derivation, synth_nf, type_sn, Derivation, Mode, NotTypeable};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Stack size for threads that reduce or type terms: deep terms recurse deeply.
pub const WORKER_STACK: usize = 512 << 20;

#[derive(Parser, Debug)]
#[command(name = "lammu", version, about = "Workbench for the lambda-mu calculus with intersection types")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Lattice description for the base types (default: `LAMMU_LATTICE`, then the two-point lattice).
    #[arg(long, global = true, value_name = "FILE")]
    lattice: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    /// Leftmost-outermost beta and mu steps.
    Lo,
    /// Leftmost-outermost over all rules, renaming included.
    Full,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Lo => Strategy::Lo,
            StrategyArg::Full => Strategy::Full,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleAction {
    /// Engine verdicts against the model, plus surjectivity.
    Validate,
    /// Application and cons coherence.
    Coherence,
    /// Restricted against full subtyping on restricted types.
    Conservativity,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a term or command and print it back.
    Parse { expr: String },
    /// Contract the leftmost-outermost redex.
    Reduce {
        term: String,
        #[arg(long, value_enum, default_value = "lo")]
        strategy: StrategyArg,
    },
    /// Reduce to normal form.
    Normalize {
        term: String,
        #[arg(long, value_enum, default_value = "lo")]
        strategy: StrategyArg,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
    },
    /// Decide strong normalisation by exploring the reduction graph.
    Sn {
        term: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// `full` also explores renaming steps.
        #[arg(long, value_enum, default_value = "lo")]
        strategy: StrategyArg,
    },
    /// Decide `S <= T`.
    Subtype {
        inequality: String,
        #[arg(long, default_value = "D")]
        sort: Sort,
        /// Use the restricted theory; both sides must be restricted types.
        #[arg(long)]
        restricted: bool,
    },
    /// Check a JSON certificate.
    CheckDerivation {
        file: PathBuf,
        #[arg(long)]
        restricted: bool,
    },
    /// Restricted certificate for a normal form.
    TypeNf {
        term: String,
        #[arg(long, value_name = "PATH")]
        emit: Option<PathBuf>,
    },
    /// Restricted certificate for a strongly normalising term.
    TypeSn {
        term: String,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        #[arg(long, value_name = "PATH")]
        emit: Option<PathBuf>,
    },
    /// Translate a simply typed derivation (JSON) into a certificate.
    TranslateParigot {
        file: PathBuf,
        /// Encode atoms as `(w -> psi) * w` and check in the restricted system.
        #[arg(long)]
        restricted: bool,
        #[arg(long, value_name = "PATH")]
        emit: Option<PathBuf>,
    },
    /// Compare the subtyping engine with the finite-rank model.
    Oracle {
        #[arg(value_enum, default_value = "validate")]
        action: OracleAction,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 2)]
        width: usize,
        #[arg(long, default_value_t = 7)]
        size: usize,
    },
    /// Run a JSONL corpus of terms with expected verdicts.
    Corpus {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
}

/// One line of a corpus file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub id: String,
    pub term: String,
    pub expect: SnStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_type: Option<String>,
    /// Certificate to check, relative to the corpus file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivation_file: Option<PathBuf>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub term: String,
    pub expect: SnStatus,
    pub verdict: SnStatus,
    pub explored: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_type: Option<String>,
    pub ok: bool,
    pub notes: Vec<String>,
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn oracle_failure(e: OracleError) -> Failure {
    match e {
        OracleError::TooManyPoints { .. } => Failure::Budget(e.to_string()),
        _ => Failure::Usage(e.to_string()),
    }
}

struct Outcome {
    code: i32,
    text: String,
    json: Value,
}

impl Outcome {
    fn new(code: i32, text: impl Into<String>, json: Value) -> Outcome {
        Outcome { code, text: text.into(), json }
    }
}

/// Runs the command line `args` (program name first), writing the report
/// to `out`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let json = cli.json;
    let result = dispatch(cli);
    let (code, text, value) = match result {
        Ok(o) => (o.code, o.text, o.json),
        Err(Failure::Usage(m)) => (EXIT_USAGE, format!("error: {m}"), json!({ "error": m })),
        Err(Failure::Budget(m)) => (EXIT_BUDGET, format!("budget exhausted: {m}"), json!({ "budget_exhausted": m })),
    };
    let _ = if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("reports serialise"))
    } else {
        writeln!(out, "{text}")
    };
    code
}

fn lattice(cli: &Cli) -> Result<Lattice, Failure> {
    match &cli.lattice {
        Some(p) => Lattice::load(p),
        None => Lattice::from_env(),
    }
    .map_err(usage)
}

fn term(src: &str) -> Result<Term, Failure> {
    parse_term(src).map_err(usage)
}

fn emit(d: &Derivation, path: &Option<PathBuf>) -> Result<(), Failure> {
    if let Some(p) = path {
        std::fs::write(p, d.to_json_string())?;
    }
    Ok(())
}

fn judgement(d: &Derivation) -> Value {
    serde_json::to_value(d.conclusion.to_json()).expect("judgements serialise")
}

fn dispatch(cli: Cli) -> Result<Outcome, Failure> {
    let lat = lattice(&cli)?;
    match cli.command {
        Command::Parse { expr } => {
            let e = parse_expr(&expr).map_err(usage)?;
            let sort = if e.is_term() { "term" } else { "command" };
            Ok(Outcome::new(EXIT_OK, e.to_string(), json!({ "expr": e.to_string(), "kind": sort, "size": e.size() })))
        }
        Command::Reduce { term: src, strategy } => {
            let m = term(&src)?;
            Ok(match lo_step(&m, matches!(strategy, StrategyArg::Full)) {
                Some((n, site)) => Outcome::new(EXIT_OK, n.to_string(), json!({ "reduct": n.to_string(), "site": site })),
                None => Outcome::new(EXIT_NEGATIVE, "normal", json!({ "reduct": null })),
            })
        }
        Command::Normalize { term: src, strategy, fuel } => match normalize(&term(&src)?, strategy.into(), fuel) {
            Ok((n, steps)) => Ok(Outcome::new(EXIT_OK, n.to_string(), json!({ "normal_form": n.to_string(), "steps": steps }))),
            Err(ReductionError::FuelExhausted { last, steps }) => Err(Failure::Budget(format!("{steps} steps, reached `{last}`"))),
            Err(e) => Err(usage(e)),
        },
        Command::Sn { term: src, budget, strategy } => {
            let v = is_sn(&term(&src)?, budget, matches!(strategy, StrategyArg::Full));
            let code = match v.status {
                SnStatus::SN => EXIT_OK,
                SnStatus::NotSN => EXIT_NEGATIVE,
                SnStatus::Unknown => EXIT_BUDGET,
            };
            let text = format!("{:?} ({} terms explored)", v.status, v.steps_explored);
            Ok(Outcome::new(code, text, json!({ "verdict": v.status, "explored": v.steps_explored, "witness": v.witness })))
        }
        Command::Subtype { inequality, sort, restricted } => {
            let (s, t) = inequality.split_once("<=").ok_or_else(|| usage("expected `S <= T`"))?;
            let s = parse_type(s.trim(), sort).map_err(usage)?;
            let t = parse_type(t.trim(), sort).map_err(usage)?;
            let holds = if restricted { leq_restricted(sort, &s, &t) } else { leq(&lat, sort, &s, &t) }.map_err(usage)?;
            let code = if holds { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(Outcome::new(code, holds.to_string(), json!({ "lhs": s.to_string(), "rhs": t.to_string(), "sort": format!("{sort:?}"), "holds": holds })))
        }
        Command::CheckDerivation { file, restricted } => {
            let d = Derivation::from_json_str(&std::fs::read_to_string(&file)?).map_err(usage)?;
            let mode = if restricted { Mode::Restricted } else { Mode::Full };
            Ok(match check_derivation(&d, mode, &lat) {
                Ok(()) => Outcome::new(EXIT_OK, format!("ok: {}", d.conclusion), json!({ "ok": true, "conclusion": judgement(&d), "nodes": d.node_count() })),
                Err(v) => Outcome::new(EXIT_NEGATIVE, v.to_string(), json!({ "ok": false, "violation": v })),
            })
        }
        Command::TypeNf { term: src, emit: path } => {
            let m = term(&src)?;
            if !is_normal(&Expr::Term(m.clone()), false) {
                return Ok(Outcome::new(EXIT_NEGATIVE, "not in normal form", json!({ "ok": false, "reason": "not in normal form" })));
            }
            let d = synth_nf(&m).map_err(usage)?;
            emit(&d, &path)?;
            Ok(Outcome::new(EXIT_OK, d.conclusion.to_string(), json!({ "ok": true, "conclusion": judgement(&d) })))
        }
        Command::TypeSn { term: src, fuel, emit: path } => match type_sn(&term(&src)?, fuel) {
            Ok(d) => {
                emit(&d, &path)?;
                Ok(Outcome::new(EXIT_OK, d.conclusion.to_string(), json!({ "ok": true, "conclusion": judgement(&d), "nodes": d.node_count() })))
            }
            Err(e @ NotTypeable::Fuel { .. }) => Err(Failure::Budget(e.to_string())),
            Err(e) => Ok(Outcome::new(EXIT_NEGATIVE, e.to_string(), json!({ "ok": false, "reason": e.to_string() }))),
        },
        Command::TranslateParigot { file, restricted, emit: path } => {
            let src = SimpleDerivation::from_json_str(&std::fs::read_to_string(&file)?).map_err(usage)?;
            let (enc, mode) = if restricted { (Encoding::restricted(), Mode::Restricted) } else { (Encoding::psi(), Mode::Full) };
            let d = match translate_derivation(&src, &enc) {
                Ok(d) => d,
                Err(ParigotError::Violation(v)) => {
                    return Ok(Outcome::new(EXIT_NEGATIVE, v.to_string(), json!({ "ok": false, "violation": v })));
                }
                Err(e) => return Err(usage(e)),
            };
            emit(&d, &path)?;
            let report = json!({
                "ok": check_derivation(&d, mode, &lat).is_ok(),
                "conclusion": judgement(&d),
                "source_nodes": src.node_count(),
                "mu_nodes": src.mu_count(),
                "nodes": d.node_count(),
            });
            let code = if report["ok"] == true { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(Outcome::new(code, d.conclusion.to_string(), report))
        }
        Command::Oracle { action, rank, width, size } => {
            let o = Oracle::new(lat.clone(), rank, DEFAULT_POINT_CAP).map_err(oracle_failure)?;
            let (ok, report) = match action {
                OracleAction::Validate => {
                    let r = validate_subtyping(&o, rank, width, size, &Canon::leq).map_err(oracle_failure)?;
                    (r.ok(), serde_json::to_value(&r))
                }
                OracleAction::Coherence => {
                    let r = app_coherence(&o, rank, width, size).map_err(oracle_failure)?;
                    (r.ok(), serde_json::to_value(&r))
                }
                OracleAction::Conservativity => {
                    let r = restricted_conservativity(&lat, rank, width, size).map_err(oracle_failure)?;
                    (r.ok(), serde_json::to_value(&r))
                }
            };
            let report = report.expect("reports serialise");
            let text = serde_json::to_string_pretty(&report).expect("reports serialise");
            Ok(Outcome::new(if ok { EXIT_OK } else { EXIT_NEGATIVE }, text, report))
        }
        Command::Corpus { file, fuel, budget } => {
            let entries = load_corpus(&file)?;
            let base = file.parent().unwrap_or(Path::new("."));
            let reports = run_corpus(&entries, &lat, base, fuel, budget);
            let failed = reports.iter().filter(|r| !r.ok).count();
            let only_unknown = reports.iter().filter(|r| !r.ok).all(|r| r.verdict == SnStatus::Unknown);
            let code = match failed {
                0 => EXIT_OK,
                _ if only_unknown => EXIT_BUDGET,
                _ => EXIT_NEGATIVE,
            };
            let mut text: Vec<String> = reports
                .iter()
                .map(|r| {
                    let status = if r.ok { "ok" } else { "FAIL" };
                    let mut line = format!("{status} {} {:?}", r.id, r.verdict);
                    if let Some(t) = &r.certified_type {
                        line += &format!(" : {t}");
                    }
                    for n in &r.notes {
                        line += &format!("\n    {n}");
                    }
                    line
                })
                .collect();
            text.push(format!("{} entries, {failed} failed", reports.len()));
            let value = json!({ "entries": reports, "total": reports.len(), "failed": failed });
            Ok(Outcome::new(code, text.join("\n"), value))
        }
    }
}

/// Reads a JSONL corpus, validating terms and expected types.
pub fn load_corpus(path: &Path) -> Result<Vec<CorpusEntry>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let at = |e: String| format!("{}:{}: {e}", path.display(), i + 1);
        let entry: CorpusEntry = serde_json::from_str(line).map_err(|e| at(e.to_string()))?;
        parse_term(&entry.term).map_err(|e| at(e.to_string()))?;
        if let Some(t) = &entry.expected_type {
            parse_type(t, Sort::D).map_err(|e| at(e.to_string()))?;
        }
        entries.push(entry);
    }
    Ok(entries)
}

impl From<String> for Failure {
    fn from(m: String) -> Failure {
        Failure::Usage(m)
    }
}

/// Evaluates every entry independently; the result is sorted by id.
pub fn run_corpus(entries: &[CorpusEntry], lat: &Lattice, base: &Path, fuel: usize, budget: usize) -> Vec<EntryReport> {
    let pool = rayon::ThreadPoolBuilder::new().stack_size(WORKER_STACK).build().expect("thread pool builds");
    let mut reports: Vec<EntryReport> =
        pool.install(|| entries.par_iter().map(|e| run_entry(e, lat, base, fuel, budget)).collect());
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    reports
}

fn same_type(lat: &Lattice, found: &Type, expected: &str) -> bool {
    parse_type(expected, Sort::D).is_ok_and(|t| equiv(lat, Sort::D, found, &t).unwrap_or(false))
}

fn run_entry(e: &CorpusEntry, lat: &Lattice, base: &Path, fuel: usize, budget: usize) -> EntryReport {
    let m = parse_term(&e.term).expect("validated on load");
    let v = is_sn(&m, budget, false);
    let mut notes = Vec::new();
    if v.status != e.expect {
        notes.push(format!("expected {:?}", e.expect));
    }
    let mut certified_type = None;
    match (v.status, type_sn(&m, fuel)) {
        (SnStatus::NotSN, Ok(_)) => notes.push("certified although a reduction cycle exists".into()),
        (SnStatus::SN, Err(err)) => notes.push(format!("not certified: {err}")),
        (_, Ok(d)) => {
            if e.derivation_file.is_none() {
                if let Some(t) = &e.expected_type {
                    if !same_type(lat, &d.conclusion.ty, t) {
                        notes.push(format!("certified type `{}` is not `{t}`", d.conclusion.ty));
                    }
                }
            }
            certified_type = Some(d.conclusion.ty.to_string());
        }
        _ => {}
    }
    if let Some(f) = &e.derivation_file {
        if let Err(n) = check_supplied(&m, &base.join(f), e.expected_type.as_deref(), lat) {
            notes.push(n);
        }
    }
    EntryReport {
        id: e.id.clone(),
        term: e.term.clone(),
        expect: e.expect,
        verdict: v.status,
        explored: v.steps_explored,
        certified_type,
        ok: notes.is_empty(),
        notes,
    }
}

/// Checks a supplied certificate in the full system: it must derive a type
/// for the entry's term (up to α), of the expected type when given.
fn check_supplied(m: &Term, path: &Path, expected: Option<&str>, lat: &Lattice) -> Result<(), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let d = Derivation::from_json_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    check_derivation(&d, Mode::Full, lat).map_err(|v| format!("{}: {v}", path.display()))?;
    if !alpha_eq(&d.conclusion.subject, &Expr::Term(m.clone())) {
        return Err(format!("{}: derives `{}`", path.display(), d.conclusion.subject));
    }
    match expected {
        Some(t) if !same_type(lat, &d.conclusion.ty, t) => Err(format!("{}: derives type `{}`", path.display(), d.conclusion.ty)),
        _ => Ok(()),
    }
}
