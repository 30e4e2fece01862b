use lammu::cli::{run, EXIT_BUDGET, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};
use std::path::Path;

fn lammu(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("lammu").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn data(file: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(file).display().to_string()
}

#[test]
fn subtyping_verdicts() {
    assert_eq!(lammu(&["subtype", "psi <= w -> psi", "--sort", "D"]).0, EXIT_OK);
    assert_eq!(lammu(&["subtype", "w -> psi <= psi * w -> psi"]).0, EXIT_OK);
    assert_eq!(lammu(&["subtype", "w <= psi"]).0, EXIT_NEGATIVE);
    assert_eq!(lammu(&["subtype", "(w -> psi) * w <= w", "--sort", "C", "--restricted"]).0, EXIT_OK);
    assert_eq!(lammu(&["subtype", "psi <= w -> psi", "--restricted"]).0, EXIT_USAGE);
    assert_eq!(lammu(&["subtype", "psi"]).0, EXIT_USAGE);
}

#[test]
fn sn_verdicts() {
    let (code, out) = lammu(&["sn", "(\\x.x x)(\\x.x x)"]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert!(out.starts_with("NotSN"));
    assert_eq!(lammu(&["sn", "(\\x.\\y.\\z.x z (y z)) (\\a.\\b.a)"]).0, EXIT_OK);
    assert_eq!(lammu(&["sn", "\\f. (\\x. f (x x)) (\\x. f (x x))", "--budget", "50"]).0, EXIT_BUDGET);
    let (_, json) = lammu(&["--json", "sn", "(\\x.x x)(\\x.x x)"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["verdict"], "NotSN");
}

#[test]
fn certificates_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let cert = cert.to_str().unwrap();
    assert_eq!(lammu(&["type-sn", "(\\x.\\y.\\z.x z (y z)) (\\a.\\b.a)", "--emit", cert]).0, EXIT_OK);
    assert_eq!(lammu(&["check-derivation", cert, "--restricted"]).0, EXIT_OK);
    assert_eq!(lammu(&["type-nf", "\\x. x (\\y. y)", "--emit", cert]).0, EXIT_OK);
    assert_eq!(lammu(&["check-derivation", cert, "--restricted"]).0, EXIT_OK);
    assert_eq!(lammu(&["translate-parigot", &data("peirce.json"), "--restricted", "--emit", cert]).0, EXIT_OK);
    assert_eq!(lammu(&["check-derivation", cert, "--restricted"]).0, EXIT_OK);
    assert_eq!(lammu(&["translate-parigot", &data("peirce.json"), "--emit", cert]).0, EXIT_OK);
    assert_eq!(lammu(&["check-derivation", cert]).0, EXIT_OK);
    assert_eq!(lammu(&["check-derivation", cert, "--restricted"]).0, EXIT_NEGATIVE);
}

#[test]
fn golden_files_check() {
    assert_eq!(lammu(&["check-derivation", &data("goldens/sk-redex.json")]).0, EXIT_OK);
    assert_eq!(lammu(&["check-derivation", &data("goldens/mu-self-app-reduct-restricted.json"), "--restricted"]).0, EXIT_OK);
    assert_eq!(lammu(&["check-derivation", &data("goldens/fixpoint.json"), "--restricted"]).0, EXIT_NEGATIVE);
}

#[test]
fn reduction_commands() {
    assert_eq!(lammu(&["parse", "mu a.[a] x x"]), (EXIT_OK, "mu a.[a] x x\n".into()));
    assert_eq!(lammu(&["parse", "(\\x.x"]).0, EXIT_USAGE);
    assert_eq!(lammu(&["reduce", "(\\x. x) y"]), (EXIT_OK, "y\n".into()));
    assert_eq!(lammu(&["reduce", "\\x. x"]).0, EXIT_NEGATIVE);
    assert_eq!(lammu(&["reduce", "[a] mu b.[b] x", "--strategy", "full"]).0, EXIT_USAGE);
    assert_eq!(lammu(&["reduce", "mu c.[a] mu b.[b] x", "--strategy", "full"]), (EXIT_OK, "mu c.[a] x\n".into()));
    assert_eq!(lammu(&["normalize", "(\\x.x x)(\\x.x x)", "--fuel", "50"]).0, EXIT_BUDGET);
    assert_eq!(lammu(&["normalize", "(\\x y. x) a b"]), (EXIT_OK, "a\n".into()));
    assert_eq!(lammu(&["type-nf", "(\\x. x) y"]).0, EXIT_NEGATIVE);
    assert_eq!(lammu(&["type-sn", "(\\x.x x)(\\x.x x)", "--fuel", "100"]).0, EXIT_BUDGET);
}

#[test]
fn usage_errors() {
    assert_eq!(lammu(&["bogus"]).0, EXIT_USAGE);
    assert_eq!(lammu(&["sn"]).0, EXIT_USAGE);
    assert_eq!(lammu(&["--help"]).0, EXIT_OK);
    assert_eq!(lammu(&["check-derivation", "/nonexistent/cert.json"]).0, EXIT_USAGE);
    assert_eq!(lammu(&["--lattice", "/nonexistent/lattice", "sn", "x"]).0, EXIT_USAGE);
}

#[test]
fn oracle_reports() {
    assert_eq!(lammu(&["oracle", "--rank", "1", "--size", "5"]).0, EXIT_OK);
    assert_eq!(lammu(&["oracle", "coherence", "--rank", "1", "--size", "5"]).0, EXIT_OK);
    assert_eq!(lammu(&["oracle", "conservativity"]).0, EXIT_OK);
}

#[test]
fn custom_lattice() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chain3");
    std::fs::write(&path, "elements: lo mid hi\ncover: lo mid\ncover: mid hi\nbottom: lo\ntop: hi\n").unwrap();
    let path = path.to_str().unwrap();
    assert_eq!(lammu(&["--lattice", path, "subtype", "psi_hi <= psi_mid", "--sort", "R"]).0, EXIT_OK);
    assert_eq!(lammu(&["--lattice", path, "subtype", "psi_mid <= psi_hi", "--sort", "R"]).0, EXIT_NEGATIVE);
    assert_eq!(lammu(&["--lattice", path, "oracle", "--rank", "1", "--size", "5"]).0, EXIT_OK);
}

#[test]
fn corpus_runs_are_deterministic() {
    let args = ["--json", "corpus", &data("corpus.jsonl"), "--budget", "500", "--fuel", "500"];
    let (code, first) = lammu(&args);
    assert_eq!(code, EXIT_OK, "{first}");
    let (_, second) = lammu(&args);
    assert_eq!(first, second);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    let ids: Vec<&str> = v["entries"].as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn corpus_failures_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.jsonl");
    std::fs::write(&path, "{\"id\": \"omega\", \"term\": \"(\\\\x. x x) (\\\\x. x x)\", \"expect\": \"SN\"}\n").unwrap();
    assert_eq!(lammu(&["corpus", path.to_str().unwrap(), "--fuel", "100"]).0, EXIT_NEGATIVE);
    std::fs::write(&path, "{\"id\": \"x\", \"term\": \"(\\\\x. x\", \"expect\": \"SN\"}\n").unwrap();
    assert_eq!(lammu(&["corpus", path.to_str().unwrap()]).0, EXIT_USAGE);
    std::fs::write(&path, "{\"id\": \"id\", \"term\": \"\\\\x. x\", \"expect\": \"SN\", \"expected_type\": \"w -> psi\"}\n").unwrap();
    assert_eq!(lammu(&["corpus", path.to_str().unwrap()]).0, EXIT_NEGATIVE);
}
