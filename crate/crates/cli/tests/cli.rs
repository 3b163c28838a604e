use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cfwp::alphabet::words_up_to;
use cfwp_cli::{evaluate, Object, SpecDocument};
use serde_json::{json, Value};

fn spec(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name)
}

fn cfwp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfwp")).args(args).output().expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = cfwp(args);
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write_doc(dir: &tempfile::TempDir, name: &str, doc: &Value) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string_pretty(doc).unwrap()).unwrap();
    p.to_string_lossy().into_owned()
}

fn path(name: &str) -> String {
    spec(name).to_string_lossy().into_owned()
}

#[test]
fn bicyclic_rewriting_spec_builds_an_oracle_fixture() {
    let (code, out, _) = run(&["build", &path("bicyclic.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("recognizer: none"), "{out}");
    assert!(out.contains("oracle: rewriting normal forms"), "{out}");
}

#[test]
fn non_associative_table_names_the_triple() {
    let dir = tempfile::tempdir().unwrap();
    let doc = json!({
        "version": 1,
        "definitions": [
            {"name": "t", "kind": "finite_semigroup", "elements": ["x", "y"], "table": [["y", "x"], ["x", "x"]]}
        ],
        "target": "t"
    });
    let (code, _, err) = run(&["build", &write_doc(&dir, "t.json", &doc)]);
    assert_eq!(code, 2);
    assert!(err.contains("in definition `t`"), "{err}");
    assert!(err.contains("not associative"), "{err}");
}

#[test]
fn hypothesis_violations_exit_3() {
    let (code, _, err) = run(&["build", &path("null-product.json")]);
    assert_eq!(code, 3, "{err}");
    assert!(err.contains("decomposable"), "{err}");
    let (code, _, err) = run(&["build", &path("br-free.json")]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn malformed_documents_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let dangling = json!({
        "version": 1,
        "definitions": [{"name": "w", "kind": "rewriting_word_problem", "system": "missing"}],
        "target": "w"
    });
    let (code, _, err) = run(&["build", &write_doc(&dir, "d.json", &dangling)]);
    assert_eq!(code, 2);
    assert!(err.contains("`missing`"), "{err}");

    let forward = json!({
        "version": 1,
        "definitions": [
            {"name": "w", "kind": "rewriting_word_problem", "system": "r"},
            {"name": "r", "kind": "rewriting", "alphabet": ["a"], "rules": []}
        ],
        "target": "w"
    });
    let (code, _, err) = run(&["build", &write_doc(&dir, "f.json", &forward)]);
    assert_eq!(code, 2);
    assert!(err.contains("not defined before it"), "{err}");

    let version = json!({"version": 7, "definitions": [], "target": "x"});
    assert_eq!(run(&["build", &write_doc(&dir, "v.json", &version)]).0, 2);
    assert_eq!(run(&["build", "/nonexistent/spec.json"]).0, 2);

    let short_rule = json!({
        "version": 1,
        "definitions": [
            {"name": "r", "kind": "rewriting", "alphabet": ["a"], "rules": [{"rhs": "a", "lhs": {"words": [["a"]]}}]}
        ],
        "target": "r"
    });
    assert_eq!(run(&["build", &write_doc(&dir, "s.json", &short_rule)]).0, 2);
}

#[test]
fn queries() {
    let (code, out, _) = run(&["query", &path("bicyclic.json"), "--left", "bc", "--right", ""]);
    assert_eq!((code, out.starts_with("accept")), (0, true), "{out}");
    assert_eq!(run(&["query", &path("bicyclic.json"), "--left", "cb", "--right", ""]).0, 1);
    assert_eq!(run(&["query", &path("free-monoid.json"), "--left", "ab", "--right", "ab"]).0, 0);
    assert_eq!(run(&["query", &path("free-monoid.json"), "--left", "ab", "--right", "ba"]).0, 1);
    assert_eq!(run(&["query", &path("free-monoid.json"), "--left", "az", "--right", "a"]).0, 2);
    assert_eq!(run(&["query", &path("br-c2.json"), "--left", "ba", "--right", "ab"]).0, 0);
    let rees = path("rees-c2.json");
    assert_eq!(run(&["query", &rees, "--left", "(1,e,2) (2,e,1)", "--right", "(1,a,1)"]).0, 0);
    assert_eq!(run(&["query", &rees, "--left", "", "--right", "(1,a,1)"]).0, 2);
}

#[test]
fn crosschecks() {
    let (code, out, _) = run(&["crosscheck", &path("bicyclic-fixture.json"), "--max-left", "5", "--max-right", "5", "--jobs", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("queries: 3969"), "{out}");
    assert!(out.contains("mismatches: 0"), "{out}");

    let (code, out, _) = run(&["crosscheck", &path("free-group.json"), "--max-left", "0", "--max-right", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("queries: 1"), "{out}");

    assert_eq!(run(&["crosscheck", &path("bicyclic.json"), "--max-left", "2", "--max-right", "2"]).0, 2);

    let sampled = |seed: &str| run(&["crosscheck", &path("c2-free-product.json"), "--max-left", "6", "--max-right", "6", "--sample", "200", "--seed", seed]);
    let (code, a, _) = sampled("7");
    assert_eq!(code, 0, "{a}");
    assert_eq!(a, sampled("7").1);
}

/// Drops transitions from the exported free-monoid machine until the
/// cross-check notices.
#[test]
fn mutated_machine_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let (code, exported, _) = run(&["export", &path("free-monoid.json"), "--what", "pda"]);
    assert_eq!(code, 0);
    let mut pda: Value = serde_json::from_str(&exported).unwrap();
    let def = &mut pda["definitions"][0];
    def["name"] = json!("broken");
    let moves = def["transitions"].as_array_mut().unwrap();
    let victim = moves.iter().position(|m| m["read"] == json!("b")).unwrap();
    moves.remove(victim);
    let doc = json!({
        "version": 1,
        "definitions": [
            {"name": "ab", "kind": "free_monoid", "letters": ["a", "b"]},
            def.clone(),
            {"name": "w", "kind": "with_recognizer", "base": "ab", "recognizer": "broken"}
        ],
        "target": "w"
    });
    let (code, out, err) = run(&["crosscheck", &write_doc(&dir, "m.json", &doc), "--max-left", "2", "--max-right", "2"]);
    assert_eq!(code, 1, "{out}{err}");
    assert!(out.contains("recognizer rejects, oracle equal"), "{out}");
}

fn language(doc: &SpecDocument) -> cfwp::pda::LanguageRep {
    match evaluate(doc).unwrap() {
        Object::WordProblem(w, _) => w.recognizer().unwrap().clone(),
        Object::Language(l) => l,
        o => panic!("no language: {}", o.kind()),
    }
}

#[test]
fn exported_pda_reads_back_to_the_same_language() {
    let (code, text, _) = run(&["export", &path("bicyclic-fixture.json"), "--what", "pda"]);
    assert_eq!(code, 0);
    let back = language(&SpecDocument::parse(&text).unwrap());
    let orig = language(&SpecDocument::parse(&std::fs::read_to_string(spec("bicyclic-fixture.json")).unwrap()).unwrap());
    let letters: Vec<String> = ["b", "c", "#"].iter().map(|s| s.to_string()).collect();
    for w in words_up_to(&letters, 6) {
        assert_eq!(back.accepts(&w).unwrap(), orig.accepts(&w).unwrap(), "{w:?}");
    }
    let again = run(&["export", &path("bicyclic-fixture.json"), "--what", "pda"]).1;
    assert_eq!(text, again);
}

#[test]
fn exported_grammar_reparses_and_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text, _) = run(&["export", &path("bicyclic-fixture.json"), "--what", "cfg"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("start: "), "{text}");
    let doc = json!({
        "version": 1,
        "definitions": [{"name": "g", "kind": "grammar", "terminals": ["b", "c", "#"], "text": text}],
        "target": "g"
    });
    let p = write_doc(&dir, "g.json", &doc);
    let back = language(&SpecDocument::parse(&std::fs::read_to_string(&p).unwrap()).unwrap());
    let orig = language(&SpecDocument::parse(&std::fs::read_to_string(spec("bicyclic-fixture.json")).unwrap()).unwrap());
    let letters: Vec<String> = ["b", "c", "#"].iter().map(|s| s.to_string()).collect();
    for w in words_up_to(&letters, 5) {
        assert_eq!(back.accepts(&w).unwrap(), orig.accepts(&w).unwrap(), "{w:?}");
    }
}

#[test]
fn dot_export_has_one_node_per_state() {
    let (code, text, _) = run(&["export", &path("free-group.json"), "--what", "dot"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("digraph"));
    let nodes = text.lines().filter(|l| l.contains("shape=circle") || l.contains("shape=doublecircle")).count();
    assert_eq!(nodes, 2);
}

#[test]
fn exporting_from_an_oracle_only_target_fails() {
    assert_eq!(run(&["export", &path("bicyclic.json"), "--what", "pda"]).0, 2);
    assert_eq!(run(&["export", &path("bicyclic.json"), "--what", "cfg"]).0, 2);
}

#[test]
fn automata_and_gsms_in_documents() {
    let dir = tempfile::tempdir().unwrap();
    let doc = json!({
        "version": 1,
        "definitions": [
            {"name": "ab", "kind": "free_monoid", "letters": ["a", "b"]},
            {"name": "only_a", "kind": "nfa", "alphabet": ["a", "b", "#"], "initial": ["p"], "finals": ["q"],
             "transitions": [["p", "a", "p"], ["p", "#", "q"], ["q", "a", "q"]]},
            {"name": "cut", "kind": "intersect_regular", "pda": "ab", "nfa": "only_a"},
            {"name": "swap", "kind": "gsm", "input": ["a", "b", "#"], "output": ["a", "b", "#"], "initial": "s",
             "transitions": [["s", "a", "s", ["b"]], ["s", "b", "s", ["a"]], ["s", "#", "s", ["#"]]],
             "finals": [["s", []]]},
            {"name": "swapped", "kind": "inverse_gsm", "pda": "ab", "gsm": "swap"},
            {"name": "w", "kind": "with_recognizer", "base": "ab", "recognizer": "swapped"}
        ],
        "target": "w"
    });
    let p = write_doc(&dir, "a.json", &doc);
    let (code, out, err) = run(&["crosscheck", &p, "--max-left", "3", "--max-right", "3"]);
    assert_eq!(code, 0, "{out}{err}");

    let d = SpecDocument::parse(&std::fs::read_to_string(&p).unwrap()).unwrap();
    let mut cut = d.clone();
    cut.target = "cut".into();
    let l = language(&cut);
    let w = |s: &str| cfwp::word(s);
    assert!(l.accepts(&w("aa#aa")).unwrap());
    assert!(!l.accepts(&w("ab#ba")).unwrap());

    let mut g = d.clone();
    g.target = "swap".into();
    let gp = write_doc(&dir, "g.json", &serde_json::from_str(&g.to_json()).unwrap());
    let (code, dot, _) = run(&["export", &gp, "--what", "dot"]);
    assert_eq!(code, 0);
    assert!(dot.contains("a / b"), "{dot}");
    assert_eq!(run(&["export", &gp, "--what", "cfg"]).0, 2);
    assert_eq!(run(&["query", &gp, "--left", "a", "--right", "a"]).0, 2);
}

#[test]
fn constructions_from_documents() {
    for (file, bound) in [
        ("c2-free-product.json", "3"),
        ("direct-factor.json", "3"),
        ("semilattice-integers.json", "2"),
        ("rees-c2.json", "2"),
        ("br-c2.json", "2"),
    ] {
        let (code, out, err) = run(&["crosscheck", &path(file), "--max-left", bound, "--max-right", bound]);
        assert_eq!(code, 0, "{file}: {out}{err}");
    }
    let (code, out, _) = run(&["build", &path("br-c2.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("n = 1, i = 0, p = 1, m = 1"), "{out}");
    let (_, out, _) = run(&["build", &path("c2-free-product.json")]);
    assert!(out.contains("relabeled `a`"), "{out}");
    assert_eq!(run(&["query", &path("c2-free-product.json"), "--left", "", "--right", ""]).0, 0);
    let (code, out, _) = run(&["build", &path("hyperbolic-bicyclic.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("pda with"), "{out}");
}
