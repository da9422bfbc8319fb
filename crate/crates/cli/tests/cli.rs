use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weakprod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

/// Projections of a rectangular-band element `((a,b),(c,d))`, computed by
/// hand from the literal.
fn rect_projections(t: &str) -> (String, String) {
    let inner = t.trim().strip_prefix('(').unwrap().strip_suffix(')').unwrap();
    let (l, r) = inner.split_once("),(").unwrap();
    let (l, r) = (l.trim_start_matches('('), r.trim_end_matches(')'));
    let (a, b) = l.split_once(',').unwrap();
    let (c, d) = r.split_once(',').unwrap();
    (format!("({a},{c})"), format!("({b},{d})"))
}

#[test]
fn catalog_lists_flags() {
    let o = run(&["catalog"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let line = |name: &str| out.lines().find(|l| l.starts_with(name)).unwrap().to_string();
    assert!(line("nonempty-powerset").contains("connected=yes constant=no"));
    assert!(line("maybe").contains("connected=no constant=yes"));
    assert_eq!(out.lines().count(), 8);
}

#[test]
fn check_theorem1_on_powerset() {
    let o = run(&["check", "nonempty-powerset", "--suite", "theorem1", "--max-size", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("0 unexpected"));
}

#[test]
fn check_diag_quotient_pullbacks_confirms_failure_branch() {
    let o = run(&["check", "diag-quotient", "--suite", "pullbacks", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let c = &v["checks"][0];
    assert_eq!(c["verdict"], "fails");
    assert_eq!(c["expected"], "fails");
    assert_eq!(c["confirmed"], true);
    assert!(c["witness"].as_str().unwrap().contains("mediator"));
}

#[test]
fn check_unknown_name_is_usage_error() {
    assert_eq!(code(&run(&["check", "nosuch", "--suite", "laws"])), 2);
    assert_eq!(code(&run(&["check", "maybe", "--suite", "nosuch"])), 2);
    assert_eq!(code(&run(&[])), 2);
}

#[test]
fn every_catalog_entry_passes_every_suite() {
    for name in [
        "identity",
        "maybe",
        "list",
        "nonempty-powerset",
        "rect-band",
        "diag-quotient",
        "trivial",
    ] {
        let o = run(&["check", name, "--max-size", "2"]);
        assert_eq!(code(&o), 0, "{name}: {}", stdout(&o));
    }
}

#[test]
fn structured_report_is_canonical() {
    let args = ["check", "list", "--suite", "all", "--max-size", "2", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["subject"], "list");
    for c in v["checks"].as_array().unwrap() {
        assert!(c["check"].is_string() && c["verdict"].is_string());
        assert_eq!(c["bound"], "under bound 2");
        if c["verdict"] == "fails" {
            assert!(c["witness"].is_string());
        }
    }
}

#[test]
fn split_rect_band() {
    let o = run(&[
        "split",
        "rect-band",
        "--a1",
        "{a,b}",
        "--a2",
        "{x,y}",
        "--p",
        "(a,b)",
        "--q",
        "(y,x)",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    let t = out.lines().find_map(|l| l.strip_prefix("t = ")).unwrap();
    assert_eq!(t, "((a,y),(b,x))");
    assert_eq!(rect_projections(t), ("(a,b)".to_string(), "(y,x)".to_string()));
    assert!(out.contains("τ(a) = "));
}

#[test]
fn split_powerset_is_product_of_sets() {
    let o = run(&[
        "split",
        "nonempty-powerset",
        "--a1",
        "{a}",
        "--a2",
        "{x,y}",
        "--p",
        "{a}",
        "--q",
        "{x,y}",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("t = {(a,x),(a,y)}"));
}

#[test]
fn split_errors() {
    let o = run(&[
        "split", "maybe", "--a1", "{a}", "--a2", "{x}", "--p", "none()", "--q", "none()",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("monad is not connected"));
    let o = run(&[
        "split",
        "rect-band",
        "--a1",
        "{a",
        "--a2",
        "{x}",
        "--p",
        "(a,a)",
        "--q",
        "(x,x)",
    ]);
    assert_eq!(code(&o), 2);
    let o = run(&[
        "split",
        "rect-band",
        "--a1",
        "{a}",
        "--a2",
        "{x}",
        "--p",
        "(a,z)",
        "--q",
        "(x,x)",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_paper_default_passes() {
    let o = run(&["verify-paper"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("[pass]")).count(), 10);
    assert!(out.contains("9 of 9 targets hit"));
}

#[test]
fn verify_paper_degenerate_size_is_vacuous() {
    let o = run(&["verify-paper", "--max-size", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("[vacuous-pass]"));
}

#[test]
fn verify_paper_with_mutant_fails() {
    let o = run(&["verify-paper", "--inject-mutant"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    let bad = out.lines().find(|l| l.starts_with("[FAIL]")).unwrap();
    assert!(bad.contains("misses"), "{bad}");
}

#[test]
fn load_documents() {
    let o = run(&["load", &fixture("maybe.json")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("connected=no constant=yes"));

    let o = run(&["load", &fixture("broken.json")]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("composition law"));
    assert!(stderr(&o).contains("F(g∘f) vs F(g)∘F(f)"));

    assert_eq!(code(&run(&["load", &fixture("schema_error.json")])), 2);
    assert_eq!(code(&run(&["load", &fixture("does-not-exist.json")])), 2);
}

#[test]
fn loaded_document_can_be_checked() {
    let o = run(&["check", "maybe", "--with", &fixture("maybe.json"), "--suite", "laws"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = run(&[
        "check",
        "maybe",
        "--with",
        &fixture("maybe.json"),
        "--suite",
        "connected",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = run(&["check", "broken-swap", "--with", &fixture("broken.json")]);
    assert_eq!(code(&o), 1);
}

#[test]
fn export_round_trips() {
    let o = run(&["export", "rect-band", "--max-size", "2"]);
    assert_eq!(code(&o), 0);
    let path = std::env::temp_dir().join(format!("rect-band-{}.json", std::process::id()));
    std::fs::write(&path, &o.stdout).unwrap();
    let l = run(&["load", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code(&l), 0, "{}", stderr(&l));
    assert!(stdout(&l).contains("connected=yes constant=no"));
    assert_eq!(code(&run(&["export", "list"])), 2);
}
