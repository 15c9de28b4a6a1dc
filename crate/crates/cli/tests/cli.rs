//! End-to-end runs of the `wseq` binary: exit codes, text output shape,
//! JSON determinism, and the resource-bound environment override.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wseq"))
}

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn wseq")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_dga(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    let mut f = std::fs::File::create(&p).unwrap();
    f.write_all(text.as_bytes()).unwrap();
    p
}

#[test]
fn homology_prints_module_and_algebra_columns() {
    let o = run(&["homology", &fixture("ex39_partial.dga")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.lines().any(|l| l.starts_with("degree 1:") && l.contains("H(V,d) = Z")), "{}", s);
    assert!(s.contains("H(T(V<=4))"), "{}", s);
}

#[test]
fn parse_errors_exit_2_with_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = temp_dga(&dir, "bad.dga", "generator a 1\ngenerator c 3\nd c = 2 a*a + q\n");
    let o = run(&["homology", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("line 3, column 15"), "{}", e);
    assert!(e.contains("unknown generator q"), "{}", e);
    assert!(o.stdout.is_empty());
}

#[test]
fn missing_files_exit_2() {
    let o = run(&["homology", "/nonexistent/x.dga"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn empty_ranges_are_rejected_by_the_parser() {
    let o = run(&["whitehead", &fixture("ex39_delta.dga"), "--range", "5..2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("empty range"), "{}", stderr(&o));
}

#[test]
fn an_oversized_degree_one_alphabet_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::new();
    for i in 0..150 {
        text.push_str(&format!("generator g{} 1\n", i));
    }
    let p = temp_dga(&dir, "many.dga", &text);
    let o = run(&["homology", p.to_str().unwrap(), "--max-degree", "2"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("resource bound"), "{}", stderr(&o));
}

#[test]
fn the_word_cap_env_var_moves_the_bound_both_ways() {
    let dir = tempfile::tempdir().unwrap();
    let p = temp_dga(&dir, "two.dga", "generator a 1\ngenerator b 1\n");
    let p = p.to_str().unwrap();

    let low = bin()
        .args(["homology", p, "--max-degree", "4"])
        .env("WSEQ_WORD_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(low.status.code(), Some(3), "{}", stderr(&low));
    assert!(stderr(&low).contains("cap is 10"), "{}", stderr(&low));

    let high = bin()
        .args(["homology", p, "--max-degree", "4"])
        .env("WSEQ_WORD_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(high.status.code(), Some(0), "{}", stderr(&high));
    // free algebra on two degree-1 letters, zero differential
    assert!(stdout(&high).contains("Z^16"), "{}", stdout(&high));

    let bad = bin()
        .args(["homology", p])
        .env("WSEQ_WORD_CAP", "frog")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("WSEQ_WORD_CAP"), "{}", stderr(&bad));
}

#[test]
fn classify_with_the_gamma_table_counts_18() {
    let o = run(&[
        "classify",
        &fixture("example25.hgr"),
        "--provider",
        &format!("table:{}", fixture("example25.gtab")),
        "--max-degree",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("stages: 2 4 12 18"), "{}", s);
    assert!(s.contains("count: 18"), "{}", s);
    assert!(s.contains("gamma 9 = 0 | Z2"), "{}", s);
}

#[test]
fn classify_closed_form_counts_54() {
    let o = run(&[
        "classify",
        &fixture("example25.hgr"),
        "--provider",
        "closed-form",
        "--max-degree",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("stages: 2 4 12 54"), "{}", s);
    assert!(s.contains("count: 54"), "{}", s);
    assert!(s.contains("gamma 9 = Z3 | Z6"), "{}", s);
    assert!(s.contains("Tor(H4, H4)"), "{}", s);
}

#[test]
fn an_infinite_family_is_reported_with_exit_0() {
    let o = run(&[
        "classify",
        &fixture("infinite.hgr"),
        "--provider",
        "realized",
        "--max-degree",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("INFINITE at degree 3"), "{}", stdout(&o));

    // the closed forms refuse this input instead of guessing
    let o = run(&[
        "classify",
        &fixture("infinite.hgr"),
        "--provider",
        "closed-form",
        "--max-degree",
        "6",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["outcome"], "unknown");
    assert!(v["reason"].as_str().unwrap().contains("degree 3"));
}

#[test]
fn split_output_reparses_and_passes_the_perfectness_check() {
    let o = run(&["split", &fixture("ex39_delta.dga"), "--range", "2..4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("d c1 = 2 b1"), "{}", s);
    assert!(s.contains("# pi 2: ambient = Z2, trivial = false"), "{}", s);
    assert!(s.contains("# pi 3: ambient = Z2, trivial = true"), "{}", s);

    let dir = tempfile::tempdir().unwrap();
    let p = temp_dga(&dir, "perfect.dga", &s);
    let o2 = run(&["whitehead", p.to_str().unwrap(), "--range", "2..4"]);
    assert_eq!(o2.status.code(), Some(0), "{}", stderr(&o2));
    let s2 = stdout(&o2);
    assert!(s2.contains("perfect on 2..4: true"), "{}", s2);
    assert!(s2.contains("exactness: verified"), "{}", s2);
}

#[test]
fn compare_answers_yes_with_a_witness_and_no_without() {
    let d = fixture("ex39_delta.dga");
    let o = run(&["compare", &d, &d, "--range", "2..3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("isomorphic: yes"), "{}", s);
    assert!(s.contains("f 2 ="), "{}", s);
    assert!(s.contains("gamma 2 ="), "{}", s);
    assert!(s.contains("h 2 ="), "{}", s);

    let o = run(&["compare", &d, &fixture("ex39_psi.dga"), "--range", "2..3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("isomorphic: no"), "{}", stdout(&o));
}

#[test]
fn json_output_is_deterministic_and_well_formed() {
    let args = [
        "classify",
        &fixture("example25.hgr"),
        "--provider",
        "closed-form",
        "--max-degree",
        "10",
        "--json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "two runs must emit identical bytes");

    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["outcome"], "finite");
    assert_eq!(v["count"], 54);
    assert_eq!(v["stages"], serde_json::json!([2, 4, 12, 54]));

    let w = run(&["whitehead", &fixture("ex39_psi.dga"), "--range", "2..3", "--json"]);
    assert_eq!(w.status.code(), Some(0), "{}", stderr(&w));
    let v: serde_json::Value = serde_json::from_str(&stdout(&w)).unwrap();
    assert_eq!(v["exactness"], "verified");
    assert_eq!(v["degrees"][0]["degree"], 2);
}

#[test]
fn annotations_travel_from_input_files_into_reports() {
    let o = run(&["homology", &fixture("ex39_partial.dga"), "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let notes = v["notes"].as_array().unwrap();
    assert!(!notes.is_empty(), "fixture annotations should surface in notes");
}

#[test]
#[ignore = "walks a ~256-element automorphism product over 54 systems; ~15 s in debug builds"]
fn orbit_equivalence_quotients_the_naive_count() {
    let o = run(&[
        "classify",
        &fixture("example25.hgr"),
        "--provider",
        "closed-form",
        "--max-degree",
        "10",
        "--equivalence",
        "orbit",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("stages: 2 4 12 54"), "{}", s);
    assert!(s.contains("count: 24"), "{}", s);
}
