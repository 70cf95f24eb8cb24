use cycount::cli::{default_corpus_dir, run, EXIT_OK, EXIT_USAGE};

fn call(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cycount".to_string()).chain(args.iter().map(|s| s.to_string()));
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn corpus(name: &str) -> String {
    default_corpus_dir().join(name).display().to_string()
}

#[test]
fn rulings_of_closed_and_open_words() {
    let (code, out) = call(&["rulings", "--tangle", &corpus("unknot.tng"), "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), r#"{"polynomial":{"-1":1}}"#);

    let (code, out) = call(&["rulings", "--tangle", &corpus("cusp_crossing.tng"), "--json"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("\"matrix\""));
}

#[test]
fn augcount_hopf_values() {
    let (code, out) = call(&["augcount", "--tangle", &corpus("hopf_k0.tng"), "--q", "2,3", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    // integral values are JSON integers, the rest exact strings
    assert_eq!(v["values"][0]["value"], serde_json::json!(3));
    assert_eq!(v["values"][1]["value"], serde_json::json!("7/4"));
}

#[test]
fn hall_checks_pass() {
    let (code, _) = call(&["hall", "--instance", "nakayama", "--param", "3", "--check", "associativity", "--json"]);
    assert_eq!(code, EXIT_OK);
    let (code, _) = call(&["hall", "--instance", "nilpotent", "--param", "2", "--check", "heart", "--json"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["rulings", "--tangle", "/nonexistent.tng"]).0, EXIT_USAGE);
    assert_eq!(call(&["hall", "--instance", "nakayama", "--check", "heart"]).0, EXIT_USAGE);
    let empty = std::env::temp_dir().join("cycount_empty_corpus");
    std::fs::create_dir_all(&empty).unwrap();
    assert_eq!(call(&["verify", "--suite", "rulings", "--corpus", &empty.display().to_string()]).0, EXIT_USAGE);
}

#[test]
fn verify_single_suite() {
    let (code, out) = call(&["verify", "--suite", "hopf", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("\"passed\":true"));
}
