use abslogic::cli::{execute_command, EXIT_FAIL, EXIT_OK, EXIT_USAGE};

fn theory(name: &str) -> String {
    format!("{}/theories/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn al(args: &[&str]) -> (i32, String) {
    execute_command(std::iter::once("al").chain(args.iter().copied()))
}

#[test]
fn json_report_has_the_documented_shape() {
    let (code, out) = al(&["check", &theory("errors/mp_mismatch.al"), "--json"]);
    assert_eq!(code, EXIT_FAIL);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["file"].as_str().unwrap().ends_with("mp_mismatch.al"));
    let blocks = v["blocks"].as_array().unwrap();
    assert_eq!(blocks[0]["kind"], "logic");
    let t = &blocks[1];
    assert_eq!(
        (t["name"].as_str(), t["kind"].as_str(), t["verdict"].as_str()),
        (Some("t"), Some("theorem"), Some("fail"))
    );
    let d = &t["diagnostics"][0];
    assert_eq!(d["code"], "mp-mismatch");
    assert_eq!(d["severity"], "error");
    assert_eq!((d["span"]["line"].as_u64(), d["span"]["column"].as_u64()), (Some(7), Some(3)));
}

#[test]
fn model_check_reports_counterexamples() {
    let (code, out) = al(&["model-check", &theory("inconsistent_d.al"), "--model", "boolean"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("FAIL axiom X"), "{out}");
    assert!(out.contains("model boolean: FAIL, 5/6 axioms"), "{out}");

    let (code, out) = al(&["model-check", &theory("three_valued_k.al"), "--model", "three", "--json"]);
    assert_eq!(code, EXIT_FAIL);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["blocks"].as_array().unwrap().iter().any(|b| b["diagnostics"][0]["code"] == "counterexample"));
}

#[test]
fn models_load_from_other_files() {
    let (code, out) =
        al(&["model-check", &theory("prelude_k.al"), "--model", &theory("boolean_k.al"), "--arity-cap", "1"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("21/21 axioms"));
    // Restricted to D's signature; the failed theorem is not model-checked.
    let (code, out) = al(&["model-check", &theory("errors/all_mismatch.al"), "--model", &theory("boolean_k.al")]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("5/5 axioms"), "{out}");
}

#[test]
fn eval_with_assignments() {
    let k = theory("prelude_k.al");
    let cases = [
        ("A -> B", "A=T,B=F", "F"),
        ("A -> B", "A=F,B=F", "T"),
        ("all x. f[x]", "f/1=[T F]", "F"),
        ("ex x. f[x]", "f/1=[F T]", "T"),
        ("A", "", "T"),
    ];
    for (term, assign, expected) in cases {
        let (code, out) = al(&["eval", &k, "--term", term, "--assign", assign]);
        assert_eq!((code, out.trim()), (EXIT_OK, expected), "{term} with {assign}");
    }
    let (code, out) =
        al(&["eval", &theory("three_valued_k.al"), "--term", "A -> B", "--model", "three", "--assign", "A=T,B=U"]);
    assert_eq!((code, out.trim()), (EXIT_OK, "U"));
}

#[test]
fn usage_errors_exit_with_two() {
    let k = theory("prelude_k.al");
    for args in [
        vec!["frobnicate"],
        vec!["check"],
        vec!["check", "/no/such/file.al"],
        vec!["eval", &k, "--term", "A ->"],
        vec!["eval", &k, "--term", "A", "--assign", "A=maybe"],
        vec!["eval", &k, "--term", "A", "--model", "nonexistent"],
        vec!["model-check", &theory("peano.al"), "--model", "boolean"],
    ] {
        let (code, out) = al(&args);
        assert_eq!(code, EXIT_USAGE, "{args:?}: {out}");
    }
    let (code, out) = al(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("model-check"));
}

#[test]
fn parse_errors_carry_spans() {
    let dir = std::env::temp_dir().join("al-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.al");
    std::fs::write(&path, "logic K\n\ntheorem t : A ->\nproof\nqed\n").unwrap();
    let (code, out) = al(&["check", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("broken.al:4:1: error[syntax]"), "{out}");
}

#[test]
fn unicode_output() {
    let (code, out) = al(&["--unicode", "eval", &theory("prelude_k.al"), "--term", "all x. x -> x", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["term"], "∀ x. x ⇒ x");
    assert_eq!(v["value"], "T");
}
