use moldkit_cli::{parse_rep_document, run, CliError};

fn write(dir: &std::path::Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn documents_from_the_format_description() {
    let d = parse_rep_document(r#"{"field":{"p":2},"mode":"monoid","generators":[[[0,1],[1,0]]]}"#).unwrap();
    assert_eq!(d.generators.len(), 1);
    let d = parse_rep_document(r#"{"field":"Q","generators":[[[1,"1/2"],[0,1]]]}"#).unwrap();
    assert_eq!(d.generators[0].at(0, 1).to_string(), "1/2");
    assert_eq!(d.mode, moldkit::Mode::Monoid);
}

#[test]
fn validation_errors_carry_a_path() {
    let e = parse_rep_document(r#"{"field":{"p":3},"mode":"group","generators":[[[1,0],[0,1]],[[1,1],[1,1]]]}"#)
        .unwrap_err();
    assert!(matches!(&e, CliError::Validation { path, .. } if path == "$.generators[1]"), "{e}");
    for bad in [
        r#"{"field":{"p":4},"generators":[[[1,0],[0,1]]]}"#,
        r#"{"field":{"p":5},"generators":[[[1,"1/2"],[0,1]]]}"#,
        r#"{"field":"Q","generators":[[[1,0.5],[0,1]]]}"#,
        r#"{"field":"Q","generators":[[[1,0],[0,1]]],"words":["1,-1"]}"#,
        r#"{"field":"Q","generators":[[[1,0],[0,1]]],"words":["2"]}"#,
        r#"{"field":"Q","generators":[]}"#,
        r#"{"field":"Q","generators":[[[1,0]]]}"#,
        r#"{"field":"Q","generators":[[[1,0],[0,1]]],"extra":1}"#,
        r#"{"generators":[[[1,0],[0,1]]]}"#,
    ] {
        assert!(matches!(parse_rep_document(bad), Err(CliError::Validation { .. })), "{bad}");
    }
}

#[test]
fn parse_errors_carry_a_position() {
    let e = parse_rep_document("{\n  \"field\": \"Q\",\n  oops\n}").unwrap_err();
    assert!(matches!(e, CliError::Parse { line: 3, .. }), "{e}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "g.json", r#"{"field":"Q","generators":[[[1,1],[0,1]]]}"#);
    let bad = write(dir.path(), "b.json", r#"{"field":"Q","generators":[[[1,1],[0,1]]],"#);
    assert_eq!(run(["moldkit", "classify", &good]).code, 0);
    let out = run(["moldkit", "classify", &bad]);
    assert_eq!(out.code, 1);
    assert_eq!(out.stderr.lines().count(), 1);
    assert_eq!(run(["moldkit", "classify", "/nonexistent/x.json"]).code, 1);
    assert_eq!(run(["moldkit", "frobnicate"]).code, 2);
    assert_eq!(run(["moldkit", "census", "--q", "3"]).code, 2);
    assert_eq!(run(["moldkit", "--help"]).code, 0);
    // q = 4 is not prime
    assert_eq!(run(["moldkit", "census", "--q", "4", "--m", "1"]).code, 1);
    let out = run(["moldkit", "census", "--q", "7", "--m", "3", "--report"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("budget"));
}

#[test]
fn equiv_reports_the_swap() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", r#"{"field":"Q","generators":[[[1,0],[0,2]]]}"#);
    let b = write(dir.path(), "b.json", r#"{"field":"Q","generators":[[[2,0],[0,1]]]}"#);
    let c = write(dir.path(), "c.json", r#"{"field":"Q","generators":[[[1,0],[0,3]]]}"#);
    let v: serde_json::Value = serde_json::from_str(&run(["moldkit", "equiv", &a, &b]).stdout).unwrap();
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["method"], "trace");
    assert_eq!(v["conjugator"], serde_json::json!([["0", "1"], ["1", "0"]]));
    let v: serde_json::Value = serde_json::from_str(&run(["moldkit", "equiv", &a, &c]).stdout).unwrap();
    assert_eq!(v["equivalent"], false);
    assert!(v["conjugator"].is_null());
}

#[test]
fn classify_and_normalize_by_label() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"field":{"p":2},"generators":[[[0,1],[1,0]]]}"#, "unipotent_f2", "ab_chart"),
        (r#"{"field":"Q","generators":[[[1,1],[0,1]]]}"#, "unipotent", "char_deriv"),
        (r#"{"field":"Q","generators":[[[1,1],[0,1]],[[1,0],[1,1]]]}"#, "air", "companion_certificates"),
        (r#"{"field":"Q","generators":[[[1,1],[0,2]],[[1,0],[0,2]]]}"#, "borel", "companion_certificates"),
        (r#"{"field":{"p":5},"generators":[[[2,0],[0,2]]]}"#, "scalar", "scalars"),
    ];
    for (i, (text, label, key)) in cases.iter().enumerate() {
        let path = write(dir.path(), &format!("{i}.json"), text);
        let v: serde_json::Value = serde_json::from_str(&run(["moldkit", "classify", &path]).stdout).unwrap();
        assert_eq!(v["label"], *label);
        assert_eq!(v["schema"], "moldkit.classify/1");
        assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);
        let v: serde_json::Value = serde_json::from_str(&run(["moldkit", "normalize", &path]).stdout).unwrap();
        assert!(v.get(*key).is_some(), "{label}: {v}");
    }
}

#[test]
fn census_uses_the_cache_directory() {
    let dir = tempfile::tempdir().unwrap();
    std::env::set_var("MOLDKIT_CACHE", dir.path());
    let first = run(["moldkit", "census", "--q", "2", "--m", "1", "--orbits"]);
    assert_eq!(first.code, 0);
    assert!(dir.path().join("census-q2-m1-monoid.txt").exists());
    let second = run(["moldkit", "census", "--q", "2", "--m", "1", "--orbits"]);
    assert_eq!(first, second);
    let v: serde_json::Value = serde_json::from_str(&first.stdout).unwrap();
    assert_eq!(v["points"]["semisimple"], 8);
    assert_eq!(v["orbits"]["unipotent_f2"], 2);
}

#[test]
fn invariants_are_labelled_by_generator_indices() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "t.json", r#"{"field":"Q","generators":[[[1,0],[0,2]],[[3,0],[1,4]]]}"#);
    let v: serde_json::Value = serde_json::from_str(&run(["moldkit", "invariants", &p]).stdout).unwrap();
    let idx: Vec<&str> = v["traces"].as_array().unwrap().iter().map(|t| t["indices"].as_str().unwrap()).collect();
    assert_eq!(idx, ["1", "2", "1,2"]);
    let vals: Vec<&str> = v["traces"].as_array().unwrap().iter().map(|t| t["value"].as_str().unwrap()).collect();
    assert_eq!(vals, ["3", "7", "11"]);
    assert_eq!(v["dets"], serde_json::json!(["2", "12"]));
}
