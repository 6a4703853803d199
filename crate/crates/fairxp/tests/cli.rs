use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_fairxp");

fn bundle(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("bundle")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

const HAWA: &str = "A=1,G=0,J=0,H=0,S=0,B=1,C=0,D=0,P=1,M=1";

#[test]
fn explain_unreal_in_bk_mode_is_a_precondition_error() {
    let o = run(&[
        "explain",
        "--model",
        &bundle("credit.model.json"),
        "--individual",
        HAWA,
        "--bk",
        &bundle("k1.bk"),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a real individual"));
    assert!(o.stdout.is_empty());
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        "{\"features\": [\"a\"], \"kind\": \"truth-table\", \"table\": \"0\"}",
    );
    let o = run(&["explain", "--model", &bad, "--individual", "a=1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "explain",
        "--model",
        &bundle("credit.model.json"),
        "--individual",
        "A=1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "explain",
        "--model",
        &bundle("missing.json"),
        "--individual",
        "A=1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    let bk = write(dir.path(), "bad.bk", "forbid A\nforbid Z\n");
    let o = run(&[
        "find-proxies",
        "--bk",
        &bk,
        "--protected",
        "A",
        "--features",
        "A,B",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.bk:2:"));
}

#[test]
fn too_many_features_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let names: Vec<String> = (0..25).map(|i| format!("\"f{i}\"")).collect();
    let model = write(
        dir.path(),
        "big.json",
        &format!(
            "{{\"features\": [{}], \"kind\": \"truth-table\", \"table\": \"01\"}}",
            names.join(",")
        ),
    );
    let o = run(&["explain", "--model", &model, "--individual", "f0=1"]);
    assert_eq!(o.status.code(), Some(4));
    let header: Vec<String> = (0..25).map(|i| format!("f{i}")).collect();
    let data = write(dir.path(), "big.csv", &format!("{}\n", header.join(",")));
    let o = run(&["mine-bk", "--dataset", &data]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn constant_model_has_empty_explanation() {
    let dir = tempfile::tempdir().unwrap();
    let model = write(
        dir.path(),
        "c.json",
        r#"{"features": ["a", "b"], "kind": "truth-table", "table": "1111"}"#,
    );
    let o = run(&[
        "explain",
        "--model",
        &model,
        "--individual",
        "a=1,b=0",
        "--trace",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("explanation: TRUE\n"), "{out}");
    assert!(out.contains("final ? ?\n"), "{out}");
}

#[test]
fn explain_with_order_and_all() {
    let order = "M,P,D,C,B,S,H,J,G,A";
    let o = run(&[
        "explain",
        "--model",
        &bundle("credit.model.json"),
        "--individual",
        HAWA,
        "--order",
        order,
        "--all",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains(&format!("order: {order}\n")));
    assert!(out.contains("minimal explanations: "));
    let o = run(&[
        "explain",
        "--model",
        &bundle("credit.model.json"),
        "--individual",
        HAWA,
        "--order",
        "A,A",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn mine_bk_examples() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "mine-bk",
        "--dataset",
        &bundle("credit.csv"),
        "--max-arity",
        "3",
    ]);
    assert_eq!(stdout(&o), "forbid !G & P & M\n");

    let mut cube = String::from("a,b,c\n");
    for i in 0..8 {
        cube.push_str(&format!("{},{},{}\n", i >> 2 & 1, i >> 1 & 1, i & 1));
    }
    let cube = write(dir.path(), "cube.csv", &cube);
    let out_file = dir.path().join("cube.bk");
    let o = run(&[
        "mine-bk",
        "--dataset",
        &cube,
        "--max-arity",
        "3",
        "--output",
        out_file.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(out_file).unwrap(), "");

    let single = write(dir.path(), "one.csv", "a,b,c\n1,0,1\n");
    let o = run(&["mine-bk", "--dataset", &single, "--max-arity", "1"]);
    assert_eq!(stdout(&o), "forbid !a\nforbid b\nforbid !c\n");

    let empty = write(dir.path(), "empty.csv", "a,b\n");
    assert_eq!(
        run(&["mine-bk", "--dataset", &empty]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["mine-bk", "--dataset", &single, "--max-arity", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn find_proxies_examples() {
    let model = bundle("credit.model.json");
    let o = run(&[
        "find-proxies",
        "--bk",
        &bundle("k1.bk"),
        "--protected",
        "G",
        "--context-arity",
        "1",
        "--model",
        &model,
    ]);
    assert!(stdout(&o).contains("  q=M ctx=(P=1) q:=1 => p:=1\n"));
    let o = run(&[
        "find-proxies",
        "--bk",
        &bundle("k1.bk"),
        "--protected",
        "G",
        "--context-arity",
        "0",
        "--model",
        &model,
    ]);
    assert!(stdout(&o).contains("proxies of G: 0\n"));
    let dir = tempfile::tempdir().unwrap();
    let bk = write(dir.path(), "nog.bk", "A & P -> M\nforbid S & !D\n");
    let o = run(&[
        "find-proxies",
        "--bk",
        &bk,
        "--protected",
        "G",
        "--model",
        &model,
    ]);
    assert!(stdout(&o).contains("proxies of G: 0\n"));
}

#[test]
fn check_mapping_reports_violations() {
    let dir = tempfile::tempdir().unwrap();
    let feats = "A,G,P,M";
    let part = write(
        dir.path(),
        "p.partition",
        "base: A\nprotected: G\nequivalence: P, M\n",
    );
    let shared = write(
        dir.path(),
        "s.map",
        "mapping G=1 -> G=0\n{G} => {!G}\n{G, P} => {!G}\n",
    );
    let o = run(&[
        "check-mapping",
        "--mapping",
        &shared,
        "--partition",
        &part,
        "--features",
        feats,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("mapping consistent: false\n"));
    assert!(out.contains("injectivity violations: 1\n"), "{out}");

    let partial = write(dir.path(), "q.map", "mapping G=1 -> G=0\n{P} => {!G, M}\n");
    let out = stdout(&run(&[
        "check-mapping",
        "--mapping",
        &partial,
        "--partition",
        &part,
        "--features",
        feats,
    ]));
    // G=1 individuals with P=0: four of them
    assert!(out.contains("source individuals checked: 8\n"), "{out}");
    assert!(out.contains("uncovered individuals: 4\n"), "{out}");

    let ambiguous = write(
        dir.path(),
        "a.map",
        "mapping G=1 -> G=0\n{P} => {M}\n{P} => {!M}\n",
    );
    let o = run(&[
        "check-mapping",
        "--mapping",
        &ambiguous,
        "--partition",
        &part,
        "--features",
        feats,
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn audit_model_ignoring_protected() {
    let dir = tempfile::tempdir().unwrap();
    // decision = a, G ignored
    let model = write(
        dir.path(),
        "m.json",
        r#"{"features": ["a", "G"], "kind": "truth-table", "table": "0011"}"#,
    );
    let data = write(dir.path(), "d.csv", "a,G\n0,0\n0,1\n1,0\n1,1\n");
    let o = run(&[
        "audit",
        "--model",
        &model,
        "--dataset",
        &data,
        "--protected",
        "G",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches("explicit_bias: false").count(), 4);
    assert!(out.contains("explicitly_biased: 0\n"));
    assert!(out.contains("process_bias_witness: none\n"));
}

#[test]
fn audit_json_is_valid() {
    let o = run(&[
        "audit",
        "--model",
        &bundle("credit.model.json"),
        "--dataset",
        &bundle("credit.csv"),
        "--protected",
        "G",
        "--bk",
        &bundle("k1.bk"),
        "--mapping",
        &bundle("credit.map"),
        "--partition",
        &bundle("credit.partition"),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "audit");
    assert_eq!(v["body"]["individuals"].as_array().unwrap().len(), 19);
    assert_eq!(v["body"]["individuals"][0]["bk_aware_bias"], true);
    assert_eq!(
        v["body"]["individuals"][0]["fairness"]["counterpart"],
        "A & !G & !S & !D & !M"
    );
}

#[test]
fn verify_bundle_on_disk_and_tampered() {
    let o = run(&["verify-bundle", "--dir", &bundle("")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("bundle: ok\n"));

    let dir = tempfile::tempdir().unwrap();
    for name in [
        "credit.model.json",
        "k1.bk",
        "credit.map",
        "credit.partition",
        "credit.csv",
    ] {
        std::fs::copy(bundle(name), dir.path().join(name)).unwrap();
    }
    // negate every table entry
    let model = std::fs::read_to_string(dir.path().join("credit.model.json")).unwrap();
    let flipped: String = model
        .chars()
        .map(|c| match c {
            '0' => '1',
            '1' => '0',
            c => c,
        })
        .collect();
    std::fs::write(dir.path().join("credit.model.json"), flipped).unwrap();
    let o = run(&["verify-bundle", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}
