//! End-to-end tests of the `qfloer` binary: output text, exit codes,
//! determinism of the snapshot artifact.

use std::path::Path;
use std::process::{Command, Output};

use qfloer::chainmodel::sphere_model;
use qfloer::lefschetz::build_am;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qfloer"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_json(dir: &Path, name: &str, value: &serde_json::Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path.display().to_string()
}

fn a2_file(dir: &Path) -> String {
    let lat = build_am(2, 3).unwrap();
    write_json(dir, "a2.json", &serde_json::to_value(&lat).unwrap())
}

#[test]
fn pair_command_prints_value_and_specialization() {
    let dir = tempfile::tempdir().unwrap();
    let lat = a2_file(dir.path());

    let out = run(&["pair", &lat, "0", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("pairing: -1/1*q^(1/3)"), "got: {text}");
    assert!(text.contains("at q=1: -1/1"), "got: {text}");

    let out = run(&["pair", &lat, "0", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("pairing: 1/1 + -1/1*q^(1/1)"), "got: {text}");
    assert!(text.contains("at q=1: 0/1"), "got: {text}");

    // out-of-range index: schema error
    let out = run(&["pair", &lat, "0", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pair_rejects_invalid_lattices() {
    let dir = tempfile::tempdir().unwrap();
    // invariant violation: sphere diagonal is wrong
    let bad = serde_json::json!({
        "schema": 1,
        "n": 3,
        "labels": ["L"],
        "spheres": [true],
        "pairing": [[[[1, 1, [0, 1]]]]],
    });
    let path = write_json(dir.path(), "bad.json", &bad);
    let out = run(&["pair", &path, "0", "0"]);
    assert_eq!(out.status.code(), Some(3));

    // wrong schema version
    let mut v2 = bad.clone();
    v2["schema"] = serde_json::json!(2);
    let path = write_json(dir.path(), "v2.json", &v2);
    let out = run(&["pair", &path, "0", "0"]);
    assert_eq!(out.status.code(), Some(2));

    // not JSON at all
    let garbled = dir.path().join("garbled.json");
    std::fs::write(&garbled, "not json").unwrap();
    let out = run(&["pair", garbled.to_str().unwrap(), "0", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn twist_command_applies_words() {
    let dir = tempfile::tempdir().unwrap();
    let lat = a2_file(dir.path());
    let word = write_json(dir.path(), "w.json", &serde_json::json!([["tau", 0, 1]]));
    let out = run(&["twist", &lat, &word, "1", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("pairing: -1/1*q^(1/1)"));

    // the empty word reproduces the pairing
    let empty = write_json(dir.path(), "empty.json", &serde_json::json!([]));
    let out = run(&["twist", &lat, &empty, "1", "1"]);
    assert!(stdout(&out).contains("pairing: 1/1 + -1/1*q^(1/1)"));

    // a word followed by its inverse reproduces the pairing
    let cancel = write_json(
        dir.path(),
        "cancel.json",
        &serde_json::json!([["tau", 0, 1], ["tau", 0, -1]]),
    );
    let out = run(&["twist", &lat, &cancel, "1", "1"]);
    assert!(stdout(&out).contains("pairing: 1/1 + -1/1*q^(1/1)"));
}

#[test]
fn check_command_reports_and_exits() {
    let dir = tempfile::tempdir().unwrap();
    let model = sphere_model(3);
    let good = write_json(dir.path(), "good.json", &model.to_json());
    let out = run(&["check", &good]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["status"], "pass");

    // break associativity: mu2(e,e) gains an extra unit
    let mut builder = model.into_builder();
    builder
        .mu2
        .get_mut(&("V".into(), "V".into(), "V".into()))
        .unwrap()
        .add_to_entry(&[0, 0], 0, qfloer::exactalg::Rational::one());
    let mutated = builder.build().unwrap();
    let bad = write_json(dir.path(), "bad.json", &mutated.to_json());
    let out = run(&["check", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["status"], "fail");
    let failing: Vec<&str> = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == "fail")
        .map(|r| r["identity"].as_str().unwrap())
        .collect();
    assert!(!failing.is_empty());

    // malformed file
    let garbled = dir.path().join("garbled.json");
    std::fs::write(&garbled, "{").unwrap();
    let out = run(&["check", garbled.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_command_prints_table_and_value() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_json(dir.path(), "model.json", &sphere_model(3).to_json());
    let out = run(&["table", &good, "V", "V"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let json_part: String = text
        .lines()
        .take_while(|l| !l.starts_with("q-intersection"))
        .collect::<Vec<_>>()
        .join("\n");
    let doc: serde_json::Value = serde_json::from_str(&json_part).unwrap();
    assert_eq!(doc["n"], 3);
    assert_eq!(
        doc["entries"],
        serde_json::json!([
            {"deg": 0, "weight": [0, 1], "dim": 1},
            {"deg": 3, "weight": [1, 1], "dim": 1},
        ])
    );
    assert!(text.contains("q-intersection: 1/1 + -1/1*q^(1/1)"));
    assert!(text.contains("at q=1: 0/1"));
}

#[test]
fn table_command_surfaces_splitting_failures() {
    use qfloer::chainmodel::{ChainModelBuilder, GradedSpace, MultiOp};
    use qfloer::exactalg::Rational;

    // open sector with a rank-2 top degree and phi1(b,-) acting there as
    // [[0,2],[1,0]]: eigenvalues are irrational, so the table must refuse
    let closed = GradedSpace::from_basis([
        (-1, "beta".to_string()),
        (0, "e".to_string()),
        (1, "b".to_string()),
    ]);
    let mut builder = ChainModelBuilder::new(3, closed);
    builder.b = builder.closed.basis_vector(2);
    builder.e = builder.closed.basis_vector(1);
    let open = GradedSpace::from_basis([(3, "f1".to_string()), (3, "f2".to_string())]);
    builder.add_lagrangian("V", open, MultiOp::new(1, 1));
    let mut phi1 = MultiOp::new(2, -1);
    phi1.set_entry(vec![2, 0], vec![(1, Rational::one())]);
    phi1.set_entry(vec![2, 1], vec![(0, Rational::from_int(2))]);
    builder.phi1.insert(("V".into(), "V".into()), phi1);
    let model = builder.build().unwrap();

    let dir = tempfile::tempdir().unwrap();
    let path = write_json(dir.path(), "nonsplit.json", &model.to_json());
    let out = run(&["table", &path, "V", "V"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn snapshot_is_deterministic_and_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let lat = a2_file(dir.path());
    let out1 = dir.path().join("s1.json");
    let out2 = dir.path().join("s2.json");

    let st = run(&[
        "snapshot",
        &lat,
        "--max-len",
        "1",
        "--out",
        out1.to_str().unwrap(),
    ]);
    assert_eq!(st.status.code(), Some(0));
    let st = bin()
        .args([
            "snapshot",
            &lat,
            "--max-len",
            "1",
            "--out",
            out2.to_str().unwrap(),
        ])
        .env("QFLOER_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0));

    let bytes1 = std::fs::read(&out1).unwrap();
    let bytes2 = std::fs::read(&out2).unwrap();
    assert_eq!(
        bytes1, bytes2,
        "snapshot must be byte-identical across runs"
    );

    let doc: serde_json::Value = serde_json::from_slice(&bytes1).unwrap();
    assert_eq!(doc["schema"], 1);
    let rows = doc["rows"].as_array().unwrap();
    // 1 empty word + 4 one-letter words, 4 (source,target) pairs each
    assert_eq!(rows.len(), 5 * 4);
    // the empty word reproduces the pairing matrix
    let find = |w: &str, s: &str, t: &str| -> String {
        rows.iter()
            .find(|r| r[0] == w && r[1] == s && r[2] == t)
            .unwrap()[3]
            .as_str()
            .unwrap()
            .to_string()
    };
    assert_eq!(find("1", "L1", "L2"), "-1/1*q^(1/3)");
    assert_eq!(find("1", "L1", "L1"), "1/1 + -1/1*q^(1/1)");
    // a length-1 row matches the correction-term algebra: tau_1(L2).L2 = -q
    assert_eq!(find("tau0+", "L2", "L2"), "-1/1*q^(1/1)");

    // bounds are enforced
    let st = run(&[
        "snapshot",
        &lat,
        "--max-len",
        "7",
        "--out",
        out1.to_str().unwrap(),
    ]);
    assert_eq!(st.status.code(), Some(2));
}
