use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn sact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sact"))
        .args(args)
        .output()
        .expect("spawn sact")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const TRIVIAL3: &str = r#"{
  "monoids": { "T": { "size": 1, "identity": 0, "table": [[0]] } },
  "acts": { "X": { "monoid": "T", "size": 3, "table": [[0], [1], [2]] } }
}"#;

fn builtin(dir: &TempDir, n: usize) -> PathBuf {
    let o = sact(&["builtin", "--family", "min-monoid", "--n", &n.to_string()]);
    assert!(o.status.success());
    write(dir, &format!("min{n}.json"), &stdout(&o))
}

#[test]
fn min_monoid_subacts_form_a_chain() {
    let dir = TempDir::new().unwrap();
    let f = builtin(&dir, 3);
    let o = sact(&[
        "--json",
        "lattice",
        s(&f),
        "--act",
        "K",
        "--kind",
        "subacts",
        "--oracle",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["height"], 3);
    assert_eq!(v["report"]["element_count"], 3);
    assert_eq!(v["oracle_agrees"], true);
    assert_eq!(v["report"]["longest_chain"][2], "{0,1,2}");
}

#[test]
fn oracle_on_three_point_set() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "t.json", TRIVIAL3);
    let o = sact(&[
        "lattice",
        s(&f),
        "--act",
        "X",
        "--kind",
        "congruences",
        "--oracle",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("elements  5"), "{text}");
    assert!(text.contains("oracle    agrees"), "{text}");
}

#[test]
fn verify_ses_passes() {
    let o = sact(&[
        "verify",
        "--suite",
        "ses",
        "--seed",
        "1",
        "--instances",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn dot_output_is_stable() {
    let dir = TempDir::new().unwrap();
    let f = builtin(&dir, 4);
    let a = dir.path().join("a.dot");
    let b = dir.path().join("b.dot");
    for out in [&a, &b] {
        let o = sact(&[
            "lattice",
            s(&f),
            "--act",
            "K",
            "--kind",
            "subacts",
            "--dot",
            s(out),
        ]);
        assert!(o.status.success());
    }
    let da = std::fs::read_to_string(&a).unwrap();
    assert_eq!(da, std::fs::read_to_string(&b).unwrap());
    assert_eq!(da.matches("->").count(), 3);
    assert!(da.contains("\"{0,1,2,3}\""));
}

#[test]
fn validate_reports_every_structure() {
    let dir = TempDir::new().unwrap();
    let f = builtin(&dir, 2);
    let o = sact(&["--json", "validate", s(&f)]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["valid"], true);
    assert!(v["monoids"]["S"].is_object());
    assert!(v["acts"]["K"].is_object());
}

#[test]
fn generated_workspaces_round_trip() {
    let dir = TempDir::new().unwrap();
    for (i, args) in [
        vec!["gen", "--kind", "monoid", "--seed", "7", "--size", "3"],
        vec![
            "gen",
            "--kind",
            "monoid",
            "--seed",
            "7",
            "--size",
            "3",
            "--commutative",
            "--with-zero",
        ],
        vec!["gen", "--kind", "act", "--seed", "9", "--size", "4"],
        vec![
            "gen",
            "--kind",
            "act",
            "--seed",
            "9",
            "--size",
            "4",
            "--with-zero",
        ],
    ]
    .iter()
    .enumerate()
    {
        let first = sact(args);
        assert!(first.status.success(), "{args:?}");
        assert_eq!(first.stdout, sact(args).stdout, "{args:?}");
        let f = write(&dir, &format!("g{i}.json"), &stdout(&first));
        assert!(sact(&["validate", s(&f)]).status.success());
    }
}

#[test]
fn quotient_output_reloads() {
    let dir = TempDir::new().unwrap();
    let f = builtin(&dir, 3);
    let o = sact(&["quotient", s(&f), "--act", "K", "--subact", "0,1"]);
    assert!(o.status.success());
    let q = write(&dir, "q.json", &stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["acts"]["K_quotient"]["size"], 2);
    assert_eq!(v["metadata"]["projection"], serde_json::json!([1, 1, 0]));
    assert!(sact(&["validate", s(&q)]).status.success());

    let t = write(&dir, "t.json", TRIVIAL3);
    let o = sact(&[
        "quotient",
        s(&t),
        "--act",
        "X",
        "--congruence",
        "0,2|1",
        "--name",
        "Y",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["acts"]["Y"]["size"], 2);
}

#[test]
fn decompose_and_series() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.json", TRIVIAL3);
    let o = sact(&["--json", "decompose", s(&t), "--act", "X"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["components"].as_array().unwrap().len(), 3);

    let f = builtin(&dir, 3);
    let o = sact(&[
        "--json",
        "series",
        s(&f),
        "--act",
        "K",
        "--chain",
        "0;0,1;0,1,2",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 2);
    assert!(steps
        .iter()
        .all(|s| s["factor_size"] == 2 && s["exact"] == true));
}

#[test]
fn fitting_report() {
    let dir = TempDir::new().unwrap();
    let f = builtin(&dir, 3);
    let o = sact(&["fitting", s(&f), "--act", "K", "--endo", "0,1,2"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["direct_sum_holds"], true);
    assert_eq!(v["n_image_stable"], 1);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let f = builtin(&dir, 3);

    // usage
    assert_eq!(
        sact(&["lattice", s(&f), "--act", "nope", "--kind", "subacts"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(sact(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(sact(&["lattice", s(&f)]).status.code(), Some(2));
    assert_eq!(sact(&["frobnicate"]).status.code(), Some(2));

    // validation
    let not_json = write(&dir, "bad.json", "{ not json");
    assert_eq!(sact(&["validate", s(&not_json)]).status.code(), Some(1));
    let broken = write(
        &dir,
        "broken.json",
        r#"{"monoids":{"M":{"size":3,"identity":0,"table":[[0,1,2],[1,2,1],[2,1,1]]}}}"#,
    );
    assert_eq!(sact(&["validate", s(&broken)]).status.code(), Some(1));
    let no_unit = write(
        &dir,
        "unit.json",
        r#"{"monoids":{"T":{"size":1,"identity":0,"table":[[0]]}},"acts":{"X":{"monoid":"T","size":2,"table":[[1],[1]]}}}"#,
    );
    assert_eq!(sact(&["validate", s(&no_unit)]).status.code(), Some(1));
    assert_eq!(
        sact(&["fitting", s(&f), "--act", "K", "--endo", "1,0,2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        sact(&["series", s(&f), "--act", "K", "--chain", "1;0,1,2"])
            .status
            .code(),
        Some(1)
    );

    // size limit: the partition lattice of ten points is too large
    let big = write(
        &dir,
        "big.json",
        &format!(
            r#"{{"monoids":{{"T":{{"size":1,"identity":0,"table":[[0]]}}}},"acts":{{"X":{{"monoid":"T","size":10,"table":{:?}}}}}}}"#,
            (0..10).map(|i| vec![i]).collect::<Vec<_>>()
        ),
    );
    assert_eq!(
        sact(&["lattice", s(&big), "--act", "X", "--kind", "congruences"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn json_errors_on_stderr() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "[]");
    let o = sact(&["--json", "validate", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"]["exit_code"], 1);
    assert!(v["error"]["message"].is_string());

    let o = sact(&["--json", "verify", "--suite", "bogus"]);
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "UnknownSuite");
    assert_eq!(v["error"]["exit_code"], 2);
}

#[test]
fn verify_replay() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let o = sact(&[
        "--json",
        "verify",
        "--suite",
        "closure",
        "--seed",
        "2",
        "--instances",
        "3",
        "--max-act",
        "3",
        "--max-monoid",
        "3",
        "--out",
        s(&out),
    ]);
    assert!(o.status.success());
    let report: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(report["failures"].as_array().unwrap().len(), 0);

    // a clean report carries no failing instances
    let o = sact(&[
        "--json",
        "verify",
        "--suite",
        "closure",
        "--replay",
        s(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let replayed: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(replayed["instances_tested"], 0);

    let single = write(
        &dir,
        "one.json",
        r#"{"label":"hand","seed":5,"monoid":{"size":2,"identity":0,"table":[[0,1],[1,1]]},
            "acts":[{"size":2,"table":[[0,1],[1,1]]}]}"#,
    );
    let o = sact(&[
        "--json",
        "verify",
        "--suite",
        "closure",
        "--replay",
        s(&single),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let replayed: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(replayed["instances_tested"], 1);
    assert!(replayed["checks"].as_u64().unwrap() > 0);
    assert_eq!(
        o.stdout,
        sact(&[
            "--json",
            "verify",
            "--suite",
            "closure",
            "--replay",
            s(&single)
        ])
        .stdout
    );
}
